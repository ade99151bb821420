#pragma once

// Integral binary quadratic forms [a,b,c], Gauss reduction, class and orbit
// enumeration, CM points, stabilizers, and the SL2(Z) matrix type.

#include <lhmf/poly.hpp>

#include <algorithm>
#include <numeric>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace lhmf {

struct Mat2 {
    long long a{1}, b{0}, c{0}, d{1};

    long long det() const { return a * d - b * c; }
    bool is_unimodular() const { return det() == 1; }

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T(long long m = 1) { return {1, m, 0, 1}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    Mat2 inverse() const { return {d, -b, -c, a}; }  // det = 1
    Mat2 negated() const { return {-a, -b, -c, -d}; }

    friend bool operator==(const Mat2& m, const Mat2& n) { return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d; }

    Cplx apply(Cplx tau) const {
        return (static_cast<double>(a) * tau + static_cast<double>(b)) / (static_cast<double>(c) * tau + static_cast<double>(d));
    }

    // sgn(M) per the locally-polynomial-part bookkeeping: sgn(ac) when ac != 0,
    // else sgn(bd); sgn(0) := 0 (the paper leaves bd = 0 open, see ledger)
    int sgn() const {
        long long p = a * c;
        if (p == 0) p = b * d;
        return (p > 0) - (p < 0);
    }

    std::string str() const {
        return "[" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + "]";
    }
};

// Exact coordinates of M(tau) for an exact point; stays an ExactPoint since
// Im(M tau) = v/|c tau + d|^2 keeps the radicand.
inline ExactPoint mobius(const Mat2& m, const ExactPoint& pt) {
    Rat u = pt.u, v2 = pt.v_squared();
    Rat den = (Rat(m.c) * u + Rat(m.d)) * (Rat(m.c) * u + Rat(m.d)) + Rat(m.c) * Rat(m.c) * v2;
    if (den == 0) throw std::domain_error("mobius: point maps to infinity");
    Rat nu = (Rat(m.a) * u + Rat(m.b)) * (Rat(m.c) * u + Rat(m.d)) + Rat(m.a) * Rat(m.c) * v2;
    ExactPoint out;
    out.u = nu / den;
    out.s = pt.s / den;
    out.D = pt.D;
    return out;
}

struct QuadForm {
    Int a{0}, b{0}, c{0};

    QuadForm() = default;
    QuadForm(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
    QuadForm(long a_, long b_, long c_) : a(a_), b(b_), c(c_) {}

    Int disc() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return disc() < 0 && a > 0; }

    friend bool operator==(const QuadForm& p, const QuadForm& q) { return p.a == q.a && p.b == q.b && p.c == q.c; }
    friend bool operator!=(const QuadForm& p, const QuadForm& q) { return !(p == q); }
    friend bool operator<(const QuadForm& p, const QuadForm& q) {
        if (p.a != q.a) return p.a < q.a;
        if (p.b != q.b) return p.b < q.b;
        return p.c < q.c;
    }

    // Q o M: substitute (x,y) -> (a_M x + b_M y, c_M x + d_M y)
    QuadForm transform(const Mat2& m) const {
        Int ma(m.a), mb(m.b), mc(m.c), md(m.d);
        Int na = a * ma * ma + b * ma * mc + c * mc * mc;
        Int nb = 2 * a * ma * mb + b * (ma * md + mb * mc) + 2 * c * mc * md;
        Int nc = a * mb * mb + b * mb * md + c * md * md;
        return {na, nb, nc};
    }

    // P' = [a,-b,c]
    QuadForm mirrored() const { return {a, -b, c}; }

    // Q(z,1) for complex z
    Cplx value_at(Cplx z) const { return to_double(a) * z * z + to_double(b) * z + to_double(c); }

    std::string str() const { return a.str() + "," + b.str() + "," + c.str(); }

    static QuadForm parse(const std::string& s) {
        auto p1 = s.find(','), p2 = s.rfind(',');
        if (p1 == std::string::npos || p2 == p1) throw std::invalid_argument("form must be 'a,b,c': " + s);
        return {Int(s.substr(0, p1)), Int(s.substr(p1 + 1, p2 - p1 - 1)), Int(s.substr(p2 + 1))};
    }
};

// Gauss reduction. Returns the reduced representative R and M with R = Q o M.
inline std::pair<QuadForm, Mat2> reduce(const QuadForm& q0) {
    if (!q0.is_positive_definite()) throw std::invalid_argument("reduce: form must be positive definite");
    QuadForm q = q0;
    Mat2 m = Mat2::identity();
    for (int guard = 0; guard < 10000; ++guard) {
        // translate b into (-a, a]
        if (q.b > q.a || q.b <= -q.a) {
            // b + 2at in (-a, a] : t = floor((a - b) / 2a)
            Int t = rat_floor(Rat(q.a - q.b) / Rat(2 * q.a));
            Mat2 tr = Mat2::T(t.template convert_to<long long>());
            q = q.transform(tr);
            m = m * tr;
            continue;
        }
        if (q.a > q.c) {
            Mat2 s = Mat2::S();
            q = q.transform(s);
            m = m * s;
            continue;
        }
        if (q.b < 0 && (q.b == -q.a || q.a == q.c)) {
            // [a,-a,c] ~ [a,a,c] via T, [a,-b,a] ~ [a,b,a] via S
            Mat2 s = (q.b == -q.a) ? Mat2::T(1) : Mat2::S();
            q = q.transform(s);
            m = m * s;
            continue;
        }
        break;
    }
    return {q, m};
}

inline bool is_reduced(const QuadForm& q) {
    return q.is_positive_definite() && -q.a < q.b && q.b <= q.a && q.a <= q.c && (q.b >= 0 || (q.b > -q.a && q.a < q.c));
}

inline QuadForm class_of(const QuadForm& q) { return reduce(q).first; }
inline bool same_class(const QuadForm& p, const QuadForm& q) { return class_of(p) == class_of(q); }

// All reduced positive definite forms of discriminant d (imprimitive included).
inline std::vector<QuadForm> enumerate_classes(const Int& d) {
    if (d >= 0) throw std::invalid_argument("enumerate_classes: discriminant must be negative");
    Int r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("enumerate_classes: d must be 0 or 1 mod 4, got d = " + d.str());
    std::vector<QuadForm> out;
    Int amax = isqrt(-d / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - d;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;  // demand b >= 0 when a = c
            out.emplace_back(a, b, c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Order of the stabilizer in PSL2(Z), by brute force over small entries,
// cross-checked against the classification (only t*[1,1,1] and t*[1,0,1]
// have extra automorphisms).
inline int stabilizer_order(const QuadForm& p) {
    if (!p.is_positive_definite()) throw std::invalid_argument("stabilizer_order: positive definite only");
    long long bound = (boost::multiprecision::abs(p.a) + boost::multiprecision::abs(p.b) + boost::multiprecision::abs(p.c))
                          .template convert_to<long long>() * 2;
    bound = std::min<long long>(bound, 40);  // stabilizer entries are tiny; cap the scan
    int count = 0;
    for (long long a = -bound; a <= bound; ++a)
        for (long long b = -bound; b <= bound; ++b)
            for (long long c = -bound; c <= bound; ++c) {
                // ad - bc = 1 => d determined if a != 0, else bc = -1
                if (a != 0) {
                    long long num = 1 + b * c;
                    if (num % a != 0) continue;
                    long long d = num / a;
                    if (std::abs(d) > bound) continue;
                    Mat2 m{a, b, c, d};
                    if (p.transform(m) == p) ++count;
                } else {
                    if (b * c != -1) continue;
                    for (long long d = -bound; d <= bound; ++d) {
                        Mat2 m{0, b, c, d};
                        if (p.transform(m) == p) ++count;
                    }
                }
            }
    int order = count / 2;  // mod +-I
    QuadForm red = class_of(p);
    // classification check: t[1,1,1] -> 3, t[1,0,1] -> 2, else 1
    int expected = 1;
    if (red.a == red.b && red.b == red.c)
        expected = 3;
    else if (red.b == 0 && red.a == red.c)
        expected = 2;
    else
        expected = 1;
    if (order != expected)
        throw std::logic_error("stabilizer_order: brute force (" + std::to_string(order) + ") disagrees with classification (" +
                               std::to_string(expected) + ") for " + p.str());
    return order;
}

// CM point tau_P = (-b + i sqrt|d|) / (2a); asserts P(tau_P, 1) = 0 exactly.
inline ExactPoint cm_point(const QuadForm& p) {
    if (!p.is_positive_definite()) throw std::invalid_argument("cm_point: positive definite only");
    ExactPoint pt(Rat(-p.b) / Rat(2 * p.a), Rat(1) / Rat(2 * p.a), -p.disc());
    ExactNumber tau = pt.tau();
    ExactNumber val = ExactNumber(Rat(p.a), pt.D) * tau * tau + ExactNumber(Rat(p.b), pt.D) * tau + ExactNumber(Rat(p.c), pt.D);
    if (!val.is_zero()) throw std::logic_error("cm_point: P(tau_P,1) != 0");
    return pt;
}

// ---- orbit fibers -------------------------------------------------------
//
// The Gamma-class of P, grouped by the leading coefficient: for each a the
// forms [a,b,*] in the class form full residue families b = b0 (mod 2a).
// Enumerated through primitive vectors (x,z) with Q(x,z) = a <= bound, each
// completed to a unimodular matrix.

struct OrbitFiber {
    long long a;
    long long b0;  // in [0, 2a)
};

inline std::vector<OrbitFiber> orbit_fibers(const QuadForm& p, long long a_bound) {
    if (!p.is_positive_definite()) throw std::invalid_argument("orbit_fibers: positive definite only");
    long long pa = p.a.template convert_to<long long>(), pb = p.b.template convert_to<long long>(),
              pc = p.c.template convert_to<long long>();
    double absd = to_double(Int(-p.disc()));
    // Q(x,z) <= A constrains (x,z) to an ellipse
    long long xmax = static_cast<long long>(std::sqrt(4.0 * pc * static_cast<double>(a_bound) / absd)) + 2;
    long long zmax = static_cast<long long>(std::sqrt(4.0 * pa * static_cast<double>(a_bound) / absd)) + 2;
    std::unordered_set<unsigned long long> seen;
    std::vector<OrbitFiber> out;
    for (long long x = -xmax; x <= xmax; ++x) {
        for (long long z = -zmax; z <= zmax; ++z) {
            if (x == 0 && z == 0) continue;
            long long a = pa * x * x + pb * x * z + pc * z * z;
            if (a > a_bound) continue;
            if (std::gcd(std::abs(x), std::abs(z)) != 1) continue;
            // complete (x,z) to M = [x, y; z, w], xw - yz = 1
            long long y, w;
            {
                long long g = x, h = z, u0 = 1, v0 = 0, u1 = 0, v1 = 1;
                while (h != 0) {
                    long long qq = g / h;
                    long long t = g - qq * h;
                    g = h;
                    h = t;
                    t = u0 - qq * u1;
                    u0 = u1;
                    u1 = t;
                    t = v0 - qq * v1;
                    v0 = v1;
                    v1 = t;
                }
                // g = +-1 = u0*x + v0*z
                if (g == 1) {
                    w = u0;
                    y = -v0;
                } else {
                    w = -u0;
                    y = v0;
                }
            }
            long long b = 2 * pa * x * y + pb * (x * w + y * z) + 2 * pc * z * w;
            long long b0 = ((b % (2 * a)) + 2 * a) % (2 * a);
            unsigned long long key = static_cast<unsigned long long>(a) * 2000000011ull + static_cast<unsigned long long>(b0);
            if (seen.insert(key).second) out.push_back({a, b0});
        }
    }
    std::sort(out.begin(), out.end(), [](const OrbitFiber& f, const OrbitFiber& g) {
        return f.a != g.a ? f.a < g.a : f.b0 < g.b0;
    });
    return out;
}

// Forms of the class with a <= A and the T-normalized representative |b| <= a
// (both signs kept when |b| = a).
inline std::vector<QuadForm> orbit_forms_bounded(const QuadForm& p, long long a_bound) {
    std::vector<QuadForm> out;
    Int d = p.disc();
    for (const auto& f : orbit_fibers(p, a_bound)) {
        Int a(f.a);
        long long b1 = ((f.b0 + f.a) % (2 * f.a)) - f.a;  // in [-a, a)
        auto push = [&](long long b) {
            Int bb(b);
            out.emplace_back(a, bb, (bb * bb - d) / (4 * a));
        };
        push(b1);
        if (b1 == -f.a) push(f.a);  // |b| = a: both [a,-a,c] and [a,a,c] in window
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Hurwitz class number H(d) = sum over classes of 1/|stabilizer| (as a check value)
inline Rat hurwitz_class_number(const Int& d) {
    Rat h(0);
    for (const auto& q : enumerate_classes(d)) h += Rat(1) / Rat(stabilizer_order(q));
    return h;
}

}  // namespace lhmf

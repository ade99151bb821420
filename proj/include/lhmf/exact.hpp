#pragma once

// Exact arithmetic in Q(i, sqrt(D)).
//
// An ExactNumber is  w + x*sqrt(D) + i*(y + z*sqrt(D))  with rational
// coefficients.  D is kept squarefree: constructing with a non-squarefree
// radicand folds the square part into the coefficients, and D == 1 collapses
// to the Gaussian rationals.  One D per computation context; mixing two
// different radicands in an arithmetic operation is a hard error.

#include <lhmf/numbers.hpp>

namespace lhmf {

struct ExactNumber {
    Rat w{0}, x{0}, y{0}, z{0};
    Int D{1};  // squarefree, >= 1

    ExactNumber() = default;
    explicit ExactNumber(Rat r, Int disc = 1) : w(std::move(r)) { set_disc(std::move(disc)); }
    ExactNumber(Rat w_, Rat x_, Rat y_, Rat z_, Int disc) : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
        set_disc(std::move(disc));
    }

    // normalize the radicand: disc = s^2 * D with D squarefree
    void set_disc(Int disc) {
        if (disc <= 0) throw std::domain_error("ExactNumber: radicand must be positive");
        Int s, d0;
        squarefree_decompose(disc, s, d0);
        if (s != 1) {
            Rat f(s);  // sqrt(disc) = s*sqrt(D), fold s into the radical coefficients
            x *= f;
            z *= f;
        }
        if (d0 == 1) {
            w += x;
            y += z;
            x = 0;
            z = 0;
        }
        D = d0;
    }

    static ExactNumber from_gauss(const GaussRat& g, Int D = 1) { return ExactNumber(g.re, Rat(0), g.im, Rat(0), std::move(D)); }
    static ExactNumber i_times(const ExactNumber& a) { return ExactNumber(-a.y, -a.z, a.w, a.x, a.D); }

    bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
    bool is_rational() const { return x == 0 && y == 0 && z == 0; }
    bool is_i_rational() const { return w == 0 && x == 0 && z == 0; }
    bool is_real() const { return y == 0 && z == 0; }

    // complex conjugate
    ExactNumber conj() const { return {w, x, -y, -z, D}; }
    // Galois conjugate sqrt(D) -> -sqrt(D)
    ExactNumber conj_rt() const { return {w, -x, y, -z, D}; }

    static Int common_disc(const ExactNumber& a, const ExactNumber& b) {
        if (a.D == b.D) return a.D;
        if (a.x == 0 && a.z == 0) return b.D;
        if (b.x == 0 && b.z == 0) return a.D;
        throw std::domain_error("ExactNumber: mixed radicands " + a.D.str() + " vs " + b.D.str());
    }

    friend ExactNumber operator+(const ExactNumber& a, const ExactNumber& b) {
        Int d = common_disc(a, b);
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z, d};
    }
    friend ExactNumber operator-(const ExactNumber& a, const ExactNumber& b) {
        Int d = common_disc(a, b);
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z, d};
    }
    friend ExactNumber operator-(const ExactNumber& a) { return {-a.w, -a.x, -a.y, -a.z, a.D}; }

    friend ExactNumber operator*(const ExactNumber& a, const ExactNumber& b) {
        Int d = common_disc(a, b);
        Rat Df(d);
        // (w1 + x1 R + i(y1 + z1 R)) * (w2 + x2 R + i(y2 + z2 R)), R^2 = D
        Rat w1 = a.w, x1 = a.x, y1 = a.y, z1 = a.z;
        Rat w2 = b.w, x2 = b.x, y2 = b.y, z2 = b.z;
        Rat rw = w1 * w2 + Df * x1 * x2 - y1 * y2 - Df * z1 * z2;
        Rat rx = w1 * x2 + x1 * w2 - y1 * z2 - z1 * y2;
        Rat ry = w1 * y2 + y1 * w2 + Df * (x1 * z2 + z1 * x2);
        Rat rz = w1 * z2 + z1 * w2 + x1 * y2 + y1 * x2;
        return {rw, rx, ry, rz, d};
    }
    friend ExactNumber operator*(const Rat& c, const ExactNumber& a) { return {c * a.w, c * a.x, c * a.y, c * a.z, a.D}; }
    friend ExactNumber operator*(const GaussRat& c, const ExactNumber& a) { return ExactNumber::from_gauss(c, a.D) * a; }

    ExactNumber inverse() const {
        if (is_zero()) throw std::domain_error("ExactNumber: division by zero");
        // first kill i by multiplying with the complex conjugate ...
        ExactNumber c = conj();
        ExactNumber n = (*this) * c;  // lands in Q(sqrt D): n = p + q sqrt(D)
        // ... then kill sqrt(D) with the Galois conjugate
        Rat p = n.w, q = n.x;
        Rat nrm = p * p - Rat(D) * q * q;
        if (nrm == 0) throw std::domain_error("ExactNumber: norm vanished (non-field radicand?)");
        ExactNumber g = n.conj_rt();
        ExactNumber r = c * g;
        Rat inv = Rat(1) / nrm;
        return {inv * r.w, inv * r.x, inv * r.y, inv * r.z, D};
    }
    friend ExactNumber operator/(const ExactNumber& a, const ExactNumber& b) { return a * b.inverse(); }

    ExactNumber& operator+=(const ExactNumber& b) { return *this = *this + b; }
    ExactNumber& operator-=(const ExactNumber& b) { return *this = *this - b; }
    ExactNumber& operator*=(const ExactNumber& b) { return *this = *this * b; }

    friend bool operator==(const ExactNumber& a, const ExactNumber& b) {
        if (a.w != b.w || a.y != b.y) return false;
        // radical parts must agree including radicand (unless both vanish)
        if (a.x == 0 && a.z == 0 && b.x == 0 && b.z == 0) return true;
        return a.D == b.D && a.x == b.x && a.z == b.z;
    }
    friend bool operator!=(const ExactNumber& a, const ExactNumber& b) { return !(a == b); }

    ExactNumber pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        ExactNumber r(Rat(1), D), b = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r *= b;
            b *= b;
            u >>= 1;
        }
        return r;
    }

    Cplx embed() const {
        double rd = std::sqrt(to_double(D));
        return {to_double(w) + to_double(x) * rd, to_double(y) + to_double(z) * rd};
    }

    std::string str() const {
        auto piece = [&](const Rat& a, const Rat& b) {  // a + b*sqrt(D)
            std::string s = rat_str(a);
            if (b != 0) s += (b > 0 ? "+" : "-") + rat_str(boost::multiprecision::abs(b)) + "*sqrt(" + D.str() + ")";
            return s;
        };
        std::string s = piece(w, x);
        if (y != 0 || z != 0) s += " + i*(" + piece(y, z) + ")";
        return s;
    }
};

// A point tau = u + i*v of the upper half-plane with exact coordinates:
// u rational and v = s*sqrt(D), s > 0 rational, D squarefree.
struct ExactPoint {
    Rat u{0};
    Rat s{1};
    Int D{1};

    ExactPoint() = default;
    ExactPoint(Rat u_, Rat s_, Int D_) : u(std::move(u_)), s(std::move(s_)), D(std::move(D_)) {
        if (s <= 0) throw std::domain_error("ExactPoint: need v > 0");
        Int sq, d0;
        squarefree_decompose(D, sq, d0);
        s *= Rat(sq);
        D = d0;
    }

    // from rational u and v^2 (v^2/D' must have rational square root after
    // squarefree reduction, which holds by construction: v^2 = s^2 D')
    static ExactPoint from_v_squared(Rat u, const Rat& v2) {
        if (v2 <= 0) throw std::domain_error("ExactPoint: v^2 must be positive");
        Int n = num(v2), d = den(v2);
        // v^2 = n/d = n*d / d^2
        Int s1, D1;
        squarefree_decompose(n * d, s1, D1);
        return ExactPoint(std::move(u), Rat(s1) / Rat(d), D1);
    }

    Rat v_squared() const { return s * s * Rat(D); }
    Rat abs2() const { return u * u + v_squared(); }

    ExactNumber tau() const { return {u, Rat(0), Rat(0), s, D}; }
    // v as an ExactNumber (real radical s*sqrt(D))
    ExactNumber v() const { return {Rat(0), s, Rat(0), Rat(0), D}; }

    Cplx embed() const { return {to_double(u), to_double(s) * std::sqrt(to_double(D))}; }
};

}  // namespace lhmf

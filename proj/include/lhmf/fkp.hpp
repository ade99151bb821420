#pragma once

// Evaluation of the meromorphic modular form
//   f_{k,P}(z) = |d|^{k-1/2}/pi * sum_{Q in [P]} Q(z,1)^{-k}.
//
// The class is summed in fibers: for each leading coefficient a the forms in
// [P] with that a make up full residue families b = b0 (mod 2a), and with
// t = b/(2a), v_a = sqrt|d|/(2a),
//   Q(z,1) = a ((t+z)^2 + v_a^2),
// so each family is a shifted lattice sum of h(t) = ((t+z)^2+v_a^2)^{-k}.
// Poisson summation turns it into an exponentially convergent r-series
//   sum_t h(t0+t) = sum_{r>=1} e(r t0) e(rz) Phi_k(r, v_a)        (v > v_a)
// with Phi_k the analytically shifted Fourier transform of (x^2+v^2)^{-k}:
//   Phi_k(r,v) = (-1)^k (2pi)^{2k} r^{2k-1} sum_{j>=0} C(k+j-1,j) (2 pi r v)^{2j} / (2k+2j-1)!
// (a positive series, no cancellation).  For v < v_a the two poles of h
// straddle the contour and a two-sided residue expansion applies; in a narrow
// band around v = v_a the raw t-sum is used.
//
// Families with small v_a (all but the few with a < ~sqrt|d|) contribute only
// through v > v_a, and their z-dependence factors out:
//   sum_fams = sum_{r>=1} e(rz) S_r,   S_r = sum_fams a^{-k} e(r t0) Phi_k(r, v_a)
// - the Fourier expansion of that part of f.  The S_r are precomputed once per
// (class, k, fiber bound), making point evaluation O(1) in the fiber count.
//
// Truncating the fiber list at a <= A is controlled by the square-root count
// r_a = #{b0 mod 2a : b0^2 = d (4a)} <= 4 d(4a) sqrt|d| <= 12 d(a) sqrt|d|
// (<= 2 per odd unramified prime; ramified and 2-adic parts absorbed into
// 2 sqrt|d|).  With D(t) = sum_{n<=t} d(n) <= t(ln t + 1) and partial
// summation, the documented orbit tail bound is
//   |f - f_A| <= pref (2pi)^{2k}/(2k-1)! T_A sum_{r>=1} r^{2k-1} e^{-2 pi r (v - v_A)},
//   T_A = 12 sqrt|d| k A^{1-k} ( ln A/(k-1) + 1/(k-1) + 1/(k-1)^2 ),
// v_A = sqrt|d|/(2A).  The bound is conservative (the true decay carries no
// log and an O(1) average instead of d(a)); A is chosen from the empirical
// tail and the rigorous bound is reported as-is.

#include <lhmf/modforms.hpp>
#include <lhmf/quadrature.hpp>

namespace lhmf {

namespace detail {

// series coefficients C(k+j-1,j)/(2k+2j-1)!
inline const std::vector<double>& phi_series_coeffs(int k) {
    static std::map<int, std::vector<double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<double> c;
    for (int j = 0; j <= 60; ++j) {
        Rat r(binomial(k + j - 1, j), factorial(2 * k + 2 * j - 1));
        c.push_back(to_double(r));
        if (j > 4 && c.back() < 1e-300) break;
    }
    return cache.emplace(k, std::move(c)).first->second;
}

inline double ipow(double x, int n) {
    double r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// integer power of a complex number; 0^0 = 1 by convention here
inline Cplx ipowc(Cplx x, int n) {
    if (n < 0) return 1.0 / ipowc(x, -n);
    Cplx r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Phi_k(r, v): positive series for moderate x = 2 pi r v, residue
// (cosh/sinh) form once the series would need many terms
inline double phi_k(int k, double r, double v) {
    double x = 2 * M_PI * r * v;
    if (x <= 20.0) {
        const auto& c = phi_series_coeffs(k);
        double x2 = x * x, p = 1.0, s = 0.0;
        for (size_t j = 0; j < c.size(); ++j) {
            double term = c[j] * p;
            s += term;
            if (term < 1e-18 * s) break;
            p *= x2;
        }
        double val = ipow(2 * M_PI * r, 2 * k - 1) * 2 * M_PI * s;
        return (k % 2 == 0) ? val : -val;
    }
    Cplx acc = 0;
    double fk1 = to_double(factorial(k - 1));
    for (int m = 0; m <= k - 1; ++m) {
        Cplx t = to_double(binomial(k - 1, m)) * ipowc(Cplx(0, -2 * M_PI * r), k - 1 - m);
        t *= ((m % 2) ? -1.0 : 1.0) * to_double(factorial(k + m - 1)) / fk1;
        t *= ipowc(Cplx(0, 2 * v), -k - m);
        double br = std::exp(x) + (((k + m) % 2) ? -1.0 : 1.0) * std::exp(-x);
        acc += t * br;
    }
    acc *= Cplx(0, -2 * M_PI) / fk1;
    return acc.real();  // imaginary part vanishes identically
}

}  // namespace detail

struct FkpEvaluator {
    int k = 2;
    QuadForm rep;       // reduced representative
    Int d;              // discriminant (< 0)
    long long A = 200;  // fiber bound
    double pref = 0;    // |d|^{k-1/2}/pi
    double sqrt_absd = 0;
    double v_A = 0;  // sqrt|d|/(2A)
    double pole_guard = 1e-3;
    static constexpr double kHeadCut = 0.45;
    static constexpr int kFourierTerms = 64;

    struct Fam {
        long long a, b0;
        double v_a;
        double t0;
        Cplx omega;     // e(t0)
        double inv_ak;  // a^{-k}
    };
    std::vector<Fam> head;   // v_a > kHeadCut: handled pointwise
    std::vector<Fam> tail;   // folded into the Fourier coefficients below
    std::vector<Cplx> S;     // S[r-1], r = 1..kFourierTerms
    std::vector<double> SB;  // sum of a^{-k} |Phi_k(r, v_a)| over tail fams

    static FkpEvaluator build(const QuadForm& p, int k, long long A) {
        if (k < 2) throw std::invalid_argument("f_{k,P}: k >= 2");
        FkpEvaluator ev;
        ev.k = k;
        ev.rep = class_of(p);
        ev.d = p.disc();
        ev.A = A;
        ev.sqrt_absd = std::sqrt(to_double(Int(-ev.d)));
        ev.pref = std::pow(to_double(Int(-ev.d)), k - 0.5) / M_PI;
        ev.v_A = ev.sqrt_absd / (2.0 * static_cast<double>(A));
        for (const auto& f : orbit_fibers(ev.rep, A)) {
            Fam fam;
            fam.a = f.a;
            fam.b0 = f.b0;
            fam.v_a = ev.sqrt_absd / (2.0 * f.a);
            fam.t0 = static_cast<double>(f.b0) / (2.0 * f.a);
            fam.omega = std::exp(Cplx(0, 2 * M_PI * fam.t0));
            fam.inv_ak = std::pow(static_cast<double>(f.a), -k);
            (fam.v_a > kHeadCut ? ev.head : ev.tail).push_back(fam);
        }
        ev.S.assign(kFourierTerms, Cplx(0, 0));
        ev.SB.assign(kFourierTerms, 0.0);
        for (const auto& f : ev.tail) {
            Cplx wr = f.omega;
            for (int r = 1; r <= kFourierTerms; ++r) {
                double ph = detail::phi_k(k, r, f.v_a);
                ev.S[r - 1] += f.inv_ak * wr * ph;
                ev.SB[r - 1] += f.inv_ak * std::abs(ph);
                wr *= f.omega;
            }
        }
        return ev;
    }

    // orbit tail bound at height v (see header comment)
    double orbit_tail(double v) const {
        if (k <= 1) return std::numeric_limits<double>::infinity();
        double la = std::log(static_cast<double>(A));
        double fibers = 12.0 * sqrt_absd * k * std::pow(static_cast<double>(A), 1.0 - k) *
                        (la / (k - 1) + 1.0 / (k - 1) + 1.0 / ((k - 1) * (k - 1)));
        double c = std::pow(2 * M_PI, 2 * k) / to_double(factorial(2 * k - 1));
        double g = 0, q = std::exp(-2 * M_PI * (v - v_A));
        if (q >= 1) return std::numeric_limits<double>::infinity();
        double qr = q;
        for (int r = 1; r < 500; ++r) {
            double term = detail::ipow(r, 2 * k - 1) * qr;
            g += term;
            if (term < 1e-18 * g) break;
            qr *= q;
        }
        return pref * fibers * c * g;
    }

    // poles of f on the positive imaginary axis above ymin sit at the head
    // families with b0 = 0; returns (y0 = v_a, index into head)
    std::vector<std::pair<double, size_t>> axis_poles_above(double ymin) const {
        std::vector<std::pair<double, size_t>> out;
        for (size_t i = 0; i < head.size(); ++i)
            if (head[i].b0 == 0 && head[i].v_a > ymin) out.push_back({head[i].v_a, i});
        return out;
    }

    static double family_pole_distance(const Fam& f, Cplx z) {
        double w = z.real() + f.t0;
        double du = w - std::round(w);
        double dv = z.imag() - f.v_a;
        return std::hypot(du, dv);
    }

    struct Exclusion {
        bool active = false;
        size_t head_index = 0;  // head family whose t = t_int member is skipped
        long long t_int = 0;
    };

    EvalResult eval(Cplx z, double abs_tol = 1e-13) const { return eval_excl(z, abs_tol, Exclusion()); }

    EvalResult eval_excl(Cplx z, double abs_tol, const Exclusion& excl) const {
        double v = z.imag();
        if (v <= 0) throw std::domain_error("f_{k,P}: need Im z > 0");
        const double band = 0.05;
        Cplx ez = std::exp(Cplx(0, 2 * M_PI) * z);  // e(z)
        Cplx acc = 0;
        double err = orbit_tail(v);

        for (size_t fi = 0; fi < head.size(); ++fi) {
            bool excluded_here = excl.active && excl.head_index == fi;
            acc += family_value(head[fi], z, ez, v, band, abs_tol, excluded_here, excl.t_int, err);
        }

        // tail families via the precomputed Fourier coefficients
        if (!tail.empty()) {
            double aez = std::abs(ez);
            double grow = std::exp(2 * M_PI * kHeadCut);
            if (v > kHeadCut + band && aez * grow < 0.999) {
                Cplx ep = ez;
                int r = 1;
                for (; r <= kFourierTerms; ++r) {
                    acc += ep * S[r - 1];
                    double nextb = (r < kFourierTerms ? SB[r] : SB[kFourierTerms - 1] * grow);
                    double rem = nextb * std::pow(aez, r + 1) / (1.0 - aez * grow);
                    if (rem < abs_tol * 0.1 / pref) {
                        err += rem;
                        break;
                    }
                    ep *= ez;
                }
                if (r > kFourierTerms)
                    err += SB[kFourierTerms - 1] * grow * std::pow(aez, kFourierTerms + 1) / (1.0 - aez * grow);
            } else {
                // low point: per-family fallback (test paths only)
                for (const auto& f : tail) acc += family_value(f, z, ez, v, band, abs_tol, false, 0, err);
            }
        }
        return {pref * acc, pref * err + std::abs(pref * acc) * 1e-14};
    }

  private:
    Cplx family_value(const Fam& f, Cplx z, Cplx ez, double v, double band, double abs_tol, bool excluded_here,
                      long long t_excl, double& err) const {
        double fk1 = to_double(factorial(k - 1));
        if (!excluded_here && family_pole_distance(f, z) < pole_guard) {
            long long tn = static_cast<long long>(std::llround(-(z.real() + f.t0)));
            Int bb = Int(f.b0) + 2 * Int(f.a) * tn;
            throw std::domain_error("f_{k,P}: z within guard distance of a pole of form [" + Int(f.a).str() + "," +
                                    bb.str() + "," + Int((bb * bb - d) / (4 * f.a)).str() + "]");
        }
        Cplx fam_acc = 0;
        if (!excluded_here && v > f.v_a + band) {
            Cplx rho = f.omega * ez, rp = rho;
            double tail_q = std::exp(-2 * M_PI * (v - f.v_a));
            for (int r = 1; r < 4000; ++r) {
                fam_acc += rp * detail::phi_k(k, r, f.v_a);
                double bnd =
                    power_tail_bound(std::pow(2 * M_PI, 2 * k) / to_double(factorial(2 * k - 1)), 2 * k - 1, tail_q, r);
                if (bnd < abs_tol * 1e-2 / pref + 1e-17 * (1 + std::abs(fam_acc))) {
                    err += f.inv_ak * bnd;
                    break;
                }
                rp *= rho;
            }
        } else if (!excluded_here && v < f.v_a - band) {
            // two-sided residue expansion (poles of h on both sides of the contour)
            auto res_sum = [&](double r, double sgn_pole) {  // +1: pole -z+iv_a, -1: -z-iv_a
                Cplx s = 0;
                for (int m = 0; m <= k - 1; ++m) {
                    Cplx t = to_double(binomial(k - 1, m)) * detail::ipowc(Cplx(0, -2 * M_PI * r), k - 1 - m);
                    t *= ((m % 2) ? -1.0 : 1.0) * to_double(factorial(k + m - 1)) / fk1;
                    t *= detail::ipowc(sgn_pole * Cplx(0, 2 * f.v_a), -k - m);
                    s += t;
                }
                return s / fk1;
            };
            fam_acc += Cplx(0, 2 * M_PI) * res_sum(0.0, +1.0);          // r = 0, upper pole
            Cplx e_minus = f.omega * ez * std::exp(-2 * M_PI * f.v_a);  // e(t0) e(z + i v_a)
            Cplx p = e_minus;
            for (int r = 1; r < 4000; ++r) {
                Cplx term = Cplx(0, -2 * M_PI) * p * res_sum(r, -1.0);
                fam_acc += term;
                if (std::abs(term) < abs_tol * 1e-2 / pref + 1e-18 * (1 + std::abs(fam_acc)) || std::abs(p) < 1e-300) break;
                p *= e_minus;
            }
            // r <= -1 at the upper pole: powers of q0 = e(-(t0+z-i v_a)), |q0| = e^{-2pi(v_a-v)}
            Cplx q0 = std::conj(f.omega) * std::exp(Cplx(0, -2 * M_PI) * z) * std::exp(-2 * M_PI * f.v_a);
            Cplx p2 = q0;
            for (int r = 1; r < 4000; ++r) {
                Cplx term = Cplx(0, 2 * M_PI) * p2 * res_sum(-static_cast<double>(r), +1.0);
                fam_acc += term;
                if (std::abs(term) < abs_tol * 1e-2 / pref + 1e-18 * (1 + std::abs(fam_acc)) || std::abs(p2) < 1e-300) break;
                p2 *= q0;
            }
        } else {
            // raw band: direct t-sum; truncation budget from abs_tol
            double budget = std::max(abs_tol / (pref * f.inv_ak * 4), 1e-300);
            double tmax = std::pow(2.0 / ((2 * k - 1) * budget), 1.0 / (2 * k - 1));
            long long T = static_cast<long long>(tmax) + 4;
            T = std::min<long long>(std::max<long long>(T, 64), 4000000);
            double base = -(z.real() + f.t0);
            long long center = static_cast<long long>(std::llround(base));
            for (long long t = center - T; t <= center + T; ++t) {
                if (excluded_here && t == t_excl) continue;
                Cplx tz = (static_cast<double>(t) + f.t0) + z;
                fam_acc += 1.0 / detail::ipowc(tz * tz + f.v_a * f.v_a, k);
            }
            err += f.inv_ak * 2.0 * std::pow(static_cast<double>(T - 2), 1.0 - 2 * k) / (2 * k - 1);
        }
        return f.inv_ak * fam_acc;
    }
};

// shared evaluator cache (class | k | A)
inline const FkpEvaluator& fkp_evaluator(const QuadForm& p, int k, long long A) {
    static std::map<std::string, FkpEvaluator> cache;
    static std::mutex mu;
    std::string key = class_of(p).str() + "|" + std::to_string(k) + "|" + std::to_string(A);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, FkpEvaluator::build(p, k, A)).first->second;
}

}  // namespace lhmf

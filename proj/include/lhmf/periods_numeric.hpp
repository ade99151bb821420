#pragma once

// Numeric periods r_n(f) = int_0^infty f(iy) y^n dy via the reflection trick:
// weight-2k modularity folds the integral to
//   r_n(f) = int_1^infty f(iy) (y^n + (-1)^k y^{2k-2-n}) dy,
// avoiding the y -> 0 endpoint.  Exponential decay of the integrand picks the
// cutoff Y.  A pole of f_{k,P} on the contour (CM point of a [a,0,c] orbit
// form, e.g. d = -20) is handled in the finite-part sense: the symmetric
// average of the two contour deformations, computed by subtracting the
// explicit singular orbit term on a window and integrating its finite part in
// closed form.  A pole at the fold point itself (d = -4: tau_P = i) is
// rejected.  Also here: Epstein zeta by lattice shells, <Delta,Delta> by 2D
// quadrature over the fundamental domain, and the R_n multiples of Delta.

#include <lhmf/config.hpp>
#include <lhmf/fkp.hpp>

namespace lhmf {

inline double fold_weight(int k, int n, double y) {
    double p = std::pow(y, n) + (k % 2 ? -1.0 : 1.0) * std::pow(y, 2 * k - 2 - n);
    return p;
}

// ---- finite-part window -------------------------------------------------
//
// FP int_{y0-h}^{y0+h} (y0^2-y^2)^{-k} g(y) dy with g(y) = y^n + (-1)^k y^{2k-2-n}:
// substitute x = y-y0, expand G(x) = (2y0+x)^{-k} g(y0+x) = sum G_j x^j, and use
//   FP int_{-h}^{h} x^{j-k} dx = 2 h^{j-k+1}/(j-k+1)  (j-k even), 0 (j-k odd).
inline std::pair<double, double> finite_part_window(int k, int n, double y0, double h) {
    const int J = 18;
    std::vector<double> A(J + 1), B(J + 1, 0.0), G(J + 1, 0.0);
    for (int i = 0; i <= J; ++i)
        A[i] = ((i % 2) ? -1.0 : 1.0) * to_double(binomial(k + i - 1, i)) * std::pow(2 * y0, -k - i);
    double sg = (k % 2) ? -1.0 : 1.0;
    for (int j = 0; j <= J; ++j) {
        if (j <= n) B[j] += to_double(binomial(n, j)) * std::pow(y0, n - j);
        if (j <= 2 * k - 2 - n) B[j] += sg * to_double(binomial(2 * k - 2 - n, j)) * std::pow(y0, 2 * k - 2 - n - j);
    }
    for (int j = 0; j <= J; ++j)
        for (int i = 0; i <= j; ++i) G[j] += A[i] * B[j - i];
    double fp = 0;
    for (int j = 0; j <= J; ++j) {
        int m = j - k;
        if (m == -1 || ((m % 2) != 0)) continue;
        fp += G[j] * 2 * std::pow(h, m + 1) / (m + 1);
    }
    fp *= sg;  // (y0-y)^{-k} = (-1)^k (y-y0)^{-k}
    // Taylor remainder estimate: next kept coefficient times its FP weight
    double rem = std::abs(G[J]) * 2 * std::pow(h, J - k + 1) / std::max(1, J - k + 1) / (1 - h / (2 * y0));
    return {fp, rem};
}

struct AxisPole {
    double y0 = 0;
    size_t fam_index = 0;
    double coeff = 0;  // f(iy) ~ coeff * (y0^2 - y^2)^{-k} near y0
};

// choose the fiber bound so the empirical orbit tail (average r_a ~ 1, with
// a x30 safety margin) sits below the target
inline long long choose_orbit_bound(int k, double absd, int n, double target) {
    double pref = std::pow(absd, k - 0.5) / M_PI;
    double c2k = std::pow(2 * M_PI, 2 * k) / to_double(factorial(2 * k - 1));
    double gint = 0;  // int_1^inf sum_r r^{2k-1} e^{-2 pi r y} (y^n + y^{2k-2-n}) dy, coarse
    for (int r = 1; r <= 8; ++r) {
        double s = 0, y = 1.0;
        for (int step = 0; step < 400; ++step, y += 0.05)
            s += 0.05 * detail::ipow(r, 2 * k - 1) * std::exp(-2 * M_PI * r * y) * (std::pow(y, n) + std::pow(y, 2 * k - 2 - n));
        gint += s;
    }
    double safety = 30.0;
    long long A = 512;
    while (A < (1 << 21)) {
        double tail = safety * pref * c2k * gint * 2.0 / ((k - 1) * std::pow(static_cast<double>(A), k - 1.0));
        if (tail <= target) break;
        A *= 2;
    }
    return A;
}

struct NumericPeriodOptions {
    double tol = 1e-8;
    long long orbit_bound = 0;  // 0 = auto
};

// r_n of f_{k,P}; throws std::domain_error for the excluded fold-point pole
inline PeriodResult numeric_period_fkp(const QuadForm& P, int k, int n, const NumericPeriodOptions& opt = {}) {
    if (n < 0 || n > 2 * k - 2) throw std::invalid_argument("numeric_period: need 0 <= n <= 2k-2");
    double absd = to_double(Int(-P.disc()));
    long long A = opt.orbit_bound ? opt.orbit_bound : choose_orbit_bound(k, absd, n, opt.tol * 0.25);
    const FkpEvaluator& ev = fkp_evaluator(P, k, A);

    // poles on the folded contour [1, infinity)
    std::vector<AxisPole> poles;
    for (auto [y0, fi] : ev.axis_poles_above(0.95)) {
        if (std::abs(y0 - 1.0) < 0.05) {
            Int a(ev.head[fi].a);
            throw std::domain_error("numeric_period: pole of f_{k,P} at/near the fold point i (form [" + a.str() + ",0," +
                                    Int((-P.disc()) / (4 * a)).str() + "]); principal value there is excluded (d = -4 case)");
        }
        if (k > 2)
            throw std::domain_error("numeric_period: contour pole of order > 2 (k > 2); finite-part periods validated only "
                                    "for k = 2");
        AxisPole p;
        p.y0 = y0;
        p.fam_index = fi;
        p.coeff = ev.pref * ev.head[fi].inv_ak;
        poles.push_back(p);
    }
    std::sort(poles.begin(), poles.end(), [](const AxisPole& a, const AxisPole& b) { return a.y0 < b.y0; });

    // cutoff: integrand decays like e^{-2 pi y}; measure the level at
    // candidate Y and bound the remaining integral by the incomplete gamma
    double Y = 4.0, level;
    for (int it = 0; it < 40; ++it) {
        level = (std::abs(ev.eval(Cplx(0, Y), opt.tol * 1e-3).value) + ev.orbit_tail(Y)) * std::exp(2 * M_PI * Y) * 2.0;
        double rem = 2.0 * level * std::pow(2 * M_PI, 1.0 - 2 * k) * incomplete_gamma_int(2 * k - 1, 2 * M_PI * Y);
        if (rem < opt.tol * 0.25) break;
        Y += 1.0;
    }
    double tail_err = 2.0 * level * std::pow(2 * M_PI, 1.0 - 2 * k) * incomplete_gamma_int(2 * k - 1, 2 * M_PI * Y);

    Integrand f = [&](double y) {
        auto r = ev.eval(Cplx(0, y), opt.tol * 1e-3);
        double g = fold_weight(k, n, y);
        return std::make_pair(r.value * g, r.err * std::abs(g));
    };

    PeriodResult out;
    out.k = k;
    out.n = n;
    out.form = class_of(P);
    QuadResult total;
    double prev = 1.0;
    std::vector<std::pair<double, double>> segments;  // regular segments
    for (const auto& p : poles) {
        double h = std::min({0.35, (p.y0 - prev) * 0.45, (Y - p.y0) * 0.45});
        segments.push_back({prev, p.y0 - h});
        // window: regular part (singular orbit member removed) + closed-form finite part
        FkpEvaluator::Exclusion excl;
        excl.active = true;
        excl.head_index = p.fam_index;
        excl.t_int = 0;
        Integrand fw = [&](double y) {
            auto r = ev.eval_excl(Cplx(0, y), opt.tol * 1e-3, excl);
            double g = fold_weight(k, n, y);
            return std::make_pair(r.value * g, r.err * std::abs(g));
        };
        QuadResult wreg = adaptive_gl(fw, p.y0 - h, p.y0 + h, opt.tol / 8);
        auto [fp, fperr] = finite_part_window(k, n, p.y0, h);
        total.value += wreg.value + p.coeff * fp;
        total.err += wreg.err + std::abs(p.coeff) * fperr;
        out.cpv = true;
        prev = p.y0 + h;
    }
    segments.push_back({prev, Y});
    for (auto [a, b] : segments) {
        QuadResult q = adaptive_gl(f, a, b, opt.tol / (4.0 * segments.size()));
        total.value += q.value;
        total.err += q.err;
    }
    out.numeric = total.value;
    out.err = total.err + tail_err;
    out.method = "fold-gl,A=" + std::to_string(A) + ",Y=" + std::to_string(Y) + (out.cpv ? ",cpv" : "");
    return out;
}

// r_n of a cusp-form q-series (Delta, R_n): same fold, no poles
inline PeriodResult numeric_period_series(const FourierSeries& fs, int n, double tol = 1e-10) {
    int k = fs.k;
    if (n < 0 || n > 2 * k - 2) throw std::invalid_argument("numeric_period: need 0 <= n <= 2k-2");
    if (fs.constant_term != 0) throw std::domain_error("numeric_period: series must be cuspidal (reflection trick)");
    // |f(iy)| <= K e^{-2 pi y} for y >= Y with K measured from the coefficients
    auto level = [&](double Y) {
        double s = 0;
        for (size_t m = 1; m <= fs.c.size(); ++m) s += std::abs(to_double(fs.c[m - 1])) * std::exp(-2 * M_PI * (m - 1) * Y);
        return std::abs(fs.scale) * s;
    };
    // int_Y^inf K e^{-2 pi y} 2 y^{2k-2} dy = 2 K (2 pi)^{1-2k} Gamma(2k-1, 2 pi Y), K = level(Y) e^{2 pi Y}
    double Y = 3.0, tail_int = 0;
    for (; Y < 40; Y += 0.5) {
        double K = level(Y) * std::exp(2 * M_PI * Y);
        tail_int = 2.0 * K * std::pow(2 * M_PI, 1.0 - 2 * k) * incomplete_gamma_int(2 * k - 1, 2 * M_PI * Y);
        if (tail_int < tol * 0.2) break;
    }
    Integrand f = [&](double y) {
        auto r = eval_series(fs, Cplx(0, y));
        double g = fold_weight(k, n, y);
        return std::make_pair(r.value * g, r.err * std::abs(g));
    };
    QuadResult q = adaptive_gl(f, 1.0, Y, tol / 2);
    PeriodResult out;
    out.k = k;
    out.n = n;
    out.numeric = q.value;
    out.err = q.err + tol * 0.2;
    out.method = "fold-gl,series,Y=" + std::to_string(Y);
    return out;
}

// r_n(f+) = Re r_n(f), r_n(f-) = -Im r_n(f)
inline std::pair<double, double> period_plusminus(const Cplx& rn) { return {rn.real(), -rn.imag()}; }

// ---- Epstein zeta --------------------------------------------------------

struct EpsteinResult {
    double value = 0;
    double err = 0;
};

// zeta_P(k) = sum_{(x,y) != 0} P(x,y)^{-k}.
//
// Square shells converge like R^{2-2k}, too slowly for the k = 2 accuracy the
// outer-period identity needs, so each row x != 0 is resummed by Poisson:
// with beta = bx/(2c), w = sqrt|d| |x|/(2c),
//   sum_y P(x,y)^{-k} = c^{-k} [ H0(w) + 2 sum_{r>=1} cos(2 pi r beta) Hr(r,w) ],
//   H0(w)   = pi (2k-2)! / ((k-1)!^2 (2w)^{2k-2} w),
//   Hr(r,w) = 2 pi e^{-x} P_k(x) / ((k-1)! (2w)^{2k-1}),  x = 2 pi r w,
//   P_k(x)  = sum_{m<k} (2k-2-m)!/(m!(k-1-m)!) (2x)^m,
// all terms positive, exponentially convergent in r, with the x-tail bounded
// by the explicit integral comparison on H0.  The x = 0 column is
// 2 zeta(2k)/c^k exactly.  (A plain square-shell evaluation is kept in the
// test suite as an independent oracle.)
inline EpsteinResult epstein_zeta(const QuadForm& P0, int k, double tol = 1e-10) {
    if (k < 2) throw std::invalid_argument("epstein_zeta: k >= 2 (absolute convergence)");
    if (!P0.is_positive_definite()) throw std::invalid_argument("epstein_zeta: positive definite only");
    QuadForm P = class_of(P0);  // zeta_P is a class invariant; the reduced form converges fastest
    double b = to_double(P.b), c = to_double(P.c);
    double absd = to_double(Int(-P.disc()));
    double fk1 = to_double(factorial(k - 1));
    double H0c = M_PI * to_double(factorial(2 * k - 2)) / (fk1 * fk1);
    auto H0 = [&](double w) { return H0c * std::pow(2 * w, 2.0 - 2 * k) / w; };
    auto Pk = [&](double x) {
        double s = 0;
        for (int m = 0; m < k; ++m)
            s += to_double(Rat(factorial(2 * k - 2 - m), factorial(m) * factorial(k - 1 - m))) * detail::ipow(2 * x, m);
        return s;
    };
    // zeta(2k) via Bernoulli: (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!)
    double zeta2k = to_double(bernoulli_number(2 * k) / Rat(2 * factorial(2 * k))) * std::pow(2 * M_PI, 2 * k);
    if (k % 2 == 0) zeta2k = -zeta2k;
    double ck = std::pow(c, -static_cast<double>(k));
    double acc = 2.0 * zeta2k * ck;
    double gamma = std::sqrt(absd) / (2 * c);
    double err = 0;
    for (long long x = 1;; ++x) {
        double w = gamma * x, beta = b * x / (2 * c);
        double row = H0(w);
        double qratio = std::exp(-2 * M_PI * w) * detail::ipow(2.0, k - 1);  // term ratio bound
        for (int r = 1; r < 100000; ++r) {
            double xr = 2 * M_PI * r * w;
            double term = 2 * M_PI * std::exp(-xr) * Pk(xr) / (fk1 * std::pow(2 * w, 2.0 * k - 1));
            row += 2 * std::cos(2 * M_PI * r * beta) * term;
            if (qratio < 1 && 2 * term * qratio / (1 - qratio) < 1e-16 * std::abs(row)) {
                err += ck * 2 * term * qratio / (1 - qratio) * 2;
                break;
            }
        }
        acc += 2 * ck * row;
        double xtail = 2 * ck * H0c * std::pow(2 * gamma, 2.0 - 2 * k) / gamma *
                       std::pow(static_cast<double>(x), 2.0 - 2 * k) / (2 * k - 2) * 2.5;
        if (xtail < tol || x > 3000000) {
            err += xtail;
            break;
        }
    }
    return {acc, err + acc * 1e-14};
}

// ---- Petersson norm of Delta ----------------------------------------------

// <Delta,Delta> = int_F |Delta|^2 v^{10} du dv over the standard fundamental
// domain, truncated at v = 8 (the tail is ~ e^{-4 pi v} v^{10})
inline double petersson_norm_delta(double rel_tol = 1e-7) {
    static double cached = 0;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cached != 0) return cached;
    auto delta = delta_coeffs(44);
    auto inner = [&](double u) {
        double v0 = std::sqrt(1.0 - u * u);
        Integrand f = [&](double v) {
            auto r = eval_series(delta, Cplx(u, v));
            double w = std::norm(r.value) * std::pow(v, 10);
            return std::make_pair(Cplx(w, 0), 2 * std::abs(r.value) * r.err * std::pow(v, 10));
        };
        return adaptive_gl(f, v0, 8.0, rel_tol * 1e-7);
    };
    // even in u: 2 * int_0^{1/2}
    Integrand outer = [&](double u) {
        QuadResult q = inner(u);
        return std::make_pair(q.value, q.err);
    };
    QuadResult q = adaptive_gl(outer, 0.0, 0.5, rel_tol * 1e-6);
    cached = 2.0 * q.value.real();
    return cached;
}

// ---- R_n as a multiple of Delta (dim S_{2k} = 1) ---------------------------

struct RnSeries {
    FourierSeries series;  // scale = r_n(Delta)/<Delta,Delta>
    double coeff_err = 0;
};

inline RnSeries rn_coefficients(int k, int n, size_t N, double tol = 1e-10) {
    if (k != 6) throw std::domain_error("rn_coefficients: dim S_{2k} = 1 only (k = 6 in supported range)");
    auto delta = delta_coeffs(std::max<size_t>(N, 40));
    PeriodResult rn = numeric_period_series(delta, n, tol);
    double norm = petersson_norm_delta();
    double c = rn.numeric.real() / norm;
    RnSeries out;
    out.series = delta_coeffs(N);
    out.series.kind = "rn";
    out.series.scale = c;
    out.coeff_err = (rn.err + std::abs(rn.numeric) * 1e-6) / norm;
    return out;
}

}  // namespace lhmf

#pragma once

// Gauss-Legendre panels with bisection refinement.  Integrands return a value
// together with their own evaluation-error bound; both are integrated, so the
// result carries quadrature error + accumulated evaluation error.

#include <lhmf/numbers.hpp>

#include <functional>
#include <mutex>

namespace lhmf {

struct GLRule {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

inline const GLRule& gl_rule(int n) {
    static std::map<int, GLRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

struct QuadResult {
    Cplx value{0, 0};
    double err = 0;  // quadrature estimate + integrated evaluation error
};

// integrand: double -> (Cplx value, double eval_err)
using Integrand = std::function<std::pair<Cplx, double>(double)>;

inline QuadResult gl_panel(const Integrand& f, double a, double b, int n) {
    const GLRule& r = gl_rule(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    QuadResult out;
    for (int i = 0; i < n; ++i) {
        auto [v, e] = f(mid + half * r.x[i]);
        out.value += half * r.w[i] * v;
        out.err += half * r.w[i] * e;
    }
    return out;
}

inline QuadResult adaptive_gl_impl(const Integrand& f, double a, double b, double tol, int depth) {
    QuadResult coarse = gl_panel(f, a, b, 12);
    QuadResult fine = gl_panel(f, a, b, 24);
    double disc = std::abs(fine.value - coarse.value);
    // stop at the tolerance, the roundoff floor of the integrand, or max depth
    double floor_tol = 3e-15 * (std::abs(fine.value) + 1.0) + 0.03 * fine.err;
    if (disc <= std::max(tol, floor_tol) || depth >= 13 || (b - a) < 1e-10) {
        fine.err += disc;
        return fine;
    }
    double mid = 0.5 * (a + b);
    QuadResult left = adaptive_gl_impl(f, a, mid, tol / 2, depth + 1);
    QuadResult right = adaptive_gl_impl(f, mid, b, tol / 2, depth + 1);
    return {left.value + right.value, left.err + right.err};
}

// deterministic left-to-right refinement
inline QuadResult adaptive_gl(const Integrand& f, double a, double b, double tol) {
    if (!(b > a)) return {};
    return adaptive_gl_impl(f, a, b, tol, 0);
}

}  // namespace lhmf

#pragma once

// q-expansions (E_{2k}, Delta, and scalar multiples used for R_n), point
// evaluation with explicit tail bounds, and the Eichler integrals
//   E_f(tau)  = sum c(n) n^{1-2k} e(n tau)
//   f*(tau)   = -sum conj(c(n)) (4 pi n)^{1-2k} Gamma(2k-1, 4 pi n v) e(-n tau)
// together with their iterated raises.

#include <lhmf/symalg.hpp>

#include <fstream>
#include <json.hpp>

namespace lhmf {

struct EvalResult {
    Cplx value;
    double err;  // absolute bound (truncation + coefficient roundoff)
};

struct FourierSeries {
    int k = 2;               // weight 2k
    Rat constant_term{0};
    std::vector<Rat> c;      // c(1..N), exact
    double scale = 1.0;      // numeric prefactor (1 for E_{2k}, Delta; r_n/<Delta,Delta> for R_n)
    double growth_C = 1.0;   // |c(n)| <= growth_C * n^growth_p for n > N
    double growth_p = 0.0;
    std::string kind;

    size_t order() const { return c.size(); }
    Rat coeff(size_t n) const { return n == 0 ? constant_term : (n <= c.size() ? c[n - 1] : Rat(0)); }
};

inline Rat sigma_power(long n, int e) {
    Rat s(0);
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += rat_pow(Rat(d), e);
        if (d != n / d) s += rat_pow(Rat(n / d), e);
    }
    return s;
}

// E_{2k} = 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n  (exact; zeta(2k) eliminated)
inline FourierSeries eisenstein_coeffs(int k, size_t N) {
    if (k < 2) throw std::invalid_argument("eisenstein_coeffs: k >= 2");
    FourierSeries f;
    f.k = k;
    f.kind = "eisenstein";
    f.constant_term = 1;
    Rat factor = Rat(-4 * k) / bernoulli_number(2 * k);
    f.c.reserve(N);
    for (size_t n = 1; n <= N; ++n) f.c.push_back(factor * sigma_power(static_cast<long>(n), 2 * k - 1));
    f.growth_C = std::abs(to_double(factor)) * 1.3;  // sigma_{2k-1}(n) <= zeta(2k-1) n^{2k-1} <= 1.3 n^{2k-1}
    f.growth_p = 2 * k - 1;
    return f;
}

// Ramanujan tau via q prod (1-q^n)^24, exact integers
inline FourierSeries delta_coeffs(size_t N) {
    if (N < 1) throw std::invalid_argument("delta_coeffs: N >= 1");
    // euler = prod (1-q^n) truncated at degree N (pentagonal sparsity not needed)
    std::vector<Int> euler(N, 0);
    euler[0] = 1;
    for (size_t n = 1; n < N; ++n) {
        for (size_t j = N; j-- > n;) euler[j] -= euler[j - n];
    }
    auto mul = [&](const std::vector<Int>& p, const std::vector<Int>& q) {
        std::vector<Int> r(N, 0);
        for (size_t i = 0; i < N; ++i) {
            if (p[i] == 0) continue;
            for (size_t j = 0; j + i < N; ++j)
                if (q[j] != 0) r[i + j] += p[i] * q[j];
        }
        return r;
    };
    // euler^24 = ((euler^2)^2)^2 * (euler^2)^4 ... use 24 = 16 + 8
    auto e2 = mul(euler, euler);
    auto e4 = mul(e2, e2);
    auto e8 = mul(e4, e4);
    auto e16 = mul(e8, e8);
    auto e24 = mul(e16, e8);
    FourierSeries f;
    f.k = 6;
    f.kind = "delta";
    f.constant_term = 0;
    f.c.reserve(N);
    for (size_t n = 1; n <= N; ++n) f.c.push_back(Rat(e24[n - 1]));  // tau(n) = coeff of q^{n-1} in eta-product
    f.growth_C = 2.0;  // |tau(n)| <= d(n) n^{11/2} <= 2 n^{13/2}
    f.growth_p = 6.5;
    return f;
}

// sum_{n>N} C n^p x^n  <=  C (N+1)^p x^{N+1} / (1 - x e^{p/(N+1)}) when x e^{p/(N+1)} < 1
inline double power_tail_bound(double C, double p, double x, size_t N) {
    if (x <= 0) return 0;
    double q = x * std::exp(p / static_cast<double>(N + 1));
    if (q >= 1) return std::numeric_limits<double>::infinity();
    return C * std::pow(static_cast<double>(N + 1), p) * std::pow(x, static_cast<double>(N + 1)) / (1 - q);
}

// sum c(n) e(n tau), ascending n; error combines the coefficient-growth tail
// with a crude roundoff estimate
inline EvalResult eval_series(const FourierSeries& f, Cplx tau) {
    double v = tau.imag();
    if (v <= 0) throw std::domain_error("eval_series: need Im(tau) > 0");
    Cplx q = std::exp(Cplx(0, 2 * M_PI) * tau);
    Cplx qn = 1, acc = to_double(f.constant_term);
    double absacc = std::abs(acc);
    for (size_t n = 1; n <= f.c.size(); ++n) {
        qn *= q;
        Cplx term = to_double(f.c[n - 1]) * qn;
        acc += term;
        absacc += std::abs(term);
    }
    double tail = power_tail_bound(f.growth_C, f.growth_p, std::exp(-2 * M_PI * v), f.c.size());
    return {f.scale * acc, std::abs(f.scale) * (tail + absacc * 1e-15)};
}

// ------------------------------------------------------------------ Eichler

// Gamma(s, x) for integer s >= 1 via the exact finite sum (s-1)! e^{-x} sum_{j<s} x^j/j!
inline double incomplete_gamma_int(int s, double x) {
    if (s < 1) throw std::invalid_argument("incomplete_gamma_int: s >= 1");
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < s; ++j) {
        term *= x / j;
        sum += term;
    }
    return to_double(factorial(s - 1)) * std::exp(-x) * sum;
}

// E_f(tau) = sum_{n>=1} c(n) n^{1-2k} e(n tau)
inline EvalResult eichler_holomorphic(const FourierSeries& f, Cplx tau) {
    int k = f.k;
    Cplx q = std::exp(Cplx(0, 2 * M_PI) * tau), qn = 1, acc = 0;
    for (size_t n = 1; n <= f.c.size(); ++n) {
        qn *= q;
        acc += to_double(f.c[n - 1]) * std::pow(static_cast<double>(n), 1.0 - 2 * k) * qn;
    }
    double tail = power_tail_bound(f.growth_C, f.growth_p - (2 * k - 1), std::exp(-2 * M_PI * tau.imag()), f.c.size());
    return {f.scale * acc, std::abs(f.scale) * (tail + std::abs(acc) * 1e-14)};
}

// f*(tau) = -sum conj(c(n)) (4 pi n)^{1-2k} Gamma(2k-1, 4 pi n v) e(-n tau)
inline EvalResult eichler_nonholomorphic(const FourierSeries& f, Cplx tau) {
    int k = f.k;
    double v = tau.imag();
    Cplx em = std::exp(Cplx(0, -2 * M_PI) * tau);  // e(-tau), modulus e^{2 pi v} ... times Gamma ~ e^{-4 pi n v}
    Cplx emn = 1, acc = 0;
    for (size_t n = 1; n <= f.c.size(); ++n) {
        emn *= em;
        double g = incomplete_gamma_int(2 * k - 1, 4 * M_PI * n * v);
        acc -= to_double(f.c[n - 1]) * std::pow(4 * M_PI * n, 1.0 - 2 * k) * g * emn;
    }
    // Gamma(2k-1, x) <= (2k-2)! e^{-x} (1+x)^{2k-2}; net mode decay e^{-2 pi n v} poly(n)
    double tail = power_tail_bound(f.growth_C * to_double(factorial(2 * k - 2)) * std::pow(4 * M_PI, 1.0 - 2 * k) *
                                       std::pow(4 * M_PI * v + 1, 2.0 * k - 2),
                                   f.growth_p + (1 - 2 * k) + (2 * k - 2), std::exp(-2 * M_PI * v), f.c.size());
    return {f.scale * acc, std::abs(f.scale) * (tail + std::abs(acc) * 1e-14)};
}

// R_{2-2k}^{k-1} applied to a q-series sum a_n e(n tau) via the closed sum:
//   (-v)^{1-k} (k-1)! sum_j (-2iv)^j/j! C(2k-2-j,k-1) sum_n a_n (2 pi i n)^j e(n tau)
inline Cplx raise56_qseries(int k, const std::vector<Cplx>& a, Cplx tau) {
    double v = tau.imag();
    Cplx q = std::exp(Cplx(0, 2 * M_PI) * tau);
    Cplx acc = 0;
    for (int j = 0; j <= k - 1; ++j) {
        Cplx inner = 0, qn = 1;
        for (size_t n = 1; n <= a.size(); ++n) {
            qn *= q;
            inner += a[n - 1] * std::pow(Cplx(0, 2 * M_PI * n), j) * qn;
        }
        double cj = to_double(Rat(factorial(k - 1) * binomial(2 * k - 2 - j, k - 1), factorial(j)));
        acc += cj * std::pow(Cplx(0, -2 * v), j) * inner;
    }
    double pref = std::pow(-v, 1.0 - k);
    return pref * acc;
}

enum class EichlerKind { holomorphic, nonholomorphic };
enum class RaiseRoute { relation, termwise };

// R_{2-2k}^{k-1} E_f(tau) and R_{2-2k}^{k-1} f*(tau).
// The nonholomorphic raise has two routes: via the Eichler-integral relation
// R^{k-1} f* = -(2k-2)!/(4pi)^{2k-1} conj(R^{k-1} E_f), and termwise through
// the exact exp-Fourier algebra; they must agree (tested).
inline Cplx raised_eichler(const FourierSeries& f, int k, Cplx tau, EichlerKind which,
                           RaiseRoute route = RaiseRoute::relation) {
    if (k == 1) {  // zero raising steps
        return which == EichlerKind::holomorphic ? eichler_holomorphic(f, tau).value : eichler_nonholomorphic(f, tau).value;
    }
    if (which == EichlerKind::holomorphic || route == RaiseRoute::relation) {
        std::vector<Cplx> a(f.c.size());
        for (size_t n = 1; n <= f.c.size(); ++n) a[n - 1] = to_double(f.c[n - 1]) * std::pow(static_cast<double>(n), 1.0 - 2 * k);
        Cplx re = f.scale * raise56_qseries(k, a, tau);
        if (which == EichlerKind::holomorphic) return re;
        return -to_double(factorial(2 * k - 2)) * std::pow(4 * M_PI, 1.0 - 2 * k) * std::conj(re);
    }
    // termwise: -sum conj(c(n)) (4 pi n)^{1-2k} R^{k-1}[Gamma(2k-1,4 pi n v) e(-n tau)]
    Cplx acc = 0;
    for (size_t n = 1; n <= f.c.size(); ++n) {
        ExpFourierExpr mode = raise_iterated_symbolic(ExpFourierExpr::incomplete_gamma_mode(k, static_cast<long>(n)), k, k - 1);
        acc -= to_double(f.c[n - 1]) * std::pow(4 * M_PI * n, 1.0 - 2 * k) * mode.eval(tau);
    }
    return f.scale * acc;
}

// ----------------------------------------------------------- caching to JSON

// plain JSON arrays keyed by kind/weight/order; re-derivable artifacts
inline std::string cache_file_name(const std::string& dir, const std::string& kind, int weight, size_t order) {
    return dir + "/" + kind + "_w" + std::to_string(weight) + "_N" + std::to_string(order) + ".json";
}

inline void save_series_cache(const std::string& dir, const FourierSeries& f) {
    if (dir.empty()) return;
    nlohmann::json j;
    j["kind"] = f.kind;
    j["weight"] = 2 * f.k;
    j["order"] = f.c.size();
    j["constant"] = rat_str(f.constant_term);
    auto& arr = j["coefficients"] = nlohmann::json::array();
    for (const auto& q : f.c) arr.push_back(rat_str(q));
    std::ofstream out(cache_file_name(dir, f.kind, 2 * f.k, f.c.size()));
    if (out) out << j.dump(1) << "\n";
}

// fills f.c (and constant term) from a cache file with matching key; the
// caller sets kind/k and the requested order beforehand
inline bool load_series_cache(const std::string& dir, FourierSeries& f, size_t order) {
    if (dir.empty()) return false;
    std::ifstream in(cache_file_name(dir, f.kind, 2 * f.k, order));
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("kind") != f.kind || j.at("weight") != 2 * f.k) return false;
        f.constant_term = parse_rat(j.at("constant").get<std::string>());
        f.c.clear();
        for (const auto& s : j.at("coefficients")) f.c.push_back(parse_rat(s.get<std::string>()));
    } catch (const std::exception&) {
        return false;
    }
    return f.c.size() == order;
}

}  // namespace lhmf

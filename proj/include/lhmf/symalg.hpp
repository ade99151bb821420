#pragma once

// Two small symbolic algebras closed under the Maass raising operator
// R_kappa = 2i d/dtau + kappa/v, plus the closed form for the iterated raise
// of tau^l.  Everything here is exact; these are the oracles against which
// the numeric raising paths are checked.
//
//  MixedExpr:      sums of  coeff * u^alpha * v^beta      (alpha >= 0, beta in Z)
//  ExpFourierExpr: sums of  C(pi) * v^j * e^{q pi v} * e(m u)   with C a
//                  polynomial in pi over Q(i), q rational, j, m integers.

#include <lhmf/exceptional.hpp>

#include <map>
#include <tuple>

namespace lhmf {

// ---------------------------------------------------------------- MixedExpr

struct MixedExpr {
    std::map<std::pair<long, long>, GaussRat> t;  // (alpha, beta) -> coeff

    void add_term(long alpha, long beta, const GaussRat& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(alpha, beta);
        auto [it, fresh] = t.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    static MixedExpr monomial(long alpha, long beta, const GaussRat& c) {
        MixedExpr e;
        e.add_term(alpha, beta, c);
        return e;
    }

    // (u + iv)^l
    static MixedExpr tau_power(long l) {
        MixedExpr e;
        for (long j = 0; j <= l; ++j) e.add_term(l - j, j, GaussRat(Rat(binomial(l, j))) * GaussRat::i_pow(j));
        return e;
    }

    bool is_zero() const { return t.empty(); }

    friend MixedExpr operator+(const MixedExpr& a, const MixedExpr& b) {
        MixedExpr r = a;
        for (auto& [k, c] : b.t) r.add_term(k.first, k.second, c);
        return r;
    }
    friend MixedExpr operator-(const MixedExpr& a, const MixedExpr& b) {
        MixedExpr r = a;
        for (auto& [k, c] : b.t) r.add_term(k.first, k.second, -c);
        return r;
    }
    friend MixedExpr operator*(const GaussRat& c, const MixedExpr& a) {
        MixedExpr r;
        for (auto& [k, d] : a.t) r.add_term(k.first, k.second, c * d);
        return r;
    }
    friend MixedExpr operator*(const MixedExpr& a, const MixedExpr& b) {
        MixedExpr r;
        for (auto& [k1, c1] : a.t)
            for (auto& [k2, c2] : b.t) r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }
    friend bool operator==(const MixedExpr& a, const MixedExpr& b) { return a.t == b.t; }

    MixedExpr mul_v_pow(long m) const {
        MixedExpr r;
        for (auto& [k, c] : t) r.add_term(k.first, k.second + m, c);
        return r;
    }

    MixedExpr dtau() const {  // (1/2)(d/du - i d/dv)
        MixedExpr r;
        for (auto& [k, c] : t) {
            auto [a, b] = k;
            if (a != 0) r.add_term(a - 1, b, GaussRat(Rat(a, 2)) * c);
            if (b != 0) r.add_term(a, b - 1, GaussRat(Rat(0), Rat(-b) / 2) * c);
        }
        return r;
    }

    MixedExpr raise(long kappa) const {  // R_kappa = 2i dtau + kappa/v
        MixedExpr r;
        for (auto& [k, c] : t) {
            auto [a, b] = k;
            if (a != 0) r.add_term(a - 1, b, GaussRat(Rat(0), Rat(a)) * c);  // i*a
            GaussRat f = GaussRat(Rat(b + kappa));
            if (!f.is_zero()) r.add_term(a, b - 1, f * c);
        }
        return r;
    }

    ExactNumber eval(const ExactPoint& pt) const {
        ExactNumber acc(Rat(0), pt.D);
        ExactNumber uu(pt.u, pt.D), vv = pt.v();
        for (auto& [k, c] : t) acc += c * (uu.pow(k.first) * vv.pow(k.second));
        return acc;
    }

    Cplx eval(Cplx tau) const {
        Cplx acc = 0;
        double u = tau.real(), v = tau.imag();
        for (auto& [k, c] : t) acc += c.embed() * std::pow(u, double(k.first)) * std::pow(v, double(k.second));
        return acc;
    }
};

// --------------------------------------------------------- pi-polynomials

struct PiPoly {
    std::vector<GaussRat> c;  // by pi-degree

    PiPoly() = default;
    explicit PiPoly(GaussRat g) : c{std::move(g)} { prune(); }

    void prune() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }

    static PiPoly pi_times(const Rat& q) {  // q * pi
        PiPoly p;
        p.c = {GaussRat(), GaussRat(q)};
        p.prune();
        return p;
    }

    friend PiPoly operator+(const PiPoly& a, const PiPoly& b) {
        PiPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] += a.c[i];
            if (i < b.c.size()) r.c[i] += b.c[i];
        }
        r.prune();
        return r;
    }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b) {
        PiPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, GaussRat());
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.prune();
        return r;
    }
    friend PiPoly operator*(const GaussRat& g, const PiPoly& a) {
        PiPoly r = a;
        for (auto& x : r.c) x = g * x;
        r.prune();
        return r;
    }
    friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.c == b.c; }

    PiPoly conj() const {
        PiPoly r = *this;
        for (auto& x : r.c) x = x.conj();
        return r;
    }

    Cplx embed() const {
        Cplx acc = 0;
        double p = 1.0;
        for (const auto& g : c) {
            acc += g.embed() * p;
            p *= M_PI;
        }
        return acc;
    }
};

// ------------------------------------------------------- ExpFourierExpr

struct ExpFourierExpr {
    // (v-power j, exp rate q [meaning e^{q pi v}], Fourier index m) -> C(pi)
    std::map<std::tuple<long, Rat, long>, PiPoly> t;

    void add_term(long j, const Rat& q, long m, const PiPoly& c) {
        if (c.is_zero()) return;
        auto key = std::make_tuple(j, q, m);
        auto [it, fresh] = t.try_emplace(key, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    bool is_zero() const { return t.empty(); }

    // e(m tau) = e^{-2 pi m v} e(m u)
    static ExpFourierExpr fourier_mode(long m) {
        ExpFourierExpr e;
        e.add_term(0, Rat(-2 * m), m, PiPoly(GaussRat(Rat(1))));
        return e;
    }

    // Gamma(2k-1, 4 pi n v) e(-n tau)
    //   = (2k-2)! sum_j (4 pi n)^j / j! * v^j e^{-2 pi n v} e(-n u)
    static ExpFourierExpr incomplete_gamma_mode(int k, long n) {
        ExpFourierExpr e;
        Rat fact(factorial(2 * k - 2));
        for (long j = 0; j <= 2 * k - 2; ++j) {
            PiPoly c;
            c.c.assign(j + 1, GaussRat());
            c.c[j] = GaussRat(fact * rat_pow(Rat(4 * n), j) / Rat(factorial(static_cast<unsigned>(j))));
            c.prune();
            e.add_term(j, Rat(-2 * n), -n, c);
        }
        return e;
    }

    friend ExpFourierExpr operator+(const ExpFourierExpr& a, const ExpFourierExpr& b) {
        ExpFourierExpr r = a;
        for (auto& [k, c] : b.t) r.add_term(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
        return r;
    }
    friend ExpFourierExpr operator-(const ExpFourierExpr& a, const ExpFourierExpr& b) {
        ExpFourierExpr r = a;
        for (auto& [k, c] : b.t) r.add_term(std::get<0>(k), std::get<1>(k), std::get<2>(k), GaussRat(Rat(-1)) * c);
        return r;
    }
    friend ExpFourierExpr operator*(const PiPoly& c, const ExpFourierExpr& a) {
        ExpFourierExpr r;
        for (auto& [k, d] : a.t) r.add_term(std::get<0>(k), std::get<1>(k), std::get<2>(k), c * d);
        return r;
    }
    friend ExpFourierExpr operator*(const GaussRat& g, const ExpFourierExpr& a) { return PiPoly(g) * a; }
    friend bool operator==(const ExpFourierExpr& a, const ExpFourierExpr& b) { return a.t == b.t; }

    ExpFourierExpr mul_v_pow(long p) const {
        ExpFourierExpr r;
        for (auto& [k, c] : t) r.add_term(std::get<0>(k) + p, std::get<1>(k), std::get<2>(k), c);
        return r;
    }

    ExpFourierExpr conj() const {
        ExpFourierExpr r;
        for (auto& [k, c] : t) r.add_term(std::get<0>(k), std::get<1>(k), -std::get<2>(k), c.conj());
        return r;
    }

    // d/dtau (C v^j e^{q pi v} e(mu)) = [ i pi (m - q/2) C ] v^j ... - (i j / 2) C v^{j-1} ...
    ExpFourierExpr dtau() const {
        ExpFourierExpr r;
        for (auto& [k, c] : t) {
            auto [j, q, m] = k;
            Rat lin = Rat(m) - q / 2;
            if (lin != 0) r.add_term(j, q, m, PiPoly::pi_times(lin) * (GaussRat::i() * c));
            if (j != 0) r.add_term(j - 1, q, m, GaussRat(Rat(0), Rat(-j) / 2) * c);
        }
        return r;
    }

    // R_kappa = 2i dtau + kappa/v:  coeff picks up (q - 2m) pi on v^j and (j+kappa) on v^{j-1}
    ExpFourierExpr raise(long kappa) const {
        ExpFourierExpr r;
        for (auto& [k, c] : t) {
            auto [j, q, m] = k;
            Rat lin = q - Rat(2 * m);
            if (lin != 0) r.add_term(j, q, m, PiPoly::pi_times(lin) * c);
            if (j + kappa != 0) r.add_term(j - 1, q, m, GaussRat(Rat(j + kappa)) * c);
        }
        return r;
    }

    Cplx eval(Cplx tau) const {
        double u = tau.real(), v = tau.imag();
        Cplx acc = 0;
        for (auto& [k, c] : t) {
            auto [j, q, m] = k;
            Cplx phase = std::exp(Cplx(0, 2 * M_PI * double(m) * u));
            acc += c.embed() * std::pow(v, double(j)) * std::exp(to_double(q) * M_PI * v) * phase;
        }
        return acc;
    }
};

// --------------------------------------------- iterated raising, both paths

// R_{2-2k}^{steps} applied termwise, kappa = 2-2k, 4-2k, ...
template <class Expr>
Expr raise_iterated_symbolic(Expr e, int k, int steps) {
    long kappa = 2 - 2 * k;
    for (int s = 0; s < steps; ++s, kappa += 2) e = e.raise(kappa);
    return e;
}

// closed-sum form: R_{2-2k}^{k-1} f = (-v)^{1-k} (k-1)! sum_j (-2iv)^j / j! C(2k-2-j, k-1) dtau^j f
template <class Expr>
Expr raise_closed_sum(const Expr& e, int k) {
    Expr acc;
    Expr der = e;
    Rat sign = (k % 2 == 1) ? Rat(1) : Rat(-1);  // (-1)^{1-k}
    for (int j = 0; j <= k - 1; ++j) {
        // (-2i)^j i^j... (-2i)^j = (-2)^j i^j
        GaussRat c = GaussRat(Rat(factorial(k - 1) * binomial(2 * k - 2 - j, k - 1), factorial(j)) * rat_pow(Rat(-2), j)) *
                     GaussRat::i_pow(j);
        acc = acc + (c * der).mul_v_pow(j + 1 - k);
        if (j < k - 1) der = der.dtau();
    }
    Expr r;
    r = GaussRat(sign) * acc;
    return r;
}

// Closed form for R_{2-2k}^{k-1} tau^l at an exact point (0 <= l <= 2k-1):
// the double sum over (j, alpha) with the purely imaginary delta_{l=2k-1} term.
inline ExactNumber raise_monomial_closed_form(int k, int l, const ExactPoint& pt) {
    if (k < 1) throw std::invalid_argument("raise_monomial_closed_form: k >= 1");
    if (l < 0 || l > 2 * k - 1) throw std::invalid_argument("raise_monomial_closed_form: need 0 <= l <= 2k-1");
    Rat u = pt.u, v2 = pt.v_squared();
    Rat dsum(0), usum;
    // sum_j C(l,j) (2k-2-j)!/(k-1-j)! (-2)^j sum_{alpha <= l-j, l-alpha even} C(l-j,alpha) u^alpha (iv)^{l-alpha}
    for (int j = 0; j <= std::min(k - 1, l); ++j) {
        Rat cj = Rat(binomial(l, j) * factorial(2 * k - 2 - j), factorial(k - 1 - j)) * rat_pow(Rat(-2), j);
        Rat inner(0);
        for (int alpha = (l % 2 == 0) ? 0 : 1; alpha <= l - j; alpha += 2) {
            int p = (l - alpha) / 2;  // (iv)^{l-alpha} = (-1)^p v^{2p}
            Rat term = Rat(binomial(l - j, alpha)) * rat_pow(u, alpha) * rat_pow(v2, p);
            inner += (p % 2 == 0) ? term : -term;
        }
        dsum += cj * inner;
    }
    ExactNumber v = pt.v();
    ExactNumber pref = v.pow(1 - k);
    if (k % 2 == 0) pref = -pref;  // (-v)^{1-k}
    ExactNumber res = Rat(dsum) * pref;
    if (l == 2 * k - 1) {
        Rat c = rat_pow(Rat(2), 2 * k - 2) * Rat(factorial(k - 1));
        if (k % 2 == 0) c = -c;  // (-1)^{k-1}
        res += ExactNumber::i_times(Rat(c) * v.pow(k));
    }
    return res;
}

// R_{2-2k}^{k-1} B_m(tau) at an exact point, assembled from the monomial raise
inline ExactNumber raise_bernoulli_closed_form(int k, unsigned m, const ExactPoint& pt) {
    auto coeffs = bernoulli_polynomial_coeffs(m);
    ExactNumber acc(Rat(0), pt.D);
    for (size_t l = 0; l < coeffs.size(); ++l)
        if (coeffs[l] != 0) acc += coeffs[l] * raise_monomial_closed_form(k, static_cast<int>(l), pt);
    return acc;
}

}  // namespace lhmf

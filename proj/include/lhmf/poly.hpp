#pragma once

// Laurent polynomials over the Gaussian rationals, with the weight-w slash
// actions used throughout.  Period polynomials are honest polynomials of
// degree <= 2k-2; the Eisenstein period function needs the degrees 2k-1 and
// -1 as well, which is why negative exponents are allowed internally.

#include <lhmf/bernoulli.hpp>

#include <map>

namespace lhmf {

struct GaussPoly {
    // degree -> coefficient, zero coefficients pruned
    std::map<long, GaussRat> c;

    GaussPoly() = default;

    static GaussPoly monomial(const GaussRat& a, long deg) {
        GaussPoly p;
        if (!a.is_zero()) p.c[deg] = a;
        return p;
    }
    static GaussPoly constant(const GaussRat& a) { return monomial(a, 0); }
    static GaussPoly from_coeffs(const std::vector<Rat>& coeffs) {
        GaussPoly p;
        for (size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != 0) p.c[static_cast<long>(j)] = GaussRat(coeffs[j]);
        return p;
    }

    bool is_zero() const { return c.empty(); }
    bool is_polynomial() const { return c.empty() || c.begin()->first >= 0; }
    long degree() const { return c.empty() ? -1 : c.rbegin()->first; }
    long low_degree() const { return c.empty() ? 0 : c.begin()->first; }

    GaussRat coeff(long deg) const {
        auto it = c.find(deg);
        return it == c.end() ? GaussRat() : it->second;
    }

    void add_term(long deg, const GaussRat& a) {
        if (a.is_zero()) return;
        auto [it, fresh] = c.try_emplace(deg, a);
        if (!fresh) {
            it->second += a;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    friend GaussPoly operator+(const GaussPoly& p, const GaussPoly& q) {
        GaussPoly r = p;
        for (auto& [d, a] : q.c) r.add_term(d, a);
        return r;
    }
    friend GaussPoly operator-(const GaussPoly& p, const GaussPoly& q) {
        GaussPoly r = p;
        for (auto& [d, a] : q.c) r.add_term(d, -a);
        return r;
    }
    friend GaussPoly operator*(const GaussRat& a, const GaussPoly& p) {
        GaussPoly r;
        if (a.is_zero()) return r;
        for (auto& [d, b] : p.c) r.c[d] = a * b;
        return r;
    }
    friend GaussPoly operator*(const GaussPoly& p, const GaussPoly& q) {
        GaussPoly r;
        for (auto& [d1, a1] : p.c)
            for (auto& [d2, a2] : q.c) r.add_term(d1 + d2, a1 * a2);
        return r;
    }
    friend bool operator==(const GaussPoly& p, const GaussPoly& q) { return p.c == q.c; }

    template <class V>
    V eval(const V& x) const;

    std::string str() const {
        if (c.empty()) return "0";
        std::string s;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")";
            if (it->first != 0) s += "*t^" + std::to_string(it->first);
        }
        return s;
    }
};

template <>
inline Cplx GaussPoly::eval<Cplx>(const Cplx& x) const {
    Cplx acc = 0;
    for (auto& [d, a] : c) acc += a.embed() * std::pow(x, static_cast<double>(d));
    return acc;
}

template <>
inline ExactNumber GaussPoly::eval<ExactNumber>(const ExactNumber& x) const {
    ExactNumber acc(Rat(0), x.D);
    for (auto& [d, a] : c) acc += a * x.pow(d);
    return acc;
}

template <>
inline GaussRat GaussPoly::eval<GaussRat>(const GaussRat& x) const {
    GaussRat acc;
    for (auto& [d, a] : c) {
        if (d >= 0)
            acc += a * gpow(x, static_cast<unsigned>(d));
        else
            acc += a / gpow(x, static_cast<unsigned>(-d));
    }
    return acc;
}

// p |_{2-2k} S  =  tau^{2k-2} p(-1/tau); Laurent-safe
inline GaussPoly slash_S(const GaussPoly& p, int k) {
    GaussPoly r;
    for (auto& [d, a] : p.c) {
        GaussRat sign = (d % 2 == 0) ? GaussRat(Rat(1)) : GaussRat(Rat(-1));
        r.add_term(2 * k - 2 - d, sign * a);
    }
    return r;
}

// p |_{2-2k} T^m = p(tau + m); polynomials only
inline GaussPoly slash_Tpow(const GaussPoly& p, long m) {
    if (!p.is_polynomial()) throw std::invalid_argument("slash_Tpow: non-polynomial input");
    GaussPoly r;
    for (auto& [d, a] : p.c)
        for (long j = 0; j <= d; ++j) r.add_term(j, GaussRat(Rat(binomial(d, j)) * rat_pow(Rat(m), d - j)) * a);
    return r;
}

struct Mat2;  // fwd

// p |_{2-2k} M = (c tau + d)^{2k-2} p(M tau) as an exact polynomial.
// Defined for deg p <= 2k-2 (the result fails to be polynomial otherwise).
template <class M2>
GaussPoly slash_matrix(const GaussPoly& p, int k, const M2& m) {
    const long w = 2 * k - 2;
    if (p.degree() > w || !p.is_polynomial())
        throw std::invalid_argument("slash_matrix: degree must be within [0, 2k-2]");
    GaussPoly num1;  // a*tau + b
    num1.add_term(1, GaussRat(Rat(m.a)));
    num1.add_term(0, GaussRat(Rat(m.b)));
    GaussPoly num2;  // c*tau + d
    num2.add_term(1, GaussRat(Rat(m.c)));
    num2.add_term(0, GaussRat(Rat(m.d)));
    // precompute powers
    std::vector<GaussPoly> p1(w + 1), p2(w + 1);
    p1[0] = GaussPoly::constant(GaussRat(Rat(1)));
    p2[0] = p1[0];
    for (long j = 1; j <= w; ++j) {
        p1[j] = p1[j - 1] * num1;
        p2[j] = p2[j - 1] * num2;
    }
    GaussPoly r;
    for (auto& [d, a] : p.c) r = r + a * (p1[d] * p2[w - d]);
    return r;
}

}  // namespace lhmf

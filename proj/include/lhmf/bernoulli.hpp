#pragma once

// Bernoulli numbers B_m (convention B_1 = -1/2, the one generated by
// t*e^{xt}/(e^t-1) at x=0 with B_1(x) = x - 1/2) and Bernoulli polynomials.

#include <lhmf/exact.hpp>

#include <mutex>

namespace lhmf {

inline const Rat& bernoulli_number(unsigned m) {
    static std::vector<Rat> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) cache.push_back(Rat(1));
    // sum_{j=0}^{m} C(m+1,j) B_j = 0 for m >= 1
    while (cache.size() <= m) {
        unsigned n = static_cast<unsigned>(cache.size());
        Rat acc(0);
        for (unsigned j = 0; j < n; ++j) acc += Rat(binomial(n + 1, j)) * cache[j];
        cache.push_back(-acc / Rat(binomial(n + 1, n)));
    }
    return cache[m];
}

// coefficients of B_m(x) = sum_l C(m,l) B_{m-l} x^l, index = degree
inline std::vector<Rat> bernoulli_polynomial_coeffs(unsigned m) {
    std::vector<Rat> c(m + 1);
    for (unsigned l = 0; l <= m; ++l) c[l] = Rat(binomial(m, l)) * bernoulli_number(m - l);
    return c;
}

template <class Value, class Point>
Value eval_poly_coeffs(const std::vector<Rat>& c, const Point& x, Value one) {
    Value acc = Rat(0) * one;
    for (size_t j = c.size(); j-- > 0;) acc = acc * x + c[j] * one;
    return acc;
}

inline Cplx bernoulli_polynomial_at(unsigned m, Cplx x) {
    auto c = bernoulli_polynomial_coeffs(m);
    Cplx acc = 0;
    for (size_t j = c.size(); j-- > 0;) acc = acc * x + to_double(c[j]);
    return acc;
}

inline ExactNumber bernoulli_polynomial_at(unsigned m, const ExactNumber& x) {
    auto c = bernoulli_polynomial_coeffs(m);
    ExactNumber acc(Rat(0), x.D);
    for (size_t j = c.size(); j-- > 0;) acc = acc * x + ExactNumber(c[j], x.D);
    return acc;
}

// Periodized Bernoulli polynomial BB_m(tau) = B_m(tau - floor(u)); at integer
// real part it takes the average of the two one-sided limits.
inline ExactNumber periodized_bernoulli(unsigned m, const ExactPoint& pt) {
    if (m == 0) throw std::domain_error("periodized_bernoulli: m >= 1");
    ExactNumber tau = pt.tau();
    Int fl = rat_floor(pt.u);
    ExactNumber shifted = tau - ExactNumber(Rat(fl), pt.D);
    if (is_integer(pt.u)) {
        // u integral: average of B_m(tau - u) and B_m(tau - u + 1)
        ExactNumber a = bernoulli_polynomial_at(m, shifted);
        ExactNumber b = bernoulli_polynomial_at(m, shifted + ExactNumber(Rat(1), pt.D));
        return Rat(1, 2) * (a + b);
    }
    return bernoulli_polynomial_at(m, shifted);
}

inline Cplx periodized_bernoulli(unsigned m, Cplx tau) {
    if (m == 0) throw std::domain_error("periodized_bernoulli: m >= 1");
    double fl = std::floor(tau.real());
    if (tau.real() == fl) {
        return 0.5 * (bernoulli_polynomial_at(m, tau - fl) + bernoulli_polynomial_at(m, tau - fl + 1.0));
    }
    return bernoulli_polynomial_at(m, tau - fl);
}

}  // namespace lhmf

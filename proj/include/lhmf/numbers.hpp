#pragma once

// Arbitrary-precision integers/rationals and small number-theoretic helpers.
// All exact results of the engine are carried on these types.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhmf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Cplx = std::complex<double>;

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }
inline double to_double(const Int& n) { return n.template convert_to<double>(); }

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor(p/q) for arbitrary sign
inline Int rat_floor(const Rat& q) {
    Int n = num(q), d = den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// q^e, e may be negative (q != 0 then)
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (q == 0) throw std::domain_error("rat_pow: 0^negative");
        return Rat(1) / rat_pow(q, -e);
    }
    Rat r = 1, b = q;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) r *= b;
        b *= b;
        u >>= 1;
    }
    return r;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0) return 0;
    if (n >= 0 && k > n) return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// n = s^2 * d with d squarefree (n > 0). Trial division; inputs stay small here.
inline void squarefree_decompose(const Int& n, Int& s, Int& d) {
    if (n <= 0) throw std::domain_error("squarefree_decompose needs n > 0");
    s = 1;
    d = 1;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            for (int i = 0; i < e / 2; ++i) s *= p;
            if (e & 1) d *= p;
        }
    }
    d *= m;
}

inline std::string rat_str(const Rat& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(n) / Rat(d);
}

// Gaussian rational a + b*i
struct GaussRat {
    Rat re{0}, im{0};

    GaussRat() = default;
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long n) : re(n) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
    // i^e for any integer e
    static GaussRat i_pow(long e) {
        long m = ((e % 4) + 4) % 4;
        switch (m) {
            case 0: return GaussRat(Rat(1));
            case 1: return GaussRat(Rat(0), Rat(1));
            case 2: return GaussRat(Rat(-1));
            default: return GaussRat(Rat(0), Rat(-1));
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator*(const Rat& c, const GaussRat& a) { return {c * a.re, c * a.im}; }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussRat division by zero");
        GaussRat p = a * b.conj();
        return {p.re / n, p.im / n};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    Cplx embed() const { return {to_double(re), to_double(im)}; }

    std::string str() const {
        if (im == 0) return rat_str(re);
        std::string s = rat_str(re) + (im > 0 ? "+" : "-") + rat_str(boost::multiprecision::abs(im)) + "i";
        return s;
    }
};

inline GaussRat gpow(GaussRat b, unsigned e) {
    GaussRat r(Rat(1));
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// exact rational from a double (every finite double is rational)
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rat_from_double: non-finite");
    if (x == 0.0) return Rat(0);
    int exp;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [1/2,1)
    Int mantissa = Int(static_cast<long long>(std::ldexp(m, 53)));
    exp -= 53;
    Rat r(mantissa);
    if (exp > 0)
        r *= rat_pow(Rat(2), exp);
    else
        r /= rat_pow(Rat(2), -exp);
    return r;
}

}  // namespace lhmf

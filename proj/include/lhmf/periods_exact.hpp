#pragma once

// The exact period pipeline:
//   - periods of E_{2k} (rational for odd interior n, +-Z_k for the outer
//     ones, where Z_k = pi zeta(2k-1) / ((2k-1) zeta(2k)) is carried
//     symbolically),
//   - the Kohnen-Zagier period polynomials of the cusp forms R_n,
//   - the locally polynomial part P_{1-k,n}(tau) in both representations,
//   - its iterated raise at CM points,
//   - exact periods r_n(f_{k,P}) and rational kernel combinations.

#include <lhmf/config.hpp>
#include <lhmf/exceptional.hpp>
#include <lhmf/periods_numeric.hpp>
#include <lhmf/symalg.hpp>

namespace lhmf {

// value + coefficient of the symbol Z_k = pi zeta(2k-1)/((2k-1) zeta(2k))
struct EisenSym {
    ExactNumber val;
    ExactNumber zc;
    int k = 2;

    static EisenSym zero(int k, const Int& D) { return {ExactNumber(Rat(0), D), ExactNumber(Rat(0), D), k}; }

    friend EisenSym operator+(const EisenSym& a, const EisenSym& b) {
        if (a.k != b.k) throw std::logic_error("EisenSym: mixed weights");
        return {a.val + b.val, a.zc + b.zc, a.k};
    }
    friend EisenSym operator-(const EisenSym& a, const EisenSym& b) {
        if (a.k != b.k) throw std::logic_error("EisenSym: mixed weights");
        return {a.val - b.val, a.zc - b.zc, a.k};
    }
    friend EisenSym operator*(const ExactNumber& c, const EisenSym& a) { return {c * a.val, c * a.zc, a.k}; }
    friend EisenSym operator*(const GaussRat& c, const EisenSym& a) { return {c * a.val, c * a.zc, a.k}; }
    friend bool operator==(const EisenSym& a, const EisenSym& b) { return a.k == b.k && a.val == b.val && a.zc == b.zc; }

    static double z_value(int k) { return M_PI * std::riemann_zeta(2.0 * k - 1) / ((2 * k - 1) * std::riemann_zeta(2.0 * k)); }
    Cplx embed() const { return val.embed() + zc.embed() * z_value(k); }
};

// r_n(E_{2k}); outer periods are -Z_k and (-1)^{k-1} Z_k
inline EisenSym eisenstein_period_exact(int k, int n, const Int& D = 1) {
    if (k < 2 || n < 0 || n > 2 * k - 2) throw std::invalid_argument("eisenstein_period_exact: 0 <= n <= 2k-2, k >= 2");
    EisenSym out = EisenSym::zero(k, D);
    if (n == 0) {
        out.zc = ExactNumber(Rat(-1), D);
    } else if (n == 2 * k - 2) {
        out.zc = ExactNumber(Rat(k % 2 ? 1 : -1), D);  // (-1)^{k-1}
    } else if (n % 2 == 1) {
        Rat v = Rat(2 * k) * bernoulli_number(n + 1) * bernoulli_number(2 * k - 1 - n) /
                (bernoulli_number(2 * k) * Rat(n + 1) * Rat(2 * k - 1 - n));
        if (((n - 1) / 2) % 2 == 1) v = -v;  // (-1)^{(n-1)/2}
        out.val = ExactNumber(v, D);
    }
    return out;
}

// ---- Kohnen-Zagier period polynomials of R_n -------------------------------

// r^-_{E_{2k}} as a Laurent polynomial (degrees -1 .. 2k-1), rational coefficients
inline GaussPoly eisen_odd_period_polynomial(int k) {
    GaussPoly p;
    Rat pref = Rat(2 * k) * Rat(factorial(2 * k - 2)) / bernoulli_number(2 * k);
    for (int n = -1; n <= 2 * k - 1; n += 2) {
        Rat c = pref * bernoulli_number(n + 1) * bernoulli_number(2 * k - 1 - n) /
                Rat(factorial(n + 1) * factorial(2 * k - 1 - n));
        p.add_term(2 * k - 2 - n, GaussRat(c));
    }
    return p;
}

// the parity part of the period polynomial of R_n given by the classical
// formula: even n -> odd polynomial r^-_{R_n}; odd n -> even polynomial r^+_{R_n}
inline GaussPoly kz_period_polynomial(int k, int n) {
    if (k < 2 || n < 0 || n > 2 * k - 2) throw std::invalid_argument("kz_period_polynomial: 0 <= n <= 2k-2");
    if (n % 2 == 1 && (n == 0 || n == 2 * k - 2))
        throw std::invalid_argument("kz_period_polynomial: outer n must be even");
    GaussPoly Bn = GaussPoly::from_coeffs(bernoulli_polynomial_coeffs(n + 1));
    GaussPoly Bm = GaussPoly::from_coeffs(bernoulli_polynomial_coeffs(2 * k - 1 - n));
    GaussRat inv_n1(Rat(1, n + 1)), inv_m1(Rat(1, 2 * k - 1 - n));
    GaussRat in1 = GaussRat::i_pow(n + 1);
    GaussPoly rhs;
    if (n % 2 == 0) {
        // i^{n+1} (B_{n+1}/(n+1) - B_{2k-1-n}/(2k-1-n)) |(I-S) + i^{n+1} (tau^n - tau^{2k-2-n})
        //   + i (delta_{n=0} + (-1)^k delta_{n=2k-2}) r^-_E
        GaussPoly comb = inv_n1 * Bn - inv_m1 * Bm;
        rhs = in1 * (comb - slash_S(comb, k));
        rhs = rhs + in1 * (GaussPoly::monomial(GaussRat(Rat(1)), n) - GaussPoly::monomial(GaussRat(Rat(1)), 2 * k - 2 - n));
        Rat delta(0);
        if (n == 0) delta += 1;
        if (n == 2 * k - 2) delta += (k % 2 ? -1 : 1);
        if (delta != 0) rhs = rhs + (GaussRat(Rat(0), delta) * eisen_odd_period_polynomial(k));
        // r^- = 2^{2k-2} (-1)^k i * rhs
        GaussRat scale = GaussRat(Rat(0), rat_pow(Rat(2), 2 * k - 2) * Rat(k % 2 ? -1 : 1));
        GaussPoly out = scale * rhs;
        if (!out.is_polynomial() || out.degree() > 2 * k - 2)
            throw std::logic_error("kz_period_polynomial: odd part failed to collapse to a polynomial");
        for (auto& [deg, c] : out.c)
            if (c.im != 0) throw std::logic_error("kz_period_polynomial: non-real coefficient");
        return out;
    }
    // odd n: -i^{n+1}(B_{n+1}/(n+1) + B_{2k-1-n}/(2k-1-n))|(I-S) - i^{n+1}(tau^n + tau^{2k-2-n})
    //   + r_n(E_{2k}) (tau^{2k-2} - 1)
    GaussPoly comb = inv_n1 * Bn + inv_m1 * Bm;
    rhs = GaussRat(Rat(-1)) * (in1 * (comb - slash_S(comb, k)));
    rhs = rhs - in1 * (GaussPoly::monomial(GaussRat(Rat(1)), n) + GaussPoly::monomial(GaussRat(Rat(1)), 2 * k - 2 - n));
    EisenSym rn = eisenstein_period_exact(k, n);
    rhs = rhs + GaussRat(rn.val.w) * (GaussPoly::monomial(GaussRat(Rat(1)), 2 * k - 2) - GaussPoly::constant(GaussRat(Rat(1))));
    GaussRat scale(rat_pow(Rat(2), 2 * k - 2) * Rat(k % 2 ? 1 : -1));  // 2^{2k-2} (-1)^{k-1}
    GaussPoly out = scale * rhs;
    if (!out.is_polynomial() || out.degree() > 2 * k - 2)
        throw std::logic_error("kz_period_polynomial: even part failed to collapse to a polynomial");
    for (auto& [deg, c] : out.c)
        if (c.im != 0) throw std::logic_error("kz_period_polynomial: non-real coefficient");
    return out;
}

// decode periods from a parity part: r_f(tau) = sum_m i^{1-m} C(2k-2,m) r_m tau^{2k-2-m};
// the odd polynomial encodes odd m, the even polynomial (already times -i) even m
inline std::map<int, Rat> kz_extract_periods(const GaussPoly& part, int k, bool odd_m) {
    std::map<int, Rat> out;
    for (int m = odd_m ? 1 : 0; m <= 2 * k - 2; m += 2) {
        GaussRat c = part.coeff(2 * k - 2 - m);
        Rat sign = ((odd_m ? (m - 1) / 2 : m / 2) % 2 == 0) ? Rat(1) : Rat(-1);  // i^{m-1} resp. i^{-m}
        out[m] = sign * c.re / Rat(binomial(2 * k - 2, m));
    }
    return out;
}

// ---- the locally polynomial part -------------------------------------------

enum class LocalRep { theorem, lemma };

// P_{1-k,n}(tau), exactly, in either representation; on E_1 the theorem
// representation returns the two-sided average (periodized Bernoulli average
// + half-weight for the boundary matrices), the lemma representation gets the
// same via sgn(0) = 0.
inline EisenSym local_polynomial(int k, int n, const ExactPoint& pt, LocalRep rep) {
    if (k < 2 || n < 0 || n > 2 * k - 2) throw std::invalid_argument("local_polynomial: 0 <= n <= 2k-2");
    const Int& D = pt.D;
    ExactNumber tau = pt.tau();
    EisenSym acc = eisenstein_period_exact(k, n, D);
    GaussRat c_in1 = GaussRat::i_pow(n + 1);                                // i^{n+1}
    GaussRat c_min1 = GaussRat::i_pow(n + 1) * GaussRat(Rat(n % 2 ? 1 : -1));  // (-i)^{n+1}

    if (rep == LocalRep::theorem) {
        acc.val += Rat(1, n + 1) * (c_min1 * periodized_bernoulli(n + 1, pt));
        acc.val += Rat(1, 2 * k - 1 - n) * (c_in1 * periodized_bernoulli(2 * k - 1 - n, pt));
        // (i^{1-n}/2) sum_{ac>0, Re(M tau)<0} (tau^n - (-1)^n tau^{2k-2-n}) |_{2-2k} M,
        // PSL reps x2; boundary matrices enter with half weight (average rule)
        GaussPoly p = GaussPoly::monomial(GaussRat(Rat(1)), n) -
                      GaussPoly::monomial(GaussRat(Rat(n % 2 ? -1 : 1)), 2 * k - 2 - n);
        GaussRat pre = GaussRat::i_pow(1 - n) * GaussRat(Rat(1, 2));
        ExactNumber msum(Rat(0), D);
        for (const auto& m : enumerate_exceptional_matrices(pt, ExcMode::strict_interior))
            msum += slash_matrix(p, k, m).eval(tau);
        for (const auto& m : enumerate_exceptional_matrices(pt, ExcMode::boundary))
            if (m.a * m.c > 0) msum += Rat(1, 2) * slash_matrix(p, k, m).eval(tau);
        acc.val += Rat(2) * (pre * msum);  // x2 for +-M
        return acc;
    }

    // lemma representation
    acc.val += Rat(1, n + 1) * (c_min1 * bernoulli_polynomial_at(n + 1, tau));
    acc.val += Rat(1, 2 * k - 1 - n) * (c_in1 * bernoulli_polynomial_at(2 * k - 1 - n, tau));
    ExactNumber mono = tau.pow(n) - Rat(n % 2 ? -1 : 1) * tau.pow(2 * k - 2 - n);
    acc.val += Rat(1, 2) * (c_min1 * mono);

    // (i^{1-n}/4) sum_{M} ((sgn(u) - sgn(M)) tau^n)|_{2-2k} M over PSL reps x2
    GaussPoly pn = GaussPoly::monomial(GaussRat(Rat(1)), n);
    ExactNumber gsum(Rat(0), D);
    auto add_contrib = [&](const Mat2& m, int sgn_re) {
        int delta = sgn_re - m.sgn();
        if (delta == 0) return;
        gsum += Rat(delta) * slash_matrix(pn, k, m).eval(tau);
    };
    // ac != 0 matrices with sgn(Re(M tau)) != sgn(ac): the interior list, its
    // boundary, and their images under S (which flip both signs)
    auto interior = enumerate_exceptional_matrices(pt, ExcMode::strict_interior);
    for (const auto& m : interior) {
        add_contrib(m, -1);
        add_contrib(Mat2::S() * m, +1);
    }
    for (const auto& m : enumerate_exceptional_matrices(pt, ExcMode::boundary)) {
        if (m.a * m.c == 0) continue;  // the ac = 0 part is handled below
        Mat2 mm = m.a * m.c > 0 ? m : Mat2::S().inverse() * m;  // normalize to the ac > 0 member of the S-pair
        add_contrib(mm, 0);
        add_contrib(Mat2::S() * mm, 0);
    }
    // ac = 0 families: T-type (1, m; 0, 1) with sgn(M) = sgn(m), and
    // S-conjugates (0,-1; 1, m) with sgn(M) = -sgn(m)
    {
        Int lo = rat_floor(pt.u);
        Int from = boost::multiprecision::min(Int(-lo), Int(0)) - 2;
        Int to = boost::multiprecision::max(Int(-lo), Int(0)) + 2;
        for (Int mm = from; mm <= to; ++mm) {
            Rat upm = pt.u + Rat(mm);
            int sgn_u = upm > 0 ? 1 : (upm < 0 ? -1 : 0);
            int sgn_m = mm > 0 ? 1 : (mm < 0 ? -1 : 0);
            int delta = sgn_u - sgn_m;
            if (delta == 0) continue;
            long long ml = mm.template convert_to<long long>();
            gsum += Rat(delta) * slash_matrix(pn, k, Mat2{1, ml, 0, 1}).eval(tau);
            gsum += Rat(-delta) * slash_matrix(pn, k, Mat2{0, -1, 1, ml}).eval(tau);
        }
    }
    acc.val += Rat(2) * Rat(1, 4) * (GaussRat::i_pow(1 - n) * gsum);
    return acc;
}

// numeric evaluation at a double point: lift to exact rational coordinates
inline Cplx local_polynomial_numeric(int k, int n, Cplx tau, LocalRep rep = LocalRep::theorem) {
    return local_polynomial(k, n, lift_point(tau), rep).embed();
}

// P |_{2-2k}(I-S) at an exact point (for the cocycle identities)
inline EisenSym local_polynomial_slash_IS(int k, int n, const ExactPoint& pt, LocalRep rep = LocalRep::theorem) {
    EisenSym at_tau = local_polynomial(k, n, pt, rep);
    // S tau = -1/tau: u' = -u/|tau|^2, v' = v/|tau|^2
    Rat a2 = pt.abs2();
    ExactPoint spt(-pt.u / a2, pt.s / a2, pt.D);
    EisenSym at_s = local_polynomial(k, n, spt, rep);
    ExactNumber factor = pt.tau().pow(2 * k - 2);
    return at_tau - factor * at_s;
}

// ---- raised local polynomial ------------------------------------------------

// R_{2-2k}^{k-1} P_{1-k,n}(tau) at an exact point off E_1 with 0 < u < 1
inline EisenSym raised_local_polynomial_at(int k, int n, const ExactPoint& pt) {
    if (is_on_exceptional_set(pt))
        throw std::domain_error("raised_local_polynomial: tau lies on the exceptional set E_1 (principal-value regime excluded)");
    if (!(pt.u > 0 && pt.u < 1)) throw std::invalid_argument("raised_local_polynomial: need 0 < Re tau < 1");
    const Int& D = pt.D;
    EisenSym acc = EisenSym::zero(k, D);
    // (-v)^{1-k} (2k-2)!/(k-1)! r_n(E_{2k})
    ExactNumber pref = pt.v().pow(1 - k);
    if (k % 2 == 0) pref = -pref;
    EisenSym rn = eisenstein_period_exact(k, n, D);
    acc = acc + (Rat(factorial(2 * k - 2), factorial(k - 1)) * pref) * rn;
    // Bernoulli terms
    GaussRat c_in1 = GaussRat::i_pow(n + 1);
    GaussRat c_min1 = c_in1 * GaussRat(Rat(n % 2 ? 1 : -1));
    acc.val += Rat(1, n + 1) * (c_min1 * raise_bernoulli_closed_form(k, n + 1, pt));
    acc.val += Rat(1, 2 * k - 1 - n) * (c_in1 * raise_bernoulli_closed_form(k, 2 * k - 1 - n, pt));
    // (i^{1-n}/2) sum_{ac>0, Re(M tau) <= 0} (R^{k-1} tau^n - (-1)^n R^{k-1} tau^{2k-2-n}) |_0 M
    ExactNumber msum(Rat(0), D);
    for (const auto& m : enumerate_exceptional_matrices(pt, ExcMode::strict_interior)) {
        ExactPoint mpt = mobius(m, pt);
        ExactNumber t1 = raise_monomial_closed_form(k, n, mpt);
        ExactNumber t2 = raise_monomial_closed_form(k, 2 * k - 2 - n, mpt);
        msum += t1 - Rat(n % 2 ? -1 : 1) * t2;
    }
    acc.val += Rat(2) * Rat(1, 2) * (GaussRat::i_pow(1 - n) * msum);  // x2 for +-M
    return acc;
}

// canonical strip representative: reduce the form, then shift the CM point
// into 0 < u < 1 by a T-power (periods are class invariants)
inline ExactPoint canonical_cm_point(const QuadForm& P) {
    QuadForm red = class_of(P);
    ExactPoint pt = cm_point(red);
    Int shift = rat_floor(pt.u);
    pt.u -= Rat(shift);  // u in [0,1); u = 0 means tau_P in E_1, rejected downstream
    return pt;
}

// |d|^{(k-1)/2} R^{k-1} P(tau_P) lands in Q (odd interior n) or iQ (even
// interior n); checked, and the ExactNumber of the raised value returned
inline ExactNumber raised_local_polynomial(int k, int n, const QuadForm& P) {
    if (n <= 0 || n >= 2 * k - 2)
        throw std::invalid_argument("raised_local_polynomial: interior 0 < n < 2k-2 only (outer periods are numeric)");
    ExactPoint pt = canonical_cm_point(P);
    EisenSym r = raised_local_polynomial_at(k, n, pt);
    if (!r.zc.is_zero()) throw std::logic_error("raised_local_polynomial: unexpected zeta-symbol for interior n");
    // rationality assertion (Lemma-level guarantee)
    ExactNumber rootpow = ExactNumber(Rat(0), Rat(1), Rat(0), Rat(0), Int(-P.disc())).pow(k - 1);
    ExactNumber scaled = rootpow * r.val;
    if (n % 2 == 1 ? !scaled.is_rational() : !scaled.is_i_rational())
        throw std::logic_error("raised_local_polynomial: rationality failed for " + P.str() + " k=" + std::to_string(k) +
                               " n=" + std::to_string(n));
    return r.val;
}

// ---- exact periods ----------------------------------------------------------

inline int dim_cusp_space(int k) {  // dim S_{2k} for level 1, 2k <= 14 plus k=7 -> 0
    switch (k) {
        case 2:
        case 3:
        case 4:
        case 5:
        case 7:
            return 0;
        case 6:
            return 1;
        default:
            return k >= 8 ? 2 : 0;  // >= 1; only "'> 1' unsupported" matters here
    }
}

// r_n(f_{k,P}) by the closed formula: raised local polynomial, plus raised
// nonholomorphic Eichler integrals of R_n when S_{2k} is nontrivial, plus the
// raised Eisenstein Eichler term for the outer periods.  Interior n with
// trivial cusp space is exact in Q cup iQ; everything else carries a numeric
// part and is reported through `numeric` with has_exact = false.
inline PeriodResult exact_period(const QuadForm& P, int k, int n, const Config& cfg = {}) {
    if (k < 2 || n < 0 || n > 2 * k - 2) throw std::invalid_argument("exact_period: 0 <= n <= 2k-2, k >= 2");
    if (dim_cusp_space(k) > 1)
        throw std::domain_error("exact_period: dim S_{2k} > 1 unsupported (k <= 7); kernel combinations only");
    QuadForm red = class_of(P);
    ExactPoint pt = canonical_cm_point(red);
    if (is_on_exceptional_set(pt))
        throw std::domain_error("exact_period: tau_P = " + pt.tau().str() +
                                " lies on E_1; principal-value periods are excluded (d = -4 canonical case)");
    int stab = stabilizer_order(red);
    Int absd(-red.disc());

    PeriodResult out;
    out.k = k;
    out.n = n;
    out.form = red;
    out.config_hash = cfg.hash();

    EisenSym rlp = raised_local_polynomial_at(k, n, pt);
    // scale = |d|^{(k-1)/2}/|Gamma_P|, c1 = (-1)^{k-1}/(2^{k-2}(k-1)!)
    ExactNumber rootpow = ExactNumber(Rat(0), Rat(1), Rat(0), Rat(0), absd).pow(k - 1);
    Rat c1 = Rat(k % 2 ? 1 : -1) / (rat_pow(Rat(2), k - 2) * Rat(factorial(k - 1)));
    ExactNumber scale = Rat(1, stab) * rootpow;
    EisenSym main = (c1 * scale) * rlp;

    bool interior = (n > 0 && n < 2 * k - 2);
    bool cuspfree = dim_cusp_space(k) == 0;
    if (interior && cuspfree) {
        out.has_exact = true;
        out.exact = main.val;
        if (!main.zc.is_zero()) throw std::logic_error("exact_period: stray zeta symbol in interior period");
        if (!(n % 2 ? out.exact.is_rational() : out.exact.is_i_rational()))
            throw std::logic_error("exact_period: parity rationality failed");
        out.numeric = out.exact.embed();
        out.err = std::abs(out.numeric) * 1e-15;
        out.method = "rn-formula,exact";
        return out;
    }

    Cplx value = main.embed();
    double err = std::abs(value) * 1e-13;
    std::string method = "rn-formula";
    if (!cuspfree) {
        // cusp correction (-1)^k/(2^{k-2}(k-1)!) ((-1)^{n+1} conj(X) + X), X = R^{k-1} R_n*(tau_P)
        RnSeries rn = rn_coefficients(k, n, cfg.series_terms, cfg.quad_tol);
        Cplx X = raised_eichler(rn.series, k, pt.embed(), EichlerKind::nonholomorphic, RaiseRoute::relation);
        Cplx corr = (n % 2 ? 1.0 : -1.0) * std::conj(X) + X;  // (-1)^{n+1} conj X + X
        double cc = to_double(-c1);                           // (-1)^k/(2^{k-2}(k-1)!)
        double sc = std::pow(to_double(absd), (k - 1) / 2.0) / stab;
        value += sc * cc * corr;
        err += sc * std::abs(cc) * 2 * std::abs(X) * (rn.coeff_err / std::max(1e-300, std::abs(rn.series.scale)) + 1e-11);
        method += ",cusp";
    }
    if (!interior) {
        // (delta_{n=0} + (-1)^k delta_{n=2k-2}) 2^{k+1}(2k-2)!/((4pi)^{2k-1}(k-1)!) R^{k-1} E_{E_{2k}}(tau_P)
        double dlt = (n == 0 ? 1.0 : 0.0) + (n == 2 * k - 2 ? (k % 2 ? -1.0 : 1.0) : 0.0);
        auto es = eisenstein_coeffs(k, cfg.series_terms);
        Cplx re = raised_eichler(es, k, pt.embed(), EichlerKind::holomorphic);
        double cE = std::pow(2.0, k + 1) * to_double(factorial(2 * k - 2)) /
                    (std::pow(4 * M_PI, 2 * k - 1) * to_double(factorial(k - 1)));
        double sc = std::pow(to_double(absd), (k - 1) / 2.0) / stab;
        value += sc * dlt * cE * re;
        err += sc * std::abs(dlt) * cE * std::abs(re) * 1e-10;
        method += ",eisenstein";
    }
    out.numeric = value;
    out.err = err;
    out.method = method;
    return out;
}

// kernel-combination periods: sum a_n r_n(f_{k,P}) with sum a_n R_n = 0,
// verified exactly through the period polynomials; cusp corrections cancel,
// so the value is a rational (odd parity) or i-rational (even parity) number
// for any k in range.
struct ComboResult {
    ExactNumber value;
    GaussPoly residual;  // zero iff the kernel condition held
    bool kernel_ok = true;
};

inline ComboResult linear_combination_period(const QuadForm& P, int k, const std::map<int, Rat>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("linear_combination_period: empty combination");
    int parity = -1;
    for (auto& [n, a] : coeffs) {
        if (n <= 0 || n >= 2 * k - 2) throw std::invalid_argument("linear_combination_period: interior n only");
        if (parity == -1) parity = n % 2;
        if (n % 2 != parity) throw std::invalid_argument("linear_combination_period: coefficients must share one parity");
    }
    ComboResult out;
    // kernel check: the combination of period polynomials must vanish (the
    // parity map is injective on cusp forms)
    GaussPoly resid;
    for (auto& [n, a] : coeffs) resid = resid + GaussRat(a) * kz_period_polynomial(k, n);
    out.residual = resid;
    out.kernel_ok = resid.is_zero();
    if (!out.kernel_ok) return out;

    QuadForm red = class_of(P);
    ExactPoint pt = canonical_cm_point(red);
    if (is_on_exceptional_set(pt))
        throw std::domain_error("linear_combination_period: tau_P on E_1 (principal-value regime excluded)");
    int stab = stabilizer_order(red);
    ExactNumber rootpow = ExactNumber(Rat(0), Rat(1), Rat(0), Rat(0), Int(-red.disc())).pow(k - 1);
    Rat c1 = Rat(k % 2 ? 1 : -1) / (rat_pow(Rat(2), k - 2) * Rat(factorial(k - 1)));
    ExactNumber acc(Rat(0), pt.D);
    for (auto& [n, a] : coeffs) acc += a * raised_local_polynomial_at(k, n, pt).val;
    out.value = (c1 * Rat(1, stab)) * (rootpow * acc);
    if (!(parity == 1 ? out.value.is_rational() : out.value.is_i_rational()))
        throw std::logic_error("linear_combination_period: parity rationality failed");
    return out;
}

}  // namespace lhmf

#include <catch2/catch_amalgamated.hpp>
#include <lhmf/symalg.hpp>

#include <random>

using namespace lhmf;

// Independent Bernoulli oracle: Akiyama-Tanigawa algorithm (different
// recurrence from the production one).
static Rat bernoulli_akiyama_tanigawa(unsigned n) {
    std::vector<Rat> a(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = Rat(1, m + 1);
        for (unsigned j = m; j >= 1; --j) a[j - 1] = Rat(j) * (a[j - 1] - a[j]);
    }
    Rat b = a[0];  // this yields B_n with B_1 = +1/2
    if (n == 1) b = -b;
    return b;
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == Rat(1));
    CHECK(bernoulli_number(1) == Rat(-1, 2));
    CHECK(bernoulli_number(12) == Rat(-691, 2730));
    for (unsigned m = 0; m <= 20; ++m) CHECK(bernoulli_number(m) == bernoulli_akiyama_tanigawa(m));
    for (unsigned m = 3; m <= 19; m += 2) CHECK(bernoulli_number(m) == 0);
}

TEST_CASE("bernoulli polynomials") {
    auto b1 = bernoulli_polynomial_coeffs(1);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == Rat(-1, 2));
    CHECK(b1[1] == Rat(1));
    auto b2 = bernoulli_polynomial_coeffs(2);
    CHECK(b2[0] == Rat(1, 6));
    CHECK(b2[1] == Rat(-1));
    CHECK(b2[2] == Rat(1));

    // B_m(x+1) - B_m(x) = m x^{m-1} and B_m(1-x) = (-1)^m B_m(x), in Q[x]
    for (unsigned m = 0; m <= 14; ++m) {
        GaussPoly bm = GaussPoly::from_coeffs(bernoulli_polynomial_coeffs(m));
        GaussPoly shifted = slash_Tpow(bm, 1);
        GaussPoly diff = shifted - bm;
        GaussPoly expect = m == 0 ? GaussPoly() : GaussPoly::monomial(GaussRat(Rat(m)), m - 1);
        CHECK(diff == expect);

        // B_m(1-x): substitute via composition with x -> -x then shift by 1
        GaussPoly reflected;
        for (auto& [d, a] : bm.c) reflected.add_term(d, (d % 2 == 0) ? a : -a);  // B_m(-x)
        reflected = slash_Tpow(reflected, -1);  // B_m(-(x-1)) ... careful below
        // B_m(1-x) = B_m(-(x-1)): replace x by x-1 in B_m(-x)
        GaussPoly lhs = reflected;
        GaussPoly rhs = (m % 2 == 0) ? bm : GaussPoly::monomial(GaussRat(Rat(-1)), 0) * bm;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("periodized bernoulli") {
    // B_2(1/2 + 2i) = (1/2+2i)^2 - (1/2+2i) + 1/6 = -49/12 (purely real)
    ExactPoint pt(Rat(1, 2), Rat(2), 1);
    ExactNumber v = periodized_bernoulli(2, pt);
    CHECK(v == ExactNumber(Rat(-49, 12), 1));

    // 1-periodicity with shift +1: BB_2(-1/2 + i sqrt3/2) = B_2(1/2 + i sqrt3/2)
    ExactPoint neg(Rat(-1, 2), Rat(1, 2), 3);
    ExactPoint pos(Rat(1, 2), Rat(1, 2), 3);
    CHECK(periodized_bernoulli(2, neg) == bernoulli_polynomial_at(2, pos.tau()));

    // average rule at integer real part: BB_1(0 + 2i) = (B_1(2i) + B_1(1+2i))/2 = 2i
    ExactPoint axis(Rat(0), Rat(2), 1);
    CHECK(periodized_bernoulli(1, axis) == ExactNumber(Rat(0), Rat(0), Rat(2), Rat(0), 1));

    Cplx numeric = periodized_bernoulli(2, Cplx(0.5, 2.0));
    CHECK(std::abs(numeric - Cplx(-49.0 / 12.0, 0)) < 1e-14);
}

TEST_CASE("exact number arithmetic") {
    // (1 + sqrt3 + i(1/2 - 2 sqrt3)) etc: embedding respects ops
    ExactNumber x(Rat(1), Rat(1), Rat(1, 2), Rat(-2), 3);
    ExactNumber y(Rat(-2, 3), Rat(1, 5), Rat(0), Rat(1), 3);
    Cplx xe = x.embed(), ye = y.embed();
    CHECK(std::abs((x * y).embed() - xe * ye) < 1e-13 * std::abs(xe * ye));
    CHECK(std::abs((x + y).embed() - (xe + ye)) < 1e-13);
    ExactNumber q = x / y;
    CHECK(q * y == x);
    CHECK(std::abs(q.embed() - xe / ye) < 1e-12);

    // non-squarefree radicand folds: sqrt(20) = 2 sqrt(5)
    ExactNumber folded(Rat(0), Rat(1), Rat(0), Rat(0), 20);
    CHECK(folded.D == 5);
    CHECK(folded == ExactNumber(Rat(0), Rat(2), Rat(0), Rat(0), 5));

    // square radicand collapses to Q(i)
    ExactNumber sq(Rat(1), Rat(3), Rat(0), Rat(2), 4);
    CHECK(sq.D == 1);
    CHECK(sq == ExactNumber(Rat(7), Rat(0), Rat(4), Rat(0), 1));

    CHECK_THROWS(ExactNumber::common_disc(ExactNumber(Rat(0), Rat(1), Rat(0), Rat(0), 3),
                                          ExactNumber(Rat(0), Rat(1), Rat(0), Rat(0), 5)));
}

TEST_CASE("slash actions on polynomials") {
    int k = 2;
    // 1 |_{-2} S = tau^2
    GaussPoly one = GaussPoly::constant(GaussRat(Rat(1)));
    CHECK(slash_S(one, k) == GaussPoly::monomial(GaussRat(Rat(1)), 2));
    // tau |_{2-2k} T = tau + 1
    GaussPoly t = GaussPoly::monomial(GaussRat(Rat(1)), 1);
    GaussPoly tp1 = slash_Tpow(t, 1);
    CHECK(tp1.coeff(0) == GaussRat(Rat(1)));
    CHECK(tp1.coeff(1) == GaussRat(Rat(1)));

    // p = tau^n - (-1)^n tau^{2k-2-n} is antisymmetric under S: p|S = -p
    // (direct substitution: tau^j |_{2-2k} S = (-1)^j tau^{2k-2-j})
    for (int kk = 2; kk <= 5; ++kk)
        for (int n = 0; n <= 2 * kk - 2; ++n) {
            GaussPoly p = GaussPoly::monomial(GaussRat(Rat(1)), n);
            Rat sgn = (n % 2 == 0) ? Rat(1) : Rat(-1);
            p = p - GaussPoly::monomial(GaussRat(sgn), 2 * kk - 2 - n);
            GaussPoly ps = slash_S(p, kk);
            GaussPoly expect = GaussPoly::monomial(GaussRat(Rat(-1)), 0) * p;
            CHECK(ps == expect);
        }

    // slash_matrix by S matches slash_S on polynomial input
    GaussPoly p = GaussPoly::monomial(GaussRat(Rat(2), Rat(1)), 1) + GaussPoly::constant(GaussRat(Rat(1, 3)));
    CHECK(slash_matrix(p, 2, Mat2::S()) == slash_S(p, 2));
    GaussPoly toobig = GaussPoly::monomial(GaussRat(Rat(1)), 3);
    CHECK_THROWS_AS(slash_matrix(toobig, 2, Mat2::S()), std::invalid_argument);
}

TEST_CASE("raising operator basics") {
    // R_{-2} v = (1 - 2) v^0 = -1
    MixedExpr v = MixedExpr::monomial(0, 1, GaussRat(Rat(1)));
    MixedExpr rv = v.raise(-2);
    CHECK(rv == MixedExpr::monomial(0, 0, GaussRat(Rat(-1))));

    // identity case: zero steps leaves expressions unchanged
    MixedExpr e = MixedExpr::tau_power(3);
    CHECK(raise_iterated_symbolic(e, 2, 0) == e);

    // R_{-2} tau = -2u/v, checked at the CM point of [1,1,1] shifted into 0<u<1:
    // u = 1/2, v = sqrt(3)/2 gives -2/sqrt(3) = -(2/3) sqrt(3)
    ExactPoint rho(Rat(1, 2), Rat(1, 2), 3);
    ExactNumber r = raise_monomial_closed_form(2, 1, rho);
    CHECK(r == ExactNumber(Rat(0), Rat(-2, 3), Rat(0), Rat(0), 3));

    // single raise of a constant: -2/v at any point
    ExactPoint p2(Rat(1, 3), Rat(2), 1);  // v = 2
    CHECK(raise_monomial_closed_form(2, 0, p2) == ExactNumber(Rat(-1), 1));

    // (k=3, l=5): imaginary part of the delta-correction is 2^4 * 2! = 32 at tau = i
    ExactPoint ii(Rat(0), Rat(1), 1);
    ExactNumber r5 = raise_monomial_closed_form(3, 5, ii);
    CHECK(r5.y == Rat(32));
}

static ExactPoint random_cm_like_point(std::mt19937& rng, Int D) {
    std::uniform_int_distribution<int> numd(-12, 12), dend(1, 9);
    Rat u(numd(rng), dend(rng));
    Rat s;
    do {
        s = Rat(std::abs(numd(rng)) + 1, dend(rng));
    } while (s <= 0);
    return ExactPoint(u, s, D);
}

TEST_CASE("raising closed form vs symbolic iteration (oracle pairing)") {
    std::mt19937 rng(20240811);
    std::vector<Int> discs = {1, 3, 5, 7, 15};
    for (int k = 1; k <= 7; ++k) {
        for (int l = 0; l <= 2 * k - 1; ++l) {
            for (int trial = 0; trial < 20; ++trial) {
                ExactPoint pt = random_cm_like_point(rng, discs[trial % discs.size()]);
                MixedExpr tl = MixedExpr::tau_power(l);
                MixedExpr raised = raise_iterated_symbolic(tl, k, k - 1);
                ExactNumber sym = raised.eval(pt);
                ExactNumber closed = raise_monomial_closed_form(k, l, pt);
                REQUIRE(sym == closed);
            }
        }
    }
}

TEST_CASE("eq-56 closed sum equals termwise iteration") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int k = 1; k <= 7; ++k) {
        // random mixed expressions of degree <= 2k
        MixedExpr e;
        for (int t = 0; t < 6; ++t) {
            int a = std::uniform_int_distribution<int>(0, k)(rng);
            int b = std::uniform_int_distribution<int>(-2, k)(rng);
            e.add_term(a, b, GaussRat(Rat(coef(rng)), Rat(coef(rng))));
        }
        CHECK(raise_closed_sum(e, k) == raise_iterated_symbolic(e, k, k - 1));

        // and on the exp-Fourier algebra
        ExpFourierExpr f = ExpFourierExpr::fourier_mode(2) + ExpFourierExpr::incomplete_gamma_mode(k < 2 ? 2 : k, 1);
        CHECK(raise_closed_sum(f, k) == raise_iterated_symbolic(f, k, k - 1));
    }
}

TEST_CASE("eichler integral relation, exact mode-by-mode") {
    // R_{2-2k}^{k-1} (Gamma(2k-1, 4 pi n v) e(-n tau)) = (2k-2)! conj(R_{2-2k}^{k-1} e(n tau))
    for (int k = 2; k <= 6; ++k) {
        for (long n = 1; n <= 10; ++n) {
            ExpFourierExpr lhs = raise_iterated_symbolic(ExpFourierExpr::incomplete_gamma_mode(k, n), k, k - 1);
            ExpFourierExpr rhs = raise_iterated_symbolic(ExpFourierExpr::fourier_mode(n), k, k - 1).conj();
            ExpFourierExpr scaled = GaussRat(Rat(factorial(2 * k - 2))) * rhs;
            REQUIRE(lhs == scaled);
        }
    }
}

TEST_CASE("mixed expr evaluation consistency") {
    // numeric embedding of an exact evaluation agrees with double evaluation
    ExactPoint pt(Rat(2, 7), Rat(3, 5), 3);
    MixedExpr e = MixedExpr::tau_power(4);
    e.add_term(1, -2, GaussRat(Rat(1, 3), Rat(-2)));
    Cplx exact = e.eval(pt).embed();
    Cplx direct = e.eval(pt.embed());
    CHECK(std::abs(exact - direct) < 1e-12 * (1.0 + std::abs(exact)));
}

#include <catch2/catch_amalgamated.hpp>
#include <lhmf/modforms.hpp>

#include <filesystem>

using namespace lhmf;

TEST_CASE("eisenstein coefficients") {
    auto e4 = eisenstein_coeffs(2, 3);
    CHECK(e4.constant_term == Rat(1));
    CHECK(e4.c[0] == Rat(240));
    CHECK(e4.c[1] == Rat(240) * sigma_power(2, 3));

    auto e6 = eisenstein_coeffs(3, 2);
    CHECK(e6.c[0] == Rat(-504));
    CHECK(e6.c[1] == Rat(-504) * Rat(33));

    CHECK_THROWS_AS(eisenstein_coeffs(1, 3), std::invalid_argument);
}

TEST_CASE("delta coefficients") {
    auto d = delta_coeffs(24);
    CHECK(d.c[0] == Rat(1));
    CHECK(d.c[1] == Rat(-24));
    CHECK(d.c[5] == d.c[1] * d.c[2]);  // tau(6) = tau(2) tau(3), Hecke multiplicativity

    // independent oracle: Delta = (E_4^3 - E_6^2)/1728 coefficient-wise
    size_t N = 24;
    auto e4 = eisenstein_coeffs(2, N), e6 = eisenstein_coeffs(3, N);
    for (size_t n = 1; n <= N; ++n) {
        Rat c4cubed(0), c6sq(0);
        for (size_t i = 0; i <= n; ++i)
            for (size_t j = 0; i + j <= n; ++j) c4cubed += e4.coeff(i) * e4.coeff(j) * e4.coeff(n - i - j);
        for (size_t i = 0; i <= n; ++i) c6sq += e6.coeff(i) * e6.coeff(n - i);
        CHECK(d.coeff(n) == (c4cubed - c6sq) / Rat(1728));
    }
}

TEST_CASE("series evaluation") {
    auto e4 = eisenstein_coeffs(2, 40);
    auto r = eval_series(e4, Cplx(0, 10));
    // dominant constant term: the q-contribution 240 e^{-20 pi} ~ 1e-25 is far
    // below double resolution around 1, so the value is 1 to machine precision
    double expected = 1.0 + 240.0 * std::exp(-20 * M_PI);
    CHECK(std::abs(r.value - expected) < 1e-14);
    CHECK(r.err < 1e-13);

    // Delta at i: positive real; two truncations agree within the reported bound
    auto d1 = delta_coeffs(12), d2 = delta_coeffs(24);
    auto v1 = eval_series(d1, Cplx(0, 1)), v2 = eval_series(d2, Cplx(0, 1));
    CHECK(v1.value.real() > 0);
    CHECK(std::abs(v1.value.imag()) < v1.err);
    CHECK(std::abs(v1.value - v2.value) <= v1.err);

    // modularity residual: |E_4(S tau) - tau^4 E_4(tau)| small at tau = 1/3 + i
    auto e = eisenstein_coeffs(2, 60);
    Cplx tau(1.0 / 3.0, 1.0);
    Cplx stau = -1.0 / tau;
    Cplx lhs = eval_series(e, stau).value;
    Cplx rhs = std::pow(tau, 4) * eval_series(e, tau).value;
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("incomplete gamma") {
    CHECK(incomplete_gamma_int(3, 0.0) == Catch::Approx(2.0));
    CHECK(incomplete_gamma_int(1, 2.0) == Catch::Approx(std::exp(-2.0)));
    CHECK(incomplete_gamma_int(5, 1.5) == Catch::Approx(24 * std::exp(-1.5) * (1 + 1.5 + 1.125 + 0.5625 + 0.2109375)));
}

// Eisenstein period function r_{E_{2k}}(tau) assembled by hand (test oracle)
static Cplx eisen_period_function(int k, Cplx tau) {
    auto zeta = [](double s) { return std::riemann_zeta(s); };
    double z = M_PI * zeta(2 * k - 1) / ((2 * k - 1) * zeta(2 * k));
    std::vector<double> r(2 * k - 1, 0.0);
    r[0] = -z;
    r[2 * k - 2] = (k % 2 == 0) ? -z : z;  // (-1)^{k-1} pi zeta(2k-1)/((2k-1) zeta(2k))
    for (int n = 1; n < 2 * k - 2; n += 2) {
        Rat val = Rat(2 * k) * bernoulli_number(n + 1) * bernoulli_number(2 * k - 1 - n) /
                  (bernoulli_number(2 * k) * Rat(n + 1) * Rat(2 * k - 1 - n));
        r[n] = ((n - 1) / 2 % 2 == 0 ? 1.0 : -1.0) * to_double(val);
    }
    Cplx acc = (std::pow(tau, 2 * k - 1) + 1.0 / tau) / double(2 * k - 1);
    for (int n = 0; n <= 2 * k - 2; ++n) {
        Cplx in = std::pow(Cplx(0, 1), Cplx(1.0 - n, 0));
        acc += in * to_double(binomial(2 * k - 2, n)) * r[n] * std::pow(tau, 2 * k - 2 - n);
    }
    return acc;
}

TEST_CASE("eisenstein eichler cocycle") {
    // E_{E_4}|(I-S)(tau) = (-2 pi i)^3 / 2! * r_{E_4}(tau) at tau = 1/2 + i
    int k = 2;
    auto e4 = eisenstein_coeffs(k, 80);
    Cplx tau(0.5, 1.0);
    Cplx lhs = eichler_holomorphic(e4, tau).value -
               std::pow(tau, 2 * k - 2) * eichler_holomorphic(e4, -1.0 / tau).value;
    Cplx rhs = std::pow(Cplx(0, -2 * M_PI), 2 * k - 1) / to_double(factorial(2 * k - 2)) * eisen_period_function(k, tau);
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("xi operator consistency by finite differences") {
    // xi_{2-2k} f* = f with f = Delta: 2 i v^{2-2k} conj(d/dtaubar Delta*) ~ Delta(tau)
    auto d = delta_coeffs(40);
    int k = 6;
    Cplx tau(0.3, 0.9);
    double h = 1e-5;
    auto fstar = [&](Cplx t) { return eichler_nonholomorphic(d, t).value; };
    Cplx du = (fstar(tau + h) - fstar(tau - h)) / (2 * h);
    Cplx dv = (fstar(tau + Cplx(0, h)) - fstar(tau - Cplx(0, h))) / (2 * h);
    Cplx dtaubar = 0.5 * (du + Cplx(0, 1) * dv);
    Cplx xi = 2.0 * Cplx(0, 1) * std::pow(tau.imag(), 2.0 - 2 * k) * std::conj(dtaubar);
    Cplx delta = eval_series(d, tau).value;
    CHECK(std::abs(xi - delta) / std::abs(delta) < 1e-6);
}

TEST_CASE("raised eichler integrals") {
    auto d = delta_coeffs(60);
    int k = 6;
    Cplx tau(1.0 / 3.0, 1.0);
    Cplx a = raised_eichler(d, k, tau, EichlerKind::nonholomorphic, RaiseRoute::relation);
    Cplx b = raised_eichler(d, k, tau, EichlerKind::nonholomorphic, RaiseRoute::termwise);
    CHECK(std::abs(a - b) < 1e-12 * (1 + std::abs(a)));

    // k = 1 edge: zero raising steps leave the integral unchanged
    FourierSeries f;
    f.k = 1;
    f.kind = "toy";
    f.c = {Rat(1), Rat(-3)};
    Cplx raised = raised_eichler(f, 1, tau, EichlerKind::holomorphic);
    CHECK(raised == eichler_holomorphic(f, tau).value);

    // and at several points (the two nonholomorphic routes must keep agreeing)
    for (double u : {-0.4, 0.1, 0.27}) {
        Cplx t(u, 0.8);
        Cplx x = raised_eichler(d, k, t, EichlerKind::nonholomorphic, RaiseRoute::relation);
        Cplx y = raised_eichler(d, k, t, EichlerKind::nonholomorphic, RaiseRoute::termwise);
        CHECK(std::abs(x - y) < 1e-10 * (1 + std::abs(x)));
    }
}

TEST_CASE("series cache round trip") {
    std::string dir = "/tmp/lhmf_cache_test";
    std::filesystem::create_directories(dir);
    auto e = eisenstein_coeffs(2, 17);
    save_series_cache(dir, e);
    FourierSeries f;
    f.k = 2;
    f.kind = "eisenstein";
    REQUIRE(load_series_cache(dir, f, 17));
    CHECK(f.c == e.c);
    CHECK(f.constant_term == e.constant_term);
}

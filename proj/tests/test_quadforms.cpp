#include <catch2/catch_amalgamated.hpp>
#include <lhmf/exceptional.hpp>

#include <array>
#include <set>

using namespace lhmf;

TEST_CASE("gauss reduction") {
    auto [r1, m1] = reduce(QuadForm(1, 1, 1));
    CHECK(r1 == QuadForm(1, 1, 1));
    CHECK(m1 == Mat2::identity());

    auto [r2, m2] = reduce(QuadForm(1, 5, 7));  // disc -3
    CHECK(r2 == QuadForm(1, 1, 1));
    CHECK(QuadForm(1, 5, 7).transform(m2) == r2);

    auto [r3, m3] = reduce(QuadForm(3, 2, 2));  // disc -20
    CHECK(r3 == QuadForm(2, 2, 3));
    CHECK(QuadForm(3, 2, 2).transform(m3) == r3);

    CHECK_THROWS_AS(reduce(QuadForm(1, 5, 1)), std::invalid_argument);  // indefinite

    // brute-force oracle: the reduced form is reachable by small transforms
    // and reduction is idempotent
    QuadForm q(3, 2, 2);
    bool found = false;
    for (long a = -4; a <= 4 && !found; ++a)
        for (long b = -4; b <= 4 && !found; ++b)
            for (long c = -4; c <= 4 && !found; ++c)
                for (long d = -4; d <= 4 && !found; ++d) {
                    Mat2 m{a, b, c, d};
                    if (m.det() != 1) continue;
                    if (q.transform(m) == QuadForm(2, 2, 3)) found = true;
                }
    CHECK(found);
    CHECK(reduce(r3).first == r3);
}

TEST_CASE("class enumeration") {
    auto c3 = enumerate_classes(Int(-3));
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == QuadForm(1, 1, 1));

    auto c20 = enumerate_classes(Int(-20));
    REQUIRE(c20.size() == 2);
    CHECK(c20[0] == QuadForm(1, 0, 5));
    CHECK(c20[1] == QuadForm(2, 2, 3));

    auto c12 = enumerate_classes(Int(-12));  // includes the imprimitive [2,2,2]
    REQUIRE(c12.size() == 2);
    CHECK(c12[0] == QuadForm(1, 0, 3));
    CHECK(c12[1] == QuadForm(2, 2, 2));

    CHECK_THROWS_AS(enumerate_classes(Int(-5)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_classes(Int(4)), std::invalid_argument);

    // Hurwitz class numbers H(d), frozen reference values
    CHECK(hurwitz_class_number(Int(-3)) == Rat(1, 3));
    CHECK(hurwitz_class_number(Int(-4)) == Rat(1, 2));
    CHECK(hurwitz_class_number(Int(-7)) == Rat(1));
    CHECK(hurwitz_class_number(Int(-8)) == Rat(1));
    CHECK(hurwitz_class_number(Int(-11)) == Rat(1));
    CHECK(hurwitz_class_number(Int(-12)) == Rat(4, 3));
    CHECK(hurwitz_class_number(Int(-15)) == Rat(2));
}

TEST_CASE("stabilizers") {
    CHECK(stabilizer_order(QuadForm(1, 1, 1)) == 3);
    CHECK(stabilizer_order(QuadForm(1, 0, 1)) == 2);
    CHECK(stabilizer_order(QuadForm(1, 0, 5)) == 1);
    CHECK(stabilizer_order(QuadForm(2, 2, 2)) == 3);  // 2*[1,1,1]
    CHECK(stabilizer_order(QuadForm(1, 5, 7)) == 3);  // equivalent to [1,1,1]
}

TEST_CASE("cm points") {
    ExactPoint p1 = cm_point(QuadForm(1, 1, 1));
    CHECK(p1.u == Rat(-1, 2));
    CHECK(p1.v_squared() == Rat(3, 4));

    ExactPoint p2 = cm_point(QuadForm(1, 0, 1));
    CHECK(p2.u == Rat(0));
    CHECK(p2.v_squared() == Rat(1));

    ExactPoint p3 = cm_point(QuadForm(2, 2, 3));
    CHECK(p3.u == Rat(-1, 2));
    CHECK(p3.v_squared() == Rat(5, 4));

    // Moebius/transform consistency: tau_{Q o M} = M^{-1} tau_Q
    QuadForm q(2, 2, 3);
    Mat2 m{2, 1, 1, 1};
    ExactPoint lhs = cm_point(q.transform(m));
    ExactPoint rhs = mobius(m.inverse(), cm_point(q));
    CHECK(lhs.u == rhs.u);
    CHECK(lhs.v_squared() == rhs.v_squared());
}

TEST_CASE("orbit enumeration") {
    auto o1 = orbit_forms_bounded(QuadForm(1, 1, 1), 1);
    REQUIRE(o1.size() == 2);
    CHECK(o1[0] == QuadForm(1, -1, 1));
    CHECK(o1[1] == QuadForm(1, 1, 1));

    auto o2 = orbit_forms_bounded(QuadForm(1, 0, 5), 1);
    REQUIRE(o2.size() == 1);
    CHECK(o2[0] == QuadForm(1, 0, 5));

    // monotonicity in the bound
    auto small = orbit_forms_bounded(QuadForm(1, 1, 1), 6);
    auto big = orbit_forms_bounded(QuadForm(1, 1, 1), 7);
    std::set<QuadForm> bigset(big.begin(), big.end());
    for (const auto& f : small) CHECK(bigset.count(f) == 1);

    // fiber completeness against a brute-force scan over forms
    Int d(-20);
    for (const auto& cls : enumerate_classes(d)) {
        auto fibers = orbit_fibers(cls, 25);
        std::set<std::pair<long long, long long>> got;
        for (auto& f : fibers) got.insert({f.a, f.b0});
        std::set<std::pair<long long, long long>> expect;
        for (long long a = 1; a <= 25; ++a)
            for (long long b = -300; b <= 300; ++b) {
                Int num = Int(b) * b - d;
                if (num % (4 * a) != 0) continue;
                QuadForm q(Int(a), Int(b), num / (4 * a));
                if (same_class(q, cls)) expect.insert({a, ((b % (2 * a)) + 2 * a) % (2 * a)});
            }
        CHECK(got == expect);
    }
}

static std::vector<Mat2> brute_force_exceptional(const ExactPoint& pt, long long bound, bool boundary) {
    std::vector<Mat2> out;
    Rat u = pt.u, abs2 = pt.abs2();
    for (long long a = -bound; a <= bound; ++a)
        for (long long b = -bound; b <= bound; ++b)
            for (long long c = -bound; c <= bound; ++c) {
                if (a != 0) {
                    long long n = 1 + b * c;
                    if (n % a != 0) continue;
                    long long d = n / a;
                    if (std::abs(d) > bound) continue;
                    Mat2 m{a, b, c, d};
                    Rat val = circle_value(m, u, abs2);
                    if (boundary ? (val == 0) : (a * c > 0 && val < 0)) out.push_back(m);
                } else if (b * c == -1) {
                    for (long long d = -bound; d <= bound; ++d) {
                        Mat2 m{0, b, c, d};
                        Rat val = circle_value(m, u, abs2);
                        if (boundary && val == 0) out.push_back(m);
                    }
                }
            }
    return out;
}

static std::set<std::array<long long, 4>> psl_canonical(const std::vector<Mat2>& ms) {
    std::set<std::array<long long, 4>> out;
    for (const auto& m : ms) {
        Mat2 r = m;
        if (r.c < 0 || (r.c == 0 && r.a < 0)) r = r.negated();
        out.insert({r.a, r.b, r.c, r.d});
    }
    return out;
}

TEST_CASE("exceptional set membership") {
    CHECK(is_on_exceptional_set(ExactPoint(Rat(0), Rat(1), 1)));               // i
    CHECK(is_on_exceptional_set(ExactPoint(Rat(1), Rat(5), 1)));               // 1 + 5i
    CHECK_FALSE(is_on_exceptional_set(ExactPoint(Rat(-1, 2), Rat(1, 2), 3)));  // rho
    CHECK_FALSE(is_on_exceptional_set(cm_point(QuadForm(2, 2, 3))));
    CHECK(is_on_exceptional_set(cm_point(QuadForm(1, 0, 5))));  // i sqrt 5
}

TEST_CASE("exceptional matrices") {
    // v > 1/2: strict-interior sum is empty
    CHECK(enumerate_exceptional_matrices(ExactPoint(Rat(3, 7), Rat(3, 5), 1), ExcMode::strict_interior).empty());

    // tau = 2i boundary: representatives I and S (as PSL classes)
    auto b = enumerate_exceptional_matrices(ExactPoint(Rat(0), Rat(2), 1), ExcMode::boundary);
    auto bc = psl_canonical(b);
    REQUIRE(bc.size() == 2);
    CHECK(bc.count({1, 0, 0, 1}) == 1);
    CHECK(bc.count({0, -1, 1, 0}) == 1);

    // strict-interior at tau = -3/10 + i/5 equals the brute-force scan
    ExactPoint pt(Rat(-3, 10), Rat(1, 5), 1);
    auto fast = psl_canonical(enumerate_exceptional_matrices(pt, ExcMode::strict_interior));
    auto brute = psl_canonical(brute_force_exceptional(pt, 50, false));
    CHECK(fast == brute);
    CHECK_FALSE(fast.empty());

    // boundary matrices satisfy N(M) = 0 exactly; brute-force agreement at an E_1 point
    ExactPoint on(Rat(1, 2), Rat(1, 2), 1);
    auto bdf = psl_canonical(enumerate_exceptional_matrices(on, ExcMode::boundary));
    auto bdb = psl_canonical(brute_force_exceptional(on, 50, true));
    CHECK(bdf == bdb);
    for (const auto& m : enumerate_exceptional_matrices(on, ExcMode::boundary))
        CHECK(circle_value(m, on.u, on.abs2()) == 0);
}

TEST_CASE("exceptional enumeration stable under refining") {
    // enlarging the matrix search far beyond the 1/(2v) radius bound finds
    // the same PSL classes
    ExactPoint pt(Rat(-3, 10), Rat(1, 5), 1);
    auto fast = psl_canonical(enumerate_exceptional_matrices(pt, ExcMode::strict_interior));
    auto brute = psl_canonical(brute_force_exceptional(pt, 80, false));
    CHECK(fast == brute);
}

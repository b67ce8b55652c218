#include "pcl/identities.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pcl;

TEST(Whipple, Examples) {
    EXPECT_TRUE(check_whipple(0, Rational(1, 2), Rational(3), Rational(-2, 5), Rational(1), Rational(7, 3),
                              Rational(1, 2) + Rational(3) + Rational(-2, 5) + Rational(1) - Rational(1) - Rational(7, 3)));
    auto [lhs, rhs] = whipple_sides(1, Rational(1), Rational(2), Rational(3), Rational(2), Rational(2), Rational(2));
    EXPECT_EQ(lhs, GaussianRational(Rational(1, 4)));
    EXPECT_EQ(rhs, GaussianRational(Rational(1, 4)));
    EXPECT_THROW(check_whipple(1, Rational(1), Rational(2), Rational(3), Rational(2), Rational(2), Rational(3)),
                 InvalidInput);
}

TEST(Whipple, PoleIsReported) {
    // d = -1 is hit at k = 2 on the left.
    Rational a(1, 2), b(1, 3), c(1, 5), d(-1), e(1, 7);
    Rational f = a + b + c - Rational(3) + Rational(1) - d - e;
    EXPECT_THROW(check_whipple(3, a, b, c, d, e, f), PoleError);
}

TEST(Liu7F6, Examples) {
    EXPECT_TRUE(check_liu_7f6(0, 3, Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(-1, 7)));
    EXPECT_TRUE(check_liu_7f6(3, 0, Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(-1, 7)));
    EXPECT_TRUE(check_liu_7f6(4, 2, Rational(3, 4), Rational(1, 3), Rational(2, 5), Rational(-1, 7)));
    EXPECT_THROW(check_liu_7f6(2, 2, Rational(0), Rational(1, 3), Rational(2, 5), Rational(-1, 7)), InvalidInput);
}

TEST(New7F6, Examples) {
    EXPECT_TRUE(check_new_7f6(0, 4, Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(-1, 7)));
    EXPECT_TRUE(check_new_7f6(3, 0, Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(-1, 7)));
    EXPECT_TRUE(check_new_7f6(5, 3, Rational(-5, 6), Rational(1, 4), Rational(2, 3), Rational(3, 2)));
}

TEST(New7F6, AgreesWithWhippleComposedWithLiu) {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 6), len(0, 6);
    int compared = 0;
    for (int i = 0; i < 400 && compared < 60; ++i) {
        unsigned long n = static_cast<unsigned long>(len(rng)), m = static_cast<unsigned long>(len(rng));
        Rational t(num(rng), den(rng)), a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        if (t.is_zero()) continue;
        const Rational one(1), nn(static_cast<long>(n)), mm(static_cast<long>(m));
        try {
            // The substitution that turns Liu's 4F3 into the one in the new formula.
            bool whipple = check_whipple(n, -mm, a + b + c + one - mm - Rational(2) * t, a + b + c + one + nn - mm - t,
                                         a + c + one - mm - t, a + b + one - mm - t, b + c + one - mm - t);
            bool liu = check_liu_7f6(n, m, t, a, b, c);
            bool fresh = check_new_7f6(n, m, t, a, b, c);
            if (whipple && liu) EXPECT_TRUE(fresh);
            EXPECT_EQ(liu_7f6_sides(n, m, t, a, b, c).second, new_7f6_sides(n, m, t, a, b, c).second);
            ++compared;
        } catch (const PoleError&) {
        }
    }
    EXPECT_GE(compared, 30);
}

TEST(A1Reflection, Examples) {
    EXPECT_TRUE(check_a1_reflection(1, Rational(3, 7)));
    EXPECT_TRUE(check_a1_reflection(-1, Rational(1, 2)));
    EXPECT_TRUE(check_a1_reflection(-3, Rational(2)));
    EXPECT_THROW(check_a1_reflection(-5, Rational(1)), InvalidInput);
}

TEST(A1Reflection, LeftSideIsEven) {
    for (long r : {-1L, -3L, -7L, -9L})
        for (Rational x : {Rational(1, 2), Rational(1), Rational(2), Rational(5, 3), Rational(-4, 7)}) {
            try {
                EXPECT_EQ(a1_reflection_sides(r, x).first, a1_reflection_sides(r, -x).first) << r << " " << x;
                EXPECT_TRUE(check_a1_reflection(r, x));
            } catch (const PoleError&) {
            }
        }
}

TEST(Symmetrization, Examples) {
    EXPECT_EQ(symmetrization_sides(SeriesFamily(FamilyKind::Quintic, 1)).first, Rational(0));
    EXPECT_TRUE(check_symmetrization(SeriesFamily(FamilyKind::Quintic, 1)));
    EXPECT_TRUE(check_symmetrization(SeriesFamily(FamilyKind::Sextic, 1)));
    EXPECT_TRUE(check_symmetrization(SeriesFamily(FamilyKind::Sextic, -2)));
    EXPECT_TRUE(check_symmetrization(SeriesFamily(FamilyKind::Quintic, -3)));
}

TEST(Suites, SpecExamples) {
    SampleConfig one;
    one.samples = 1;
    one.seed = 1;
    auto w = run_identity_suite(IdentityId::Whipple4F3, one);
    EXPECT_EQ(w.passed, 1u);
    EXPECT_TRUE(w.failed.empty());

    auto fresh = run_identity_suite(IdentityId::New7F6, SampleConfig{});
    EXPECT_EQ(fresh.passed, 50u);
    EXPECT_TRUE(fresh.ok());

    SampleConfig sextic;
    sextic.r_min = -7;
    auto s = run_identity_suite(IdentityId::SymSextic, sextic);
    EXPECT_EQ(admissible_r(FamilyKind::Sextic, -7), (std::vector<long>{1, -1, -2, -4, -5, -7}));
    EXPECT_EQ(s.passed, 6u);
    EXPECT_TRUE(s.ok());
}

TEST(Suites, AllPassAndAreDeterministic) {
    for (auto id : kAllIdentities) {
        auto first = run_identity_suite(id, SampleConfig{});
        auto second = run_identity_suite(id, SampleConfig{});
        EXPECT_TRUE(first.ok()) << identity_name(id);
        EXPECT_EQ(first.passed, second.passed);
        EXPECT_EQ(first.skipped_poles, second.skipped_poles);
    }
}

TEST(Suites, BadConfig) {
    SampleConfig bad;
    bad.samples = 0;
    EXPECT_THROW(run_identity_suite(IdentityId::Liu7F6, bad), ConfigError);
}

TEST(Suites, Names) {
    for (auto id : kAllIdentities) EXPECT_EQ(parse_identity(identity_name(id)), id);
    EXPECT_EQ(identity_name(IdentityId::Whipple4F3), "WHIPPLE_4F3");
    EXPECT_THROW(parse_identity("WHIPPLE"), InvalidInput);
}

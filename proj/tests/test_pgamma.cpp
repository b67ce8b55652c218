#include "pcl/pgamma.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace pcl;

namespace {

// Straight from the definition: (-1)^m ∏_{1≤k<m, p∤k} k, in big integers.
Integer gamma_oracle(std::uint64_t m, std::uint64_t p, int n) {
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(n));
    Integer prod = 1;
    for (std::uint64_t k = 1; k < m; ++k)
        if (k % p) prod = (prod * static_cast<unsigned long>(k)) % mod;
    if (m % 2) prod = -prod;
    return reduce_mod(prod, mod);
}

Rational random_integral(std::mt19937_64& rng, std::uint64_t p) {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 999);
    long d = den(rng);
    while (d % static_cast<long>(p) == 0) d = den(rng);
    return {Integer(num(rng)), Integer(d)};
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("pcl_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(GammaNat, Examples) {
    EXPECT_EQ(gamma_p_nat(0, PadicContext(7, 1)).value, 1);
    EXPECT_EQ(gamma_p_nat(1, PadicContext(7, 1)).value, 6);
    // (-1)^5 4! = -24 ≡ 1 (mod 5); the argument is reduced before the table lookup.
    EXPECT_EQ(gamma_p(Rational(5), PadicContext(5, 1)).value, 1);
    EXPECT_EQ(gamma_oracle(5, 5, 1), 1);
    EXPECT_THROW(gamma_p_nat(5, PadicContext(5, 1)), RangeError);
    EXPECT_THROW(gamma_p_nat(49, PadicContext(7, 2)), RangeError);
}

TEST(GammaNat, TableEndpoints) {
    for (std::uint64_t p : {3, 7, 13}) {
        for (int n : {1, 3, 5}) {
            PadicContext ctx(p, n);
            EXPECT_EQ(gamma_p_nat(0, ctx).value, 1);
            EXPECT_EQ(gamma_p_nat(1, ctx).value, ctx.modulus() - 1);
        }
    }
}

TEST(Gamma, Examples) {
    EXPECT_EQ(gamma_p(Rational(1, 3), PadicContext(7, 1)).value, 4);
    EXPECT_EQ(gamma_p(Rational(0), PadicContext(7, 3)).value, 1);
    EXPECT_EQ(gamma_p(Rational(1), PadicContext(11, 2)).value, 120);
    EXPECT_THROW(gamma_p(Rational(1, 7), PadicContext(7, 2)), DomainError);
}

TEST(GammaTable, DenseSweepMatchesDefinition) {
    for (std::uint64_t p : {3, 5, 7}) {
        PadicContext ctx(p, 3);
        auto t = GammaTable::sweep(ctx);
        for (std::uint64_t m = 0; m < t.modulus(); ++m) ASSERT_EQ(Integer(static_cast<unsigned long>(t.at(m))), gamma_oracle(m, p, 3)) << m;
    }
}

TEST(GammaTable, BlockEvaluatorMatchesDenseSweep) {
    for (auto [p, n] : {std::pair<std::uint64_t, int>{3, 7}, {5, 6}, {7, 5}, {11, 4}, {13, 3}}) {
        PadicContext ctx(p, n);
        auto dense = GammaTable::sweep(ctx);
        auto blocks = GammaTable::blocks(ctx);
        ASSERT_FALSE(blocks.is_dense());
        for (std::uint64_t m = 0; m < dense.modulus(); m += (m < 2000 ? 1 : 97))
            ASSERT_EQ(blocks.at(m), dense.at(m)) << "p=" << p << " n=" << n << " m=" << m;
        ASSERT_EQ(blocks.at(dense.modulus() - 1), dense.at(dense.modulus() - 1));
    }
}

TEST(GammaTable, BlockEvaluatorMatchesDefinitionBeyondDenseLimit) {
    std::mt19937_64 rng(5);
    for (auto [p, n] : {std::pair<std::uint64_t, int>{31, 6}, {29, 12}, {7, 12}}) {
        PadicContext ctx(p, n);
        auto t = GammaTable::build(ctx);
        EXPECT_FALSE(t.is_dense());
        std::uniform_int_distribution<std::uint64_t> small(0, 60000);
        for (int i = 0; i < 6; ++i) {
            std::uint64_t m = small(rng);
            EXPECT_EQ(Integer(static_cast<unsigned long>(t.at(m))), gamma_oracle(m, p, n)) << m;
        }
    }
}

TEST(GammaTable, CacheRoundTrip) {
    auto dir = scratch_dir("roundtrip");
    PadicContext ctx(7, 4);
    auto t = GammaTable::sweep(ctx);
    auto path = GammaProvider::cache_path(dir, 7, 4);
    EXPECT_EQ(path.filename(), "gamma_p7_n4.bin");
    t.save(path);
    auto loaded = GammaTable::load(path, ctx);
    ASSERT_TRUE(loaded.has_value());
    for (std::uint64_t m = 0; m < t.modulus(); ++m) ASSERT_EQ(loaded->at(m), t.at(m));

    std::ifstream in(path, std::ios::binary);
    char header[24];
    in.read(header, 24);
    EXPECT_EQ(std::string(header, 8), "PGAMMA01");
    EXPECT_EQ(header[8], 7);
    EXPECT_EQ(header[16], 4);
    EXPECT_FALSE(GammaTable::load(path, PadicContext(7, 3)).has_value());
    EXPECT_FALSE(GammaTable::load(path, PadicContext(11, 4)).has_value());
}

TEST(GammaTable, CorruptCacheIsRecomputed) {
    auto dir = scratch_dir("corrupt");
    PadicContext ctx(5, 4);
    auto path = GammaProvider::cache_path(dir, 5, 4);
    GammaTable::sweep(ctx).save(path);

    auto bytes = std::filesystem::file_size(path);
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XGAMMA01", 8);
    }
    EXPECT_FALSE(GammaTable::load(path, ctx).has_value());
    GammaProvider provider(dir);
    EXPECT_EQ(gamma_p(Rational(1, 3), ctx, provider).value, gamma_oracle(residue(Rational(1, 3), ctx).value.get_ui(), 5, 4));
    EXPECT_TRUE(GammaTable::load(path, ctx).has_value());  // rewritten

    std::filesystem::resize_file(path, bytes - 3);
    EXPECT_FALSE(GammaTable::load(path, ctx).has_value());
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "PGAMMA01";
    }
    EXPECT_FALSE(GammaTable::load(path, ctx).has_value());
    GammaProvider again(dir);
    EXPECT_EQ(gamma_p_nat(2, ctx, again).value, 1);
}

TEST(GammaProviderTest, UnwritableCacheStillComputes) {
    auto dir = scratch_dir("blocked");
    auto blocker = dir / "file";
    std::ofstream(blocker) << "x";
    GammaProvider provider(blocker / "sub");
    EXPECT_EQ(gamma_p(Rational(1, 3), PadicContext(7, 1), provider).value, 4);
}

TEST(Reflection, Examples) {
    EXPECT_TRUE(verify_reflection(Rational(0), PadicContext(7, 3)));
    EXPECT_TRUE(verify_reflection(Rational(1, 3), PadicContext(7, 2)));
    EXPECT_TRUE(verify_reflection(Rational(1, 5), PadicContext(11, 2)));
}

TEST(Shift, Examples) {
    EXPECT_TRUE(verify_shift(Rational(0), PadicContext(7, 2)));
    EXPECT_TRUE(verify_shift(Rational(1, 3), PadicContext(7, 2)));
    EXPECT_TRUE(verify_shift(Rational(7), PadicContext(7, 2)));
}

TEST(GammaProperties, ReflectionShiftContinuity) {
    std::mt19937_64 rng(20240601);
    for (std::uint64_t p : {7, 11, 13, 31}) {
        for (int n : {1, 3, 5}) {
            PadicContext ctx(p, n);
            for (int i = 0; i < 100; ++i) {
                Rational x = random_integral(rng, p);
                EXPECT_TRUE(verify_reflection(x, ctx)) << x << " p=" << p << " n=" << n;
                EXPECT_TRUE(verify_shift(x, ctx)) << x << " p=" << p << " n=" << n;
                Rational y = x + Rational(ctx.modulus()) * random_integral(rng, p);
                EXPECT_EQ(gamma_p(x, ctx).value, gamma_p(y, ctx).value);
            }
        }
    }
}

TEST(HarmonicPowerSum, Examples) {
    EXPECT_EQ(harmonic_power_sum(Rational(1), 0, 2), Rational(0));
    EXPECT_EQ(harmonic_power_sum(Rational(1, 3), 2, 2), Rational(153, 16));
    EXPECT_GE(padic_valuation(harmonic_power_sum(Rational(1), 49, 2, 7), 7), 2L);
    EXPECT_THROW(harmonic_power_sum(Rational(-2), 4, 2), PoleError);
    EXPECT_THROW(harmonic_power_sum(Rational(1), 4, 0), InvalidInput);
    EXPECT_EQ(harmonic_power_sum(Rational(1), 200, 3),
              [] {
                  Rational s;
                  for (long j = 1; j <= 200; ++j) s += Rational(1, j * j * j);
                  return s;
              }());
}

TEST(HarmonicPowerSum, Slavutsky) {
    for (std::uint64_t p : {5, 7, 11, 13})
        EXPECT_GE(padic_valuation(harmonic_power_sum(Rational(1), p * p, 2, p), p), 2L) << p;
    // The congruence is a p >= 5 statement; at p = 3 the sum 1+1/4+1/16+1/25+1/49+1/64 has ν_3 = 1.
    EXPECT_EQ(padic_valuation(harmonic_power_sum(Rational(1), 9, 2, 3), 3), Valuation(1));
}

TEST(GammaProduct, Examples) {
    EXPECT_TRUE(verify_gamma_product(Rational(1, 3), Rational(0), 7));
    EXPECT_TRUE(verify_gamma_product(Rational(1, 3), Rational(1), 7));
    EXPECT_TRUE(verify_gamma_product(Rational(2, 5), Rational(2), 11));
}

TEST(GammaProduct, Grid) {
    for (std::uint64_t p : {7, 11, 13})
        for (Rational a : {Rational(1, 3), Rational(2, 3), Rational(1, 5), Rational(2, 5), Rational(4, 5), Rational(1, 7)})
            for (Rational m : {Rational(0), Rational(1), Rational(2), Rational(1, 2)}) {
                if (padic_valuation(a, p) < 0L) continue;
                EXPECT_TRUE(verify_gamma_product(a, m, p)) << "a=" << a << " m=" << m << " p=" << p;
            }
}

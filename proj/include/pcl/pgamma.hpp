#pragma once

/**
 * @file pgamma.hpp
 * @brief Morita's p-adic Gamma function modulo p^n.
 *
 * Γ_p(m) = (-1)^m ∏_{1≤k<m, p∤k} k for natural m, and Γ_p(x) for p-integral
 * rational x is Γ_p(⟨x⟩_{p^n}) mod p^n by continuity.
 *
 * Two table representations back the same contract:
 *  - a dense table of all p^n values built in one sweep (small moduli; these
 *    are the ones persisted to the on-disk cache), and
 *  - a block evaluator that precomputes, for every L < n, the polynomial
 *        F_L(x) = ∏_{0≤k<p^L, p∤k} (x + k)  mod (p^n, x^n)
 *    and answers a query by walking the base-p digits of m. Truncating at
 *    degree n is exact because F_L is only ever evaluated at multiples of p.
 */

#include "pcl/exactnum.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcl {

namespace detail {

// Largest modulus the word-sized table code accepts.
inline constexpr std::uint64_t kMaxWordModulus = std::uint64_t{1} << 62;

inline std::uint64_t word_modulus(const PadicContext& ctx) {
    if (ctx.modulus() >= Integer(static_cast<unsigned long>(kMaxWordModulus)))
        throw RangeError("modulus " + std::to_string(ctx.p()) + "^" + std::to_string(ctx.n()) + " exceeds 2^62");
    return ctx.modulus().get_ui();
}

using Poly = std::vector<std::uint64_t>;

inline Poly poly_mul(const Poly& a, const Poly& b, std::size_t degree, std::uint64_t mod) {
    Poly out(degree, 0);
    for (std::size_t i = 0; i < a.size() && i < degree; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < degree; ++j)
            out[i + j] = (out[i + j] + mulmod(a[i], b[j], mod)) % mod;
    }
    return out;
}

// G(x + c) for a polynomial G given by its coefficients.
inline Poly poly_shift(const Poly& g, std::uint64_t c, std::uint64_t mod) {
    std::size_t deg = g.size();
    Poly out(deg, 0);
    // Horner in the ring of polynomials: out = (...(g_d (x+c) + g_{d-1})(x+c) + ...)
    for (std::size_t d = deg; d-- > 0;) {
        // out *= (x + c)
        for (std::size_t i = deg; i-- > 0;) {
            std::uint64_t shifted = i > 0 ? out[i - 1] : 0;
            out[i] = (mulmod(out[i], c, mod) + shifted) % mod;
        }
        out[0] = (out[0] + g[d]) % mod;
    }
    return out;
}

inline std::uint64_t poly_eval(const Poly& g, std::uint64_t x, std::uint64_t mod) {
    std::uint64_t acc = 0;
    for (std::size_t d = g.size(); d-- > 0;) acc = (mulmod(acc, x, mod) + g[d]) % mod;
    return acc;
}

inline std::uint64_t signed_residue(bool negative, std::uint64_t v, std::uint64_t mod) {
    return negative && v != 0 ? mod - v : v;
}

}  // namespace detail

/// Direct evaluation of the defining product; O(m) multiplications.
inline std::uint64_t gamma_p_nat_naive(std::uint64_t m, std::uint64_t p, std::uint64_t mod) {
    std::uint64_t prod = 1 % mod;
    for (std::uint64_t k = 1; k < m; ++k) {
        if (k % p != 0) prod = detail::mulmod(prod, k, mod);
    }
    return detail::signed_residue(m % 2 == 1, prod, mod);
}

class GammaTable {
public:
    /// Tables up to this many entries are built densely and may be cached.
    static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 20;

    /// Dense when p^n <= kDenseLimit, block evaluator otherwise.
    static GammaTable build(const PadicContext& ctx) {
        return detail::word_modulus(ctx) <= kDenseLimit ? sweep(ctx) : blocks(ctx);
    }

    /// All p^n values in one pass.
    static GammaTable sweep(const PadicContext& ctx) {
        std::uint64_t mod = detail::word_modulus(ctx);
        if (mod > kDenseLimit) throw RangeError("dense Gamma_p table too large");
        GammaTable t(ctx, mod);
        t.dense_.resize(mod);
        std::uint64_t prod = 1 % mod;
        for (std::uint64_t m = 0; m < mod; ++m) {
            t.dense_[m] = detail::signed_residue(m % 2 == 1, prod, mod);
            if (m % ctx.p() != 0) prod = detail::mulmod(prod, m, mod);
        }
        return t;
    }

    static GammaTable blocks(const PadicContext& ctx) {
        std::uint64_t mod = detail::word_modulus(ctx);
        GammaTable t(ctx, mod);
        const std::uint64_t p = ctx.p();
        const auto degree = static_cast<std::size_t>(ctx.n());
        t.blocks_.resize(degree);  // index 0 unused
        if (degree > 1) {
            detail::Poly f(degree, 0);
            f[0] = 1 % mod;
            for (std::uint64_t k = 1; k < p; ++k) f = detail::poly_mul(f, detail::Poly{k % mod, 1}, degree, mod);
            t.blocks_[1] = f;
            std::uint64_t step = p;  // p^L
            for (std::size_t level = 2; level < degree; ++level) {
                detail::Poly next(degree, 0);
                next[0] = 1 % mod;
                for (std::uint64_t j = 0; j < p; ++j)
                    next = detail::poly_mul(next, detail::poly_shift(t.blocks_[level - 1], (j * step) % mod, mod), degree,
                                            mod);
                t.blocks_[level] = std::move(next);
                step *= p;
            }
        }
        return t;
    }

    const PadicContext& context() const { return ctx_; }
    std::uint64_t modulus() const { return mod_; }
    bool is_dense() const { return !dense_.empty(); }

    /// Γ_p(m) mod p^n for 0 <= m < p^n.
    std::uint64_t at(std::uint64_t m) const {
        if (m >= mod_) throw RangeError("Gamma_p argument " + std::to_string(m) + " not reduced modulo p^n");
        if (is_dense()) return dense_[m];
        const std::uint64_t p = ctx_.p();
        std::vector<std::uint64_t> digits;
        for (std::uint64_t rest = m; rest; rest /= p) digits.push_back(rest % p);
        std::uint64_t prod = 1 % mod_, base = 0;
        std::uint64_t block = 1;
        for (std::size_t l = 1; l < digits.size(); ++l) block *= p;
        for (std::size_t level = digits.size(); level-- > 1;) {
            for (std::uint64_t d = 0; d < digits[level]; ++d) {
                prod = detail::mulmod(prod, detail::poly_eval(blocks_[level], base, mod_), mod_);
                base += block;
            }
            block /= p;
        }
        for (; base < m; ++base) {
            if (base % p != 0) prod = detail::mulmod(prod, base, mod_);
        }
        return detail::signed_residue(m % 2 == 1, prod, mod_);
    }

    // Cache file: "PGAMMA01", p and n as 8-byte little-endian, then p^n
    // entries, each a 1-byte length followed by that many big-endian bytes.

    void save(const std::filesystem::path& path) const {
        if (!is_dense()) throw RangeError("only dense tables are persisted");
        std::vector<char> buf;
        buf.reserve(24 + dense_.size() * 5);
        buf.insert(buf.end(), kMagic, kMagic + 8);
        put_le(buf, ctx_.p());
        put_le(buf, static_cast<std::uint64_t>(ctx_.n()));
        for (std::uint64_t v : dense_) {
            unsigned char bytes[8];
            int len = 0;
            for (std::uint64_t w = v; w; w >>= 8) bytes[len++] = static_cast<unsigned char>(w & 0xff);
            buf.push_back(static_cast<char>(len));
            for (int i = len; i-- > 0;) buf.push_back(static_cast<char>(bytes[i]));
        }
        std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + tmp.string());
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            if (!out) throw Error("cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    /// std::nullopt on any mismatch; callers recompute.
    static std::optional<GammaTable> load(const std::filesystem::path& path, const PadicContext& ctx) {
        std::uint64_t mod = detail::word_modulus(ctx);
        if (mod > kDenseLimit) return std::nullopt;
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (buf.size() < 24 || std::memcmp(buf.data(), kMagic, 8) != 0) return std::nullopt;
        if (get_le(buf.data() + 8) != ctx.p() || get_le(buf.data() + 16) != static_cast<std::uint64_t>(ctx.n()))
            return std::nullopt;
        GammaTable t(ctx, mod);
        t.dense_.reserve(mod);
        std::size_t pos = 24;
        while (pos < buf.size()) {
            std::size_t len = buf[pos++];
            if (len > 8 || pos + len > buf.size()) return std::nullopt;
            std::uint64_t v = 0;
            for (std::size_t i = 0; i < len; ++i) v = (v << 8) | buf[pos + i];
            pos += len;
            if (v >= mod || t.dense_.size() == mod) return std::nullopt;
            t.dense_.push_back(v);
        }
        if (t.dense_.size() != mod) return std::nullopt;
        return t;
    }

private:
    static constexpr char kMagic[9] = "PGAMMA01";

    GammaTable(PadicContext ctx, std::uint64_t mod) : ctx_(std::move(ctx)), mod_(mod) {}

    static void put_le(std::vector<char>& buf, std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    static std::uint64_t get_le(const unsigned char* p) {
        std::uint64_t v = 0;
        for (int i = 8; i-- > 0;) v = (v << 8) | p[i];
        return v;
    }

    PadicContext ctx_;
    std::uint64_t mod_;
    std::vector<std::uint64_t> dense_;
    std::vector<detail::Poly> blocks_;
};

/// Shares one table per (p, n). First construction of a key is serialized;
/// later readers only take the lookup lock.
class GammaProvider {
public:
    GammaProvider() = default;
    explicit GammaProvider(std::filesystem::path cache_dir) : cache_dir_(std::move(cache_dir)) {}

    static std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t p, int n) {
        return dir / ("gamma_p" + std::to_string(p) + "_n" + std::to_string(n) + ".bin");
    }

    std::shared_ptr<const GammaTable> table(const PadicContext& ctx) const {
        std::shared_ptr<Slot> slot;
        {
            std::lock_guard lock(mutex_);
            auto& entry = slots_[{ctx.p(), ctx.n()}];
            if (!entry) entry = std::make_shared<Slot>();
            slot = entry;
        }
        std::call_once(slot->once, [&] { slot->table = std::make_shared<const GammaTable>(construct(ctx)); });
        return slot->table;
    }

    const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

    /// Process-wide provider without disk cache.
    static GammaProvider& shared() {
        static GammaProvider provider;
        return provider;
    }

private:
    struct Slot {
        std::once_flag once;
        std::shared_ptr<const GammaTable> table;
    };

    GammaTable construct(const PadicContext& ctx) const {
        std::uint64_t mod = detail::word_modulus(ctx);
        if (!cache_dir_ || mod > GammaTable::kDenseLimit) return GammaTable::build(ctx);
        auto path = cache_path(*cache_dir_, ctx.p(), ctx.n());
        if (auto cached = GammaTable::load(path, ctx)) return std::move(*cached);
        GammaTable t = GammaTable::sweep(ctx);
        try {
            std::lock_guard lock(write_mutex_);
            t.save(path);
        } catch (const std::exception&) {
            // An unwritable cache only costs a recomputation next time.
        }
        return t;
    }

    std::optional<std::filesystem::path> cache_dir_;
    mutable std::mutex mutex_;
    mutable std::mutex write_mutex_;
    mutable std::map<std::pair<std::uint64_t, int>, std::shared_ptr<Slot>> slots_;
};

// --- Γ_p ---------------------------------------------------------------------

inline ResidueClass gamma_p_nat(const Integer& m, const PadicContext& ctx,
                                const GammaProvider& provider = GammaProvider::shared()) {
    if (m < 0 || m >= ctx.modulus()) throw RangeError("Gamma_p argument must lie in [0, p^n)");
    auto table = provider.table(ctx);
    return {Integer(static_cast<unsigned long>(table->at(m.get_ui()))), ctx};
}

inline ResidueClass gamma_p(const Rational& x, const PadicContext& ctx,
                            const GammaProvider& provider = GammaProvider::shared()) {
    return gamma_p_nat(residue(x, ctx).value, ctx, provider);
}

/// Γ_p(x)Γ_p(1-x) ≡ (-1)^{⟨-x⟩_p - 1}.
inline bool verify_reflection(const Rational& x, const PadicContext& ctx,
                              const GammaProvider& provider = GammaProvider::shared()) {
    const Integer& mod = ctx.modulus();
    Integer lhs = reduce_mod(gamma_p(x, ctx, provider).value * gamma_p(Rational(1) - x, ctx, provider).value, mod);
    Integer neg = residue(-x, ctx.with_precision(1)).value;
    bool odd = (neg - 1) % 2 != 0;
    Integer rhs = odd ? Integer(mod - 1) : Integer(1);
    return lhs == rhs;
}

/// Γ_p(x+1) ≡ -x Γ_p(x) for units x, -Γ_p(x) when p | x.
inline bool verify_shift(const Rational& x, const PadicContext& ctx,
                         const GammaProvider& provider = GammaProvider::shared()) {
    const Integer& mod = ctx.modulus();
    Integer next = gamma_p(x + Rational(1), ctx, provider).value;
    Integer cur = gamma_p(x, ctx, provider).value;
    Integer factor = padic_valuation(x, ctx.p()) == 0L ? residue(-x, ctx).value : Integer(mod - 1);
    return next == reduce_mod(factor * cur, mod);
}

/// Σ_{j<count} 1/(start+j)^e, omitting terms with positive p-adic valuation
/// when `skip_p` is given.
inline Rational harmonic_power_sum(const Rational& start, std::uint64_t count, long e,
                                   std::optional<std::uint64_t> skip_p = std::nullopt) {
    if (e < 1) throw InvalidInput("harmonic power must be positive");
    // Accumulate over a common denominator; one normalization at the end.
    mpz_class num = 0, den = 1;
    Rational term = start;
    for (std::uint64_t j = 0; j < count; ++j, term += Rational(1)) {
        if (skip_p && padic_valuation(term, *skip_p) > 0L) continue;
        if (term.is_zero()) throw PoleError("harmonic sum term vanishes", static_cast<long>(j));
        Rational base = term.pow(e);
        // num/den + base.den/base.num
        mpz_class bn = base.numerator(), bd = base.denominator();
        num = num * bn + den * bd;
        den = den * bn;
        if (j % 64 == 63) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            num /= g;
            den /= g;
        }
    }
    return Rational(num, den);
}

/// Γ_p(a+mp)Γ_p(a-mp) ≡ Γ_p(a)^2 (1 + m²p² Σ_{1≤j≤⟨-a⟩_{p²}, p∤j} 1/j²) mod p^4.
inline bool verify_gamma_product(const Rational& a, const Rational& m, std::uint64_t p,
                                 const GammaProvider& provider = GammaProvider::shared()) {
    PadicContext ctx(p, 4);
    const Integer& mod = ctx.modulus();
    Rational pm = m * Rational(static_cast<long>(p));
    Integer lhs = reduce_mod(gamma_p(a + pm, ctx, provider).value * gamma_p(a - pm, ctx, provider).value, mod);
    Integer g = gamma_p(a, ctx, provider).value;
    Integer top = residue(-a, ctx.with_precision(2)).value;
    Rational h = harmonic_power_sum(Rational(1), top.get_ui(), 2, p);
    Rational correction = Rational(1) + pm * pm * h;
    Integer rhs = reduce_mod(g * g * residue(correction, ctx).value, mod);
    return lhs == rhs;
}

}  // namespace pcl

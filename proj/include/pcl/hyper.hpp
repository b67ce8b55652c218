#pragma once

// Pochhammer symbols, truncated hypergeometric series and the two weighted
// series families (quintic: (10k+r)((r/5)_k/k!)^5, sextic: (6k+r)((r/3)_k/k!)^6).

#include "pcl/exactnum.hpp"
#include "pcl/pgamma.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace pcl {

inline GaussianRational pochhammer(const GaussianRational& a, unsigned long k) {
    GaussianRational out(1), factor = a;
    for (unsigned long j = 0; j < k; ++j, factor += GaussianRational(1)) out *= factor;
    return out;
}

inline Rational pochhammer(const Rational& a, unsigned long k) {
    Rational out(1), factor = a;
    for (unsigned long j = 0; j < k; ++j, factor += Rational(1)) out *= factor;
    return out;
}

/// Parameters of a truncated {}_{r+1}F_r series summed over 0..truncation.
struct HyperSpec {
    std::vector<GaussianRational> upper;
    std::vector<GaussianRational> lower;
    GaussianRational argument{1};
    unsigned long truncation = 0;
};

/// The summands term(0..N). term(k+1) = term(k) ∏(a+k)/∏(b+k) z/(k+1).
/// A vanishing lower factor is a pole even when an upper factor vanishes at
/// the same index; terminating series must be truncated by the caller.
inline std::vector<GaussianRational> hyper_terms(const HyperSpec& spec) {
    if (spec.upper.size() != spec.lower.size() + 1)
        throw InvalidInput("hypergeometric series needs exactly one more upper than lower parameter");
    std::vector<GaussianRational> terms;
    terms.reserve(spec.truncation + 1);
    terms.emplace_back(1);
    std::vector<GaussianRational> up = spec.upper, low = spec.lower;
    for (unsigned long k = 0; k < spec.truncation; ++k) {
        GaussianRational num = terms.back() * spec.argument, den(static_cast<long>(k + 1));
        for (const auto& b : low) {
            if (b.is_zero())
                throw PoleError("lower parameter pole at index " + std::to_string(k + 1), static_cast<long>(k + 1));
            den *= b;
        }
        for (const auto& a : up) num *= a;
        terms.push_back(num / den);
        for (auto& a : up) a += GaussianRational(1);
        for (auto& b : low) b += GaussianRational(1);
    }
    return terms;
}

inline GaussianRational truncated_hyper(const HyperSpec& spec) {
    GaussianRational sum;
    for (const auto& t : hyper_terms(spec)) sum += t;
    return sum;
}

// --- series families ---------------------------------------------------------

enum class FamilyKind { Quintic, Sextic };

/// QUINTIC: weight 10k+r, fifth powers of (r/5)_k/k!; r odd, r ≤ 1, 5 ∤ r.
/// SEXTIC: weight 6k+r, sixth powers of (r/3)_k/k!; r ≤ 1, 3 ∤ r.
class SeriesFamily {
public:
    SeriesFamily(FamilyKind kind, long r) : kind_(kind), r_(r) {
        if (!admissible(kind, r))
            throw InvalidInput("r = " + std::to_string(r) + " is not admissible for the " + name(kind) + " family");
    }

    static bool admissible(FamilyKind kind, long r) {
        if (r > 1) return false;
        if (kind == FamilyKind::Quintic) return r % 2 != 0 && r % 5 != 0;
        return r % 3 != 0;
    }

    static std::string name(FamilyKind kind) { return kind == FamilyKind::Quintic ? "quintic" : "sextic"; }

    FamilyKind kind() const { return kind_; }
    long r() const { return r_; }
    long denominator() const { return kind_ == FamilyKind::Quintic ? 5 : 3; }
    long power() const { return kind_ == FamilyKind::Quintic ? 5 : 6; }
    long slope() const { return 2 * denominator(); }
    Rational base() const { return Rational(r_) / Rational(denominator()); }

    /// Upper index of the finite right-hand sum: (1-r)/2 or 1-r.
    unsigned long rhs_length() const {
        return static_cast<unsigned long>(kind_ == FamilyKind::Quintic ? (1 - r_) / 2 : 1 - r_);
    }

private:
    FamilyKind kind_;
    long r_;
};

/// Σ_{k=0}^{N} (slope·k + r)·((r/d)_k/(1)_k)^power.
inline Rational weighted_series(const SeriesFamily& family, unsigned long n) {
    Rational sum, ratio(1);
    const Rational a = family.base();
    for (unsigned long k = 0; k <= n; ++k) {
        if (k > 0) ratio *= (a + Rational(static_cast<long>(k - 1))) / Rational(static_cast<long>(k));
        sum += Rational(family.slope() * static_cast<long>(k) + family.r()) * ratio.pow(family.power());
    }
    return sum;
}

/// Terms T_k of the finite right-hand sum:
///   quintic: ((r-1)/2)_k (r/5)_k^3 / ((1)_k (2r/5)_k^2 (1/2+3r/10)_k),  k ≤ (1-r)/2
///   sextic:  (r-1)_k (r/3)_k^3 / ((1)_k (2r/3)_k^3),                    k ≤ 1-r
inline std::vector<Rational> symmetrized_terms(const SeriesFamily& family) {
    const long r = family.r();
    HyperSpec spec;
    spec.truncation = family.rhs_length();
    if (family.kind() == FamilyKind::Quintic) {
        Rational a = Rational(r, 5);
        spec.upper = {Rational(r - 1, 2), a, a, a};
        spec.lower = {Rational(2 * r, 5), Rational(2 * r, 5), Rational(1, 2) + Rational(3 * r, 10)};
    } else {
        Rational a = Rational(r, 3);
        spec.upper = {Rational(r - 1), a, a, a};
        spec.lower = {Rational(2 * r, 3), Rational(2 * r, 3), Rational(2 * r, 3)};
    }
    std::vector<Rational> out;
    for (const auto& t : hyper_terms(spec)) out.push_back(t.re());
    return out;
}

inline Rational symmetrized_rhs_sum(const SeriesFamily& family) {
    auto terms = symmetrized_terms(family);
    return std::accumulate(terms.begin(), terms.end(), Rational());
}

/// Wang's four-fold product congruence modulo p^5:
///   (u+vp)_k (u-vp)_k (u+vip)_k (u-vip)_k ≡ (u)_k^4 (1 - v^4 p^4 Σ_{j<k} 1/(u+j)^4),
/// for 0 ≤ k ≤ ⟨-u⟩_p. Each factor is (u+j)^4 - (vp)^4, hence the minus sign.
/// The product must also be exactly real.
inline bool verify_pochhammer_product(const Rational& u, const Rational& v, std::uint64_t p, unsigned long k) {
    PadicContext ctx(p, 5);
    if (padic_valuation(u, p) < 0L || padic_valuation(v, p) < 0L) throw DomainError("u and v must be p-integral");
    Integer limit = residue(-u, ctx.with_precision(1)).value;
    if (Integer(k) > limit) throw RangeError("k exceeds <-u>_p = " + limit.get_str());
    const Rational vp = v * Rational(static_cast<long>(p));
    const GaussianRational ivp(Rational(0), vp);
    GaussianRational product = pochhammer(GaussianRational(u + vp), k) * pochhammer(GaussianRational(u - vp), k) *
                               pochhammer(GaussianRational(u) + ivp, k) * pochhammer(GaussianRational(u) - ivp, k);
    if (!product.is_real()) return false;
    Rational rhs = pochhammer(u, k).pow(4) * (Rational(1) - vp.pow(4) * harmonic_power_sum(u, k, 4));
    return congruent(product, rhs, ctx);
}

}  // namespace pcl

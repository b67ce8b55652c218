#pragma once

/**
 * @file identities.hpp
 * @brief Exact checks of terminating hypergeometric transformation formulas.
 *
 * Every check evaluates both sides as exact (Gaussian) rationals and compares
 * them for equality. Parameter tuples that put a zero into any denominator on
 * either side raise PoleError; the sampled suites treat those as skips and
 * draw again.
 *
 * The very-well-poised quotient (1+t/2)_k/(t/2)_k is always applied as the
 * explicit weight (t+2k)/t.
 */

#include "pcl/exactnum.hpp"
#include "pcl/hyper.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pcl {

struct ConfigError : Error {
    using Error::Error;
};

enum class IdentityId { Whipple4F3, Liu7F6, New7F6, A1Reflect, SymQuintic, SymSextic };

inline constexpr IdentityId kAllIdentities[] = {IdentityId::Whipple4F3, IdentityId::Liu7F6,    IdentityId::New7F6,
                                                IdentityId::A1Reflect,  IdentityId::SymQuintic, IdentityId::SymSextic};

inline std::string identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::Whipple4F3: return "WHIPPLE_4F3";
        case IdentityId::Liu7F6: return "LIU_7F6";
        case IdentityId::New7F6: return "NEW_7F6";
        case IdentityId::A1Reflect: return "A1_REFLECT";
        case IdentityId::SymQuintic: return "SYM_QUINTIC";
        case IdentityId::SymSextic: return "SYM_SEXTIC";
    }
    return "?";
}

inline IdentityId parse_identity(const std::string& name) {
    for (auto id : kAllIdentities) {
        if (identity_name(id) == name) return id;
    }
    throw InvalidInput("unknown identity '" + name + "'");
}

using Sides = std::pair<GaussianRational, GaussianRational>;

namespace detail {

inline GaussianRational truncated(std::vector<GaussianRational> upper, std::vector<GaussianRational> lower,
                                  unsigned long n) {
    return truncated_hyper(HyperSpec{std::move(upper), std::move(lower), GaussianRational(1), n});
}

/// ∏(num_i)_n / ∏(den_i)_n, with a pole if any denominator vanishes.
inline GaussianRational pochhammer_ratio(const std::vector<GaussianRational>& num,
                                         const std::vector<GaussianRational>& den, unsigned long n) {
    GaussianRational top(1), bottom(1);
    for (const auto& a : num) top *= pochhammer(a, n);
    for (const auto& b : den) bottom *= pochhammer(b, n);
    if (bottom.is_zero()) throw PoleError("vanishing Pochhammer denominator in prefactor", static_cast<long>(n));
    return top / bottom;
}

inline GaussianRational nat(unsigned long n) { return GaussianRational(static_cast<long>(n)); }

}  // namespace detail

// --- Whipple's 4F3 transformation -------------------------------------------

/// 4F3[-n,a,b,c; d,e,f; 1] and (e-a)_n(f-a)_n/((e)_n(f)_n) 4F3[-n,a,d-b,d-c; d,a+1-n-e,a+1-n-f; 1],
/// for balanced parameters a+b+c-n+1 = d+e+f.
inline Sides whipple_sides(unsigned long n, const GaussianRational& a, const GaussianRational& b,
                           const GaussianRational& c, const GaussianRational& d, const GaussianRational& e,
                           const GaussianRational& f) {
    const GaussianRational one(1), neg_n = -detail::nat(n);
    if (a + b + c + neg_n + one != d + e + f) throw InvalidInput("Whipple parameters are not balanced");
    GaussianRational lhs = detail::truncated({neg_n, a, b, c}, {d, e, f}, n);
    GaussianRational pre = detail::pochhammer_ratio({e - a, f - a}, {e, f}, n);
    GaussianRational rhs =
        pre * detail::truncated({neg_n, a, d - b, d - c}, {d, a + one + neg_n - e, a + one + neg_n - f}, n);
    return {lhs, rhs};
}

inline bool check_whipple(unsigned long n, const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                          const Rational& e, const Rational& f) {
    auto [lhs, rhs] = whipple_sides(n, a, b, c, d, e, f);
    return lhs == rhs;
}

// --- the two 7F6 transformations ---------------------------------------------

/// Left side shared by both 7F6 formulas:
///   Σ_{k≤n} (t+2k)/t (t)_k(-n)_k(t-a)_k(t-b)_k(t-c)_k(1-t-m+n+a+b+c)_k
///                   / (k! (1+t+n)_k(1+a)_k(1+b)_k(1+c)_k(2t+m-n-a-b-c)_k).
inline Rational well_poised_7f6(unsigned long n, unsigned long m, const Rational& t, const Rational& a,
                                const Rational& b, const Rational& c) {
    if (t.is_zero()) throw InvalidInput("t must be nonzero");
    const Rational one(1), nn(static_cast<long>(n)), mm(static_cast<long>(m));
    HyperSpec spec{{t, -nn, t - a, t - b, t - c, one - t - mm + nn + a + b + c},
                   {one + t + nn, one + a, one + b, one + c, Rational(2) * t + mm - nn - a - b - c},
                   GaussianRational(1),
                   n};
    auto terms = hyper_terms(spec);
    Rational sum;
    for (unsigned long k = 0; k < terms.size(); ++k)
        sum += (t + Rational(2 * static_cast<long>(k))) / t * terms[k].re();
    return sum;
}

inline Sides liu_7f6_sides(unsigned long n, unsigned long m, const Rational& t, const Rational& a, const Rational& b,
                           const Rational& c) {
    const Rational one(1), nn(static_cast<long>(n)), mm(static_cast<long>(m)), two_t = Rational(2) * t;
    Rational lhs = well_poised_7f6(n, m, t, a, b, c);
    const Rational ab = a + b + one - mm - t, ac = a + c + one - mm - t, bc = b + c + one - mm - t;
    const Rational abc = a + b + c + one - mm - two_t;
    GaussianRational series =
        detail::truncated({-mm, -nn, abc, a + b + c + one + nn - mm - t}, {ab, ac, bc}, std::min(m, n));
    GaussianRational pre = detail::pochhammer_ratio({one + t, ab, ac, bc}, {one + a, one + b, one + c, abc}, n);
    return {GaussianRational(lhs), series * pre};
}

inline Sides new_7f6_sides(unsigned long n, unsigned long m, const Rational& t, const Rational& a, const Rational& b,
                           const Rational& c) {
    const Rational one(1), nn(static_cast<long>(n)), mm(static_cast<long>(m)), two_t = Rational(2) * t;
    Rational lhs = well_poised_7f6(n, m, t, a, b, c);
    const Rational ac = a + c + one - mm - t;
    GaussianRational series = detail::truncated({-mm, -nn, t - b, -nn - b}, {ac, t - nn - a - b, t - nn - b - c},
                                                std::min(m, n));
    GaussianRational pre = detail::pochhammer_ratio({one + t, a + b + one - t, ac, b + c + one - t},
                                                    {one + a, one + b, one + c, a + b + c + one - mm - two_t}, n);
    return {GaussianRational(lhs), series * pre};
}

inline bool check_liu_7f6(unsigned long n, unsigned long m, const Rational& t, const Rational& a, const Rational& b,
                          const Rational& c) {
    auto [lhs, rhs] = liu_7f6_sides(n, m, t, a, b, c);
    return lhs == rhs;
}

inline bool check_new_7f6(unsigned long n, unsigned long m, const Rational& t, const Rational& a, const Rational& b,
                          const Rational& c) {
    auto [lhs, rhs] = new_7f6_sides(n, m, t, a, b, c);
    return lhs == rhs;
}

// --- x-parametrized reflection ----------------------------------------------

/// With n = (1-r)/2:
///   4F3[(r-1)/2, r/5, r/5-ix, r/5+ix; 1/2+3r/10, 2r/5-x, 2r/5+x; 1]
/// = (r/5-x)_n(r/5+x)_n/((2r/5-x)_n(2r/5+x)_n)
///   · 4F3[(r-1)/2, r/5, 1/2+r/10+ix, 1/2+r/10-ix; 1/2+3r/10, 1/2+3r/10+x, 1/2+3r/10-x; 1].
inline Sides a1_reflection_sides(long r, const Rational& x) {
    SeriesFamily family(FamilyKind::Quintic, r);
    const unsigned long n = family.rhs_length();
    const GaussianRational ix(Rational(0), x), gx(x);
    const GaussianRational top(Rational(r - 1, 2)), a(Rational(r, 5)), a2(Rational(2 * r, 5));
    const GaussianRational d = GaussianRational(Rational(1, 2) + Rational(3 * r, 10));
    const GaussianRational half = GaussianRational(Rational(1, 2) + Rational(r, 10));
    GaussianRational lhs = detail::truncated({top, a, a - ix, a + ix}, {d, a2 - gx, a2 + gx}, n);
    GaussianRational pre = detail::pochhammer_ratio({a - gx, a + gx}, {a2 - gx, a2 + gx}, n);
    GaussianRational rhs = pre * detail::truncated({top, a, half + ix, half - ix}, {d, d + gx, d - gx}, n);
    return {lhs, rhs};
}

inline bool check_a1_reflection(long r, const Rational& x) {
    auto [lhs, rhs] = a1_reflection_sides(r, x);
    return lhs.is_real() && rhs.is_real() && lhs == rhs;
}

// --- finite symmetrization identities ----------------------------------------

/// Σ_k T_k (Σ_{j<k} 1/(α+j)² + Σ_{j<k} 1/(β+j)²) = C(r) Σ_k T_k with
///   quintic: α = r/5, β = 2r/5, C = Σ_{j=0}^{(-r-1)/2} 1/(1/2+r/10+j)²,
///   sextic:  α = r/3, β = 2r/3, C = Σ_{j=0}^{-r} 1/(r/3+j)².
inline std::pair<Rational, Rational> symmetrization_sides(const SeriesFamily& family) {
    const long r = family.r();
    const Rational alpha = family.base(), beta = Rational(2) * family.base();
    const Rational c_start =
        family.kind() == FamilyKind::Quintic ? Rational(1, 2) + Rational(r, 10) : family.base();
    const Rational c = harmonic_power_sum(c_start, family.rhs_length(), 2);
    auto terms = symmetrized_terms(family);
    Rational lhs, total, inner;
    Rational ja = alpha, jb = beta;
    for (const auto& t : terms) {
        lhs += t * inner;
        total += t;
        inner += ja.pow(-2) + jb.pow(-2);
        ja += Rational(1);
        jb += Rational(1);
    }
    return {lhs, total * c};
}

inline bool check_symmetrization(const SeriesFamily& family) {
    auto [lhs, rhs] = symmetrization_sides(family);
    return lhs == rhs;
}

// --- sampled suites ----------------------------------------------------------

struct SampleConfig {
    std::uint64_t seed = 42;
    unsigned samples = 50;
    unsigned max_n = 6;
    unsigned max_m = 6;
    long numerator_bound = 6;
    long denominator_bound = 6;
    long r_min = -9;  // used by the r-indexed suites
};

struct SuiteReport {
    IdentityId identity;
    unsigned samples = 0;
    unsigned passed = 0;
    std::vector<unsigned> failed;  // sample indices, ascending
    std::vector<std::string> failed_params;
    unsigned skipped_poles = 0;

    bool ok() const { return failed.empty(); }
};

/// Seeded rational sampler. Maps raw mt19937_64 output by modulo so draws are
/// identical across standard libraries.
class ParamSampler {
public:
    explicit ParamSampler(const SampleConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

    long integer(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(rng_() % span);
    }
    unsigned natural(unsigned hi) { return static_cast<unsigned>(integer(0, hi)); }
    Rational rational() {
        long num = integer(-cfg_.numerator_bound, cfg_.numerator_bound);
        long den = integer(1, cfg_.denominator_bound);
        return {Integer(num), Integer(den)};
    }

private:
    SampleConfig cfg_;
    std::mt19937_64 rng_;
};

/// Admissible r values of a family in [r_min, 1], descending from 1.
inline std::vector<long> admissible_r(FamilyKind kind, long r_min) {
    std::vector<long> out;
    for (long r = 1; r >= r_min; --r) {
        if (SeriesFamily::admissible(kind, r)) out.push_back(r);
    }
    return out;
}

inline SuiteReport run_identity_suite(IdentityId id, const SampleConfig& cfg) {
    if (cfg.samples < 1 || cfg.numerator_bound < 1 || cfg.denominator_bound < 1)
        throw ConfigError("samples and bounds must be >= 1");
    SuiteReport report;
    report.identity = id;

    auto record = [&](unsigned index, bool ok, const std::string& params) {
        ++report.samples;
        if (ok) {
            ++report.passed;
        } else {
            report.failed.push_back(index);
            report.failed_params.push_back(params);
        }
    };

    if (id == IdentityId::SymQuintic || id == IdentityId::SymSextic) {
        auto kind = id == IdentityId::SymQuintic ? FamilyKind::Quintic : FamilyKind::Sextic;
        unsigned index = 0;
        for (long r : admissible_r(kind, cfg.r_min))
            record(index++, check_symmetrization(SeriesFamily(kind, r)), "r=" + std::to_string(r));
        return report;
    }

    ParamSampler sampler(cfg);
    const std::uint64_t max_draws = std::uint64_t{100} * cfg.samples;
    std::uint64_t draws = 0;
    const auto quintic_r = admissible_r(FamilyKind::Quintic, std::min(cfg.r_min, -1L));

    for (unsigned index = 0; index < cfg.samples;) {
        if (draws++ >= max_draws)
            throw ConfigError("sampler exhausted after " + std::to_string(max_draws) + " draws for " +
                              identity_name(id));
        try {
            bool ok = false;
            std::string params;
            switch (id) {
                case IdentityId::Whipple4F3: {
                    unsigned n = sampler.natural(cfg.max_n);
                    Rational a = sampler.rational(), b = sampler.rational(), c = sampler.rational();
                    Rational d = sampler.rational(), e = sampler.rational();
                    Rational f = a + b + c - Rational(static_cast<long>(n)) + Rational(1) - d - e;
                    params = "n=" + std::to_string(n) + " a=" + a.to_string() + " b=" + b.to_string() +
                             " c=" + c.to_string() + " d=" + d.to_string() + " e=" + e.to_string() +
                             " f=" + f.to_string();
                    ok = check_whipple(n, a, b, c, d, e, f);
                    break;
                }
                case IdentityId::Liu7F6:
                case IdentityId::New7F6: {
                    unsigned n = sampler.natural(cfg.max_n), m = sampler.natural(cfg.max_m);
                    Rational t = sampler.rational(), a = sampler.rational(), b = sampler.rational(),
                             c = sampler.rational();
                    if (t.is_zero()) throw PoleError("t = 0", 0);
                    params = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " t=" + t.to_string() +
                             " a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string();
                    ok = id == IdentityId::Liu7F6 ? check_liu_7f6(n, m, t, a, b, c) : check_new_7f6(n, m, t, a, b, c);
                    break;
                }
                case IdentityId::A1Reflect: {
                    long r = quintic_r[static_cast<std::size_t>(
                        sampler.integer(0, static_cast<long>(quintic_r.size()) - 1))];
                    Rational x = sampler.rational();
                    params = "r=" + std::to_string(r) + " x=" + x.to_string();
                    ok = check_a1_reflection(r, x);
                    break;
                }
                default: break;
            }
            record(index++, ok, params);
        } catch (const PoleError&) {
            ++report.skipped_poles;
        }
    }
    return report;
}

}  // namespace pcl

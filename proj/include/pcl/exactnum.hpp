#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact rational and Gaussian-rational arithmetic with p-adic helpers.
 *
 * Rational wraps a GMP mpq_class and is always kept in lowest terms with a
 * positive denominator (zero is 0/1). GaussianRational is a pair of
 * Rationals; a purely real value has an imaginary part that is exactly zero.
 *
 * The p-adic side is deliberately small: valuations, least nonnegative
 * residues modulo p^n and congruence tests. Congruence of Gaussian values is
 * componentwise.
 */

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcl {

using Integer = mpz_class;

// --- errors ------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
/// A zero denominator factor; `index` is the summation index that hit it.
struct PoleError : Error {
    PoleError(const std::string& what, long index) : Error(what), index(index) {}
    long index;
};

// --- primality ---------------------------------------------------------------

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve primes as witnesses are
/// sufficient for every n < 2^64.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto w : witnesses) {
        if (n % w == 0) return n == w;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : witnesses) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// --- Rational ----------------------------------------------------------------

class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& v) : q_(v) {}

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw InvalidInput("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    static Rational from_mpq(mpq_class q) {
        q.canonicalize();
        Rational r;
        r.q_ = std::move(q);
        return r;
    }

    /// Parses `[-]digits[/digits]`.
    static Rational parse(std::string_view text);

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return from_mpq(1 / q_);
    }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        Rational r;
        r.q_ = mpq_class(n, d);  // already coprime
        return r;
    }

    std::string to_string() const { return q_.get_str(); }

    Rational operator-() const { return from_mpq(-q_); }
    Rational& operator+=(const Rational& o) {
        q_ += o.q_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        q_ -= o.q_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        q_ *= o.q_;
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

inline Rational make_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

inline Rational Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw InvalidInput("unparsable rational '" + std::string(text) + "'");
    Integer n{std::string(num)}, d{std::string(den)};
    if (negative) n = -n;
    return Rational(n, d);
}

// --- GaussianRational --------------------------------------------------------

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
    GaussianRational(int re) : re_(re) {}                  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    /// Accepts a plain rational or `a+b*i` / `a-b*i` with rational parts.
    static GaussianRational parse(std::string_view text);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_real() const { return im_.is_zero(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        GaussianRational result(1), base = *this;
        while (e) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    std::string to_string() const { return re_.to_string() + "+" + im_.to_string() + "*i"; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.im_.is_zero()) {
            if (o.re_.is_zero()) throw DomainError("division by zero");
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        return *this *= o.inverse();
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

private:
    Rational re_;
    Rational im_;
};

inline GaussianRational GaussianRational::parse(std::string_view text) {
    if (text.empty() || text.back() != 'i') return GaussianRational(Rational::parse(text));
    std::string_view body = text.substr(0, text.size() - 1);
    if (body.size() < 2 || body.back() != '*') throw InvalidInput("unparsable Gaussian rational '" + std::string(text) + "'");
    body.remove_suffix(1);
    // The separator is the last '+' or '-' that is not the leading sign of
    // either part.
    for (std::size_t pos = body.size(); pos-- > 1;) {
        char c = body[pos];
        if (c != '+' && c != '-') continue;
        if (body[pos - 1] == '+') continue;  // "a+-b": the '-' belongs to b
        Rational re = Rational::parse(body.substr(0, pos));
        std::string_view im_text = body.substr(c == '+' ? pos + 1 : pos);
        return {re, Rational::parse(im_text)};
    }
    return {Rational(0), Rational::parse(body)};
}

// --- p-adic valuation --------------------------------------------------------

/// ν_p, with +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : value_(v) {}
    static constexpr Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr long value() const { return value_; }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator==(const Valuation& a, long b) { return !a.infinite_ && a.value_ == b; }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, long b) {
        if (a.infinite_) return std::strong_ordering::greater;
        return a.value_ <=> b;
    }

    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

private:
    long value_ = 0;
    bool infinite_ = false;
};

inline long padic_valuation(const Integer& x, std::uint64_t p) {
    if (x == 0) return 0;
    Integer rest, prime(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

inline Valuation padic_valuation(const Rational& x, std::uint64_t p) {
    if (x.is_zero()) return Valuation::infinity();
    return Valuation(padic_valuation(x.numerator(), p) - padic_valuation(x.denominator(), p));
}

inline Valuation padic_valuation(const GaussianRational& x, std::uint64_t p) {
    return std::min(padic_valuation(x.re(), p), padic_valuation(x.im(), p));
}

// --- contexts and residues ---------------------------------------------------

/// An odd prime p together with a precision exponent n (modulus p^n).
class PadicContext {
public:
    PadicContext(std::uint64_t p, int n) : p_(p), n_(n) {
        if (p < 3 || !is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not an odd prime");
        if (n < 1) throw InvalidInput("precision exponent must be >= 1");
        mpz_ui_pow_ui(modulus_.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    }

    std::uint64_t p() const { return p_; }
    int n() const { return n_; }
    const Integer& modulus() const { return modulus_; }

    PadicContext with_precision(int n) const { return PadicContext(p_, n); }

    friend bool operator==(const PadicContext& a, const PadicContext& b) { return a.p_ == b.p_ && a.n_ == b.n_; }

private:
    std::uint64_t p_;
    int n_;
    Integer modulus_;
};

/// Least nonnegative residue modulo p^n.
struct ResidueClass {
    Integer value;
    PadicContext context;

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

inline Integer reduce_mod(const Integer& x, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer inverse_mod(const Integer& x, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("no inverse of " + x.get_str() + " modulo " + m.get_str());
    return r;
}

inline ResidueClass residue(const Rational& x, const PadicContext& ctx) {
    if (padic_valuation(x, ctx.p()) < 0L)
        throw DomainError(x.to_string() + " is not " + std::to_string(ctx.p()) + "-integral");
    const Integer& m = ctx.modulus();
    Integer v = reduce_mod(x.numerator() * inverse_mod(x.denominator(), m), m);
    return {v, ctx};
}

inline bool congruent(const GaussianRational& a, const GaussianRational& b, const PadicContext& ctx) {
    GaussianRational d = a - b;
    auto vre = padic_valuation(d.re(), ctx.p());
    auto vim = padic_valuation(d.im(), ctx.p());
    if (vre < 0L || vim < 0L) throw DomainError("difference is not p-integral");
    return vre >= ctx.n() && vim >= ctx.n();
}

}  // namespace pcl

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "oil/errors.hpp"

namespace oil {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (std::uint64_t b : bases)
        if (n % b == 0) return n == b;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t b : bases) {
        std::uint64_t x = detail::powmod_u64(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Ground field selector: characteristic 0 (the rationals) or a prime p.
/// Primality is checked at construction.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec(0); }

    static FieldSpec prime_field(std::uint64_t p) {
        if (!is_prime_u64(p))
            throw argument_error("field characteristic must be prime, got " +
                                 std::to_string(p));
        return FieldSpec(p);
    }

    /// Accepts "q" for the rationals and "fp:P" for the prime field F_P.
    static FieldSpec parse(std::string_view s) {
        if (s == "q" || s == "Q") return rationals();
        if (s.rfind("fp:", 0) == 0) {
            const std::string digits(s.substr(3));
            if (digits.empty() ||
                digits.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad field spec: " + std::string(s));
            return prime_field(std::stoull(digits));
        }
        throw parse_error("bad field spec (want q or fp:P): " + std::string(s));
    }

    std::uint64_t characteristic() const { return char_; }
    bool is_rationals() const { return char_ == 0; }

    std::string to_string() const {
        return char_ == 0 ? std::string("q") : "fp:" + std::to_string(char_);
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    explicit FieldSpec(std::uint64_t c) : char_(c) {}
    std::uint64_t char_;
};

/// Exact field element: a rational in lowest terms over Q, a residue in
/// [0, p) over F_p. Immutable; equality is structural.
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()) {}

    static Scalar zero(FieldSpec f) { return Scalar(f); }

    static Scalar one(FieldSpec f) {
        Scalar s(f);
        if (f.is_rationals())
            s.rat_ = 1;
        else
            s.res_ = 1 % f.characteristic();
        return s;
    }

    static Scalar of(FieldSpec f, const Integer& v) {
        Scalar s(f);
        if (f.is_rationals()) {
            s.rat_ = v;
        } else {
            const Integer p = f.characteristic();
            Integer r = v % p;
            if (r < 0) r += p;
            s.res_ = r.convert_to<std::uint64_t>();
        }
        return s;
    }

    static Scalar of(FieldSpec f, long long v) { return of(f, Integer(v)); }

    static Scalar of(FieldSpec f, const Rational& v) {
        if (f.is_rationals()) {
            Scalar s(f);
            s.rat_ = v;
            return s;
        }
        const Scalar num = of(f, numerator(v));
        const Scalar den = of(f, denominator(v));
        return num / den;
    }

    FieldSpec field() const { return field_; }

    bool is_zero() const {
        return field_.is_rationals() ? rat_.is_zero() : res_ == 0;
    }

    bool is_one() const {
        return field_.is_rationals() ? rat_ == 1 : res_ == 1 % field_.characteristic();
    }

    /// Valid over Q only.
    const Rational& rational() const {
        require_rationals();
        return rat_;
    }

    /// Valid over F_p only.
    std::uint64_t residue() const {
        if (field_.is_rationals()) throw field_mismatch("residue() over Q");
        return res_;
    }

    Scalar operator-() const {
        Scalar s(*this);
        if (field_.is_rationals())
            s.rat_ = -s.rat_;
        else if (s.res_ != 0)
            s.res_ = field_.characteristic() - s.res_;
        return s;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        Scalar s(a.field_);
        if (a.field_.is_rationals()) {
            s.rat_ = a.rat_ + b.rat_;
        } else {
            const std::uint64_t p = a.field_.characteristic();
            s.res_ = a.res_ + b.res_;
            if (s.res_ >= p) s.res_ -= p;
        }
        return s;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.require_same(b);
        Scalar s(a.field_);
        if (a.field_.is_rationals())
            s.rat_ = a.rat_ * b.rat_;
        else
            s.res_ = detail::mulmod_u64(a.res_, b.res_, a.field_.characteristic());
        return s;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }

    Scalar inverse() const {
        if (is_zero()) throw argument_error("inverse of zero");
        Scalar s(field_);
        if (field_.is_rationals()) {
            s.rat_ = Rational(denominator(rat_), numerator(rat_));
        } else {
            const std::uint64_t p = field_.characteristic();
            s.res_ = detail::powmod_u64(res_, p - 2, p);
        }
        return s;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.field_ != b.field_) return false;
        return a.field_.is_rationals() ? a.rat_ == b.rat_ : a.res_ == b.res_;
    }

    std::string to_string() const {
        if (!field_.is_rationals()) return std::to_string(res_);
        if (denominator(rat_) == 1) return numerator(rat_).str();
        return numerator(rat_).str() + "/" + denominator(rat_).str();
    }

private:
    explicit Scalar(FieldSpec f) : field_(f) {}

    void require_rationals() const {
        if (!field_.is_rationals())
            throw field_mismatch("rational payload requested over " + field_.to_string());
    }

    void require_same(const Scalar& o) const {
        if (field_ != o.field_)
            throw field_mismatch("mixed fields: " + field_.to_string() + " vs " +
                                 o.field_.to_string());
    }

    FieldSpec field_;
    Rational rat_;
    std::uint64_t res_ = 0;
};

/// Exact binomial coefficient C(a, b); zero when b > a.
inline Integer binom(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    if (a - b < b) b = a - b;
    Integer r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= Integer(a - b + i);
        r /= Integer(i);
    }
    return r;
}

namespace detail {

/// Carries produced when adding a and r in base q (their count equals the
/// q-adic valuation of C(a+r, r)).
inline unsigned carry_count(std::uint64_t a, std::uint64_t r, std::uint64_t q) {
    unsigned carries = 0;
    std::uint64_t carry = 0;
    while (a != 0 || r != 0 || carry != 0) {
        const std::uint64_t s = a % q + r % q + carry;
        carry = (s >= q) ? 1 : 0;
        carries += static_cast<unsigned>(carry);
        a /= q;
        r /= q;
    }
    return carries;
}

/// min over r in [1, bound] of carry_count(a, r, q). A carry-free r exists
/// iff q^k <= bound, where k is the lowest base-q digit of a that is < q-1;
/// otherwise fall back to a direct scan.
inline unsigned min_carry_count(std::uint64_t a, std::uint64_t bound, std::uint64_t q) {
    std::uint64_t witness = 1;
    std::uint64_t rest = a;
    while (witness <= bound && rest % q == q - 1) {
        rest /= q;
        if (witness > bound / q) {
            witness = bound + 1;
            break;
        }
        witness *= q;
    }
    if (witness <= bound) return 0;
    unsigned best = std::numeric_limits<unsigned>::max();
    for (std::uint64_t r = 1; r <= bound && best > 0; ++r)
        best = std::min(best, carry_count(a, r, q));
    return best;
}

} // namespace detail

/// GCD over r = 1..m of C(n-m+r, r) with m = floor(n/2) + 1.
///
/// Every prime in the GCD divides the first binomial C(n-m+1, 1), so the
/// result is assembled prime by prime; the exponent of q is the minimal
/// number of base-q carries in the additions (n-m) + r, r = 1..m.
inline Integer gcd_binomials(std::uint64_t n) {
    if (n < 1) throw argument_error("gcd_binomials requires n >= 1");
    const std::uint64_t m = n / 2 + 1;
    const std::uint64_t a = n - m;
    std::uint64_t base = a + 1;
    Integer g = 1;
    for (std::uint64_t q = 2; q * q <= base; ++q) {
        if (base % q != 0) continue;
        while (base % q == 0) base /= q;
        const unsigned e = detail::min_carry_count(a, m, q);
        for (unsigned i = 0; i < e; ++i) g *= Integer(q);
    }
    if (base > 1) {
        const unsigned e = detail::min_carry_count(a, m, base);
        for (unsigned i = 0; i < e; ++i) g *= Integer(base);
    }
    return g;
}

} // namespace oil

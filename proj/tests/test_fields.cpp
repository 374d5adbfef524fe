#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oil/fields.hpp"

using oil::FieldSpec;
using oil::Integer;
using oil::Rational;
using oil::Scalar;

namespace {

// Independent oracle: Pascal's triangle, no multiplicative shortcuts.
Integer binom_pascal(unsigned a, unsigned b) {
    if (b > a) return 0;
    std::vector<Integer> row(a + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= a; ++i)
        for (unsigned j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[b];
}

// Independent oracle: the literal gcd of the literal binomials.
Integer gcd_binomials_direct(std::uint64_t n) {
    const std::uint64_t m = n / 2 + 1;
    const std::uint64_t a = n - m;
    Integer g = 0;
    for (std::uint64_t r = 1; r <= m; ++r)
        g = boost::multiprecision::gcd(g, oil::binom(a + r, r));
    return g;
}

Scalar random_scalar(FieldSpec f, std::mt19937_64& rng, bool nonzero = false) {
    for (;;) {
        Scalar s = Scalar::zero(f);
        if (f.is_rationals()) {
            const long long num = static_cast<long long>(rng() % 2001) - 1000;
            const long long den = 1 + static_cast<long long>(rng() % 50);
            s = Scalar::of(f, Rational(num, den));
        } else {
            s = Scalar::of(f, static_cast<long long>(rng() % (2 * f.characteristic())));
        }
        if (!nonzero || !s.is_zero()) return s;
    }
}

} // namespace

TEST_CASE("FieldSpec construction and parsing") {
    CHECK(FieldSpec::rationals().characteristic() == 0);
    CHECK(FieldSpec::prime_field(7).characteristic() == 7);
    CHECK(FieldSpec::parse("q") == FieldSpec::rationals());
    CHECK(FieldSpec::parse("fp:3") == FieldSpec::prime_field(3));
    CHECK(FieldSpec::parse("fp:3").to_string() == "fp:3");
    CHECK_THROWS_AS(FieldSpec::prime_field(1), oil::argument_error);
    CHECK_THROWS_AS(FieldSpec::prime_field(91), oil::argument_error); // 7*13
    CHECK_THROWS_AS(FieldSpec::parse("fp:"), oil::parse_error);
    CHECK_THROWS_AS(FieldSpec::parse("r"), oil::parse_error);
}

TEST_CASE("primality test agrees with trial division") {
    auto slow = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = 0; n < 2000; ++n) CHECK(oil::is_prime_u64(n) == slow(n));
    CHECK(oil::is_prime_u64(2147483647ull));        // 2^31 - 1
    CHECK(!oil::is_prime_u64(2147483647ull * 97));
}

TEST_CASE("field axioms hold on random triples") {
    std::mt19937_64 rng(12345);
    for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime_field(2),
                        FieldSpec::prime_field(7), FieldSpec::prime_field(1000003)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const Scalar a = random_scalar(f, rng);
            const Scalar b = random_scalar(f, rng);
            const Scalar c = random_scalar(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a - a == Scalar::zero(f));
            const Scalar u = random_scalar(f, rng, /*nonzero=*/true);
            CHECK(u * u.inverse() == Scalar::one(f));
        }
    }
}

TEST_CASE("scalar canonical form is unique") {
    const FieldSpec q = FieldSpec::rationals();
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const long long num = static_cast<long long>(rng() % 400) - 200;
        const long long den = 1 + static_cast<long long>(rng() % 60);
        const long long k = 1 + static_cast<long long>(rng() % 9);
        const Scalar a = Scalar::of(q, Rational(num, den));
        const Scalar b = Scalar::of(q, Rational(num * k, den * k));
        CHECK(a == b);
        // equality after arithmetic matches cross-multiplied integers
        const Scalar c = random_scalar(q, rng);
        const Rational lhs = (a + c).rational();
        CHECK(numerator(lhs) * denominator(a.rational()) * denominator(c.rational()) ==
              (numerator(a.rational()) * denominator(c.rational()) +
               numerator(c.rational()) * denominator(a.rational())) *
                  denominator(lhs));
    }
    // residues are canonical representatives in [0, p)
    const FieldSpec f5 = FieldSpec::prime_field(5);
    CHECK(Scalar::of(f5, -1) == Scalar::of(f5, 4));
    CHECK(Scalar::of(f5, Rational(1, 2)) == Scalar::of(f5, 3));
}

TEST_CASE("binom examples") {
    CHECK(oil::binom(4, 3) == 4);
    CHECK(oil::binom(3, 0) == 1);
    CHECK(oil::binom(2, 5) == 0);
    CHECK(oil::binom(40, 20) == Integer("137846528820"));
    CHECK(oil::binom(40, 20) == binom_pascal(40, 20));
}

TEST_CASE("binom satisfies Pascal's rule up to 60") {
    for (unsigned k = 1; k <= 60; ++k)
        for (unsigned r = 1; r < k; ++r)
            CHECK(oil::binom(k, r) == oil::binom(k - 1, r) + oil::binom(k - 1, r - 1));
}

TEST_CASE("gcd_binomials examples") {
    CHECK(oil::gcd_binomials(1) == 1);
    CHECK(oil::gcd_binomials(4) == 1);  // gcd(2, 3, 4)
    CHECK(oil::gcd_binomials(5) == 1);  // gcd(3, 6, 10)
    CHECK_THROWS_AS(oil::gcd_binomials(0), oil::argument_error);
}

TEST_CASE("gcd_binomials matches the direct gcd for n <= 400") {
    for (std::uint64_t n = 1; n <= 400; ++n)
        CHECK(oil::gcd_binomials(n) == gcd_binomials_direct(n));
}

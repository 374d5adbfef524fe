#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oil/orbits.hpp"

using namespace oil;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("partition construction, parsing, weight") {
    const Partition p({2, 2, 1});
    CHECK(p.weight() == 5);
    CHECK(p.to_string() == "2,2,1");
    CHECK(Partition::parse("2,2,1") == p);
    CHECK_THROWS_AS(Partition({1, 2}), argument_error);
    CHECK_THROWS_AS(Partition({2, 0}), argument_error);
    CHECK_THROWS_AS(Partition::parse("2,,1"), parse_error);
}

TEST_CASE("partition_mu examples") {
    CHECK(partition_mu(5, 2) == Partition({2, 2, 1}));
    CHECK(partition_mu(4, 2) == Partition({2, 2}));
    CHECK(partition_mu(4, 3) == Partition({3, 1}));
    CHECK_THROWS_AS(partition_mu(4, 4), argument_error);
    CHECK_THROWS_AS(partition_mu(4, 0), argument_error);
}

TEST_CASE("conjugate examples and involution") {
    CHECK(Partition({2, 2, 1}).conjugate() == Partition({3, 2}));
    CHECK(Partition({5}).conjugate() == Partition({1, 1, 1, 1, 1}));
    // involution on every partition of n <= 9 (more than 100 cases)
    int cases = 0;
    for (int n = 1; n <= 9; ++n)
        for (const Partition& p : partitions_of(n)) {
            CHECK(p.conjugate().conjugate() == p);
            CHECK(p.conjugate().weight() == n);
            ++cases;
        }
    CHECK(cases >= 100);
}

TEST_CASE("dominance examples") {
    CHECK(dominance_leq(Partition({1, 1, 1}), Partition({2, 1})));
    CHECK(dominance_leq(Partition({2, 1}), Partition({2, 1})));
    CHECK_FALSE(dominance_leq(Partition({3}), Partition({2, 1})));
    CHECK_THROWS_AS(dominance_leq(Partition({2}), Partition({2, 1})), argument_error);
}

TEST_CASE("jordan matrix examples") {
    const MatrixPoint j21 = jordan_matrix(Partition({2, 1}), Q, 3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == 1 && j == 2)
                CHECK(j21.at(i, j).is_one());
            else
                CHECK(j21.at(i, j).is_zero());
        }

    CHECK(jordan_matrix(Partition({1, 1, 1, 1}), Q, 4).is_zero());

    const MatrixPoint full = jordan_matrix(Partition({4}), Q, 4);
    CHECK(full.pow(4).is_zero());
    CHECK_FALSE(full.pow(3).is_zero());

    CHECK_THROWS_AS(jordan_matrix(Partition({2, 1}), Q, 4), argument_error);
}

TEST_CASE("random_conjugate is deterministic and similarity invariant") {
    for (FieldSpec f : {Q, FieldSpec::prime_field(3)}) {
        const MatrixPoint base = jordan_matrix(Partition({3, 1}), f, 4);
        CHECK(random_conjugate(base, 42) == random_conjugate(base, 42));
        // different seeds should move the point (sanity, not a hard law)
        CHECK_FALSE(random_conjugate(base, 1) == random_conjugate(base, 2));
        for (std::uint64_t s = 0; s < 100; ++s) {
            const MatrixPoint c = random_conjugate(base, s);
            CHECK(c.trace() == base.trace());
        }
    }
}

TEST_CASE("jordan_type examples and round trip") {
    CHECK(jordan_type(MatrixPoint(Q, 3)) == Partition({1, 1, 1}));
    CHECK(jordan_type(jordan_matrix(Partition({2, 1}), Q, 3)) == Partition({2, 1}));
    CHECK_THROWS_AS(jordan_type(MatrixPoint::identity(Q, 3)), argument_error);

    for (FieldSpec f : {Q, FieldSpec::prime_field(2)})
        for (int n = 1; n <= 8; ++n)
            for (const Partition& p : partitions_of(n))
                CHECK(jordan_type(jordan_matrix(p, f, n)) == p);
}

TEST_CASE("random conjugates preserve the jordan type") {
    for (FieldSpec f : {Q, FieldSpec::prime_field(3)}) {
        const Partition lambda({2, 2, 1});
        const MatrixPoint base = jordan_matrix(lambda, f, 5);
        for (std::uint64_t s = 0; s < 100; ++s)
            CHECK(jordan_type(random_conjugate(base, s)) == lambda);
    }
}

TEST_CASE("vanishing report examples") {
    const GeneratorSet gens = theorem1_set(Q, 3, 2);

    // dominated types: every generator vanishes on the sampled closure points
    for (const char* lam : {"2,1", "1,1,1"}) {
        const auto rep = vanishing_report(gens, Partition::parse(lam), 25, 7);
        CHECK(rep.all_zero);
        CHECK_FALSE(rep.witness.has_value());
        for (bool v : rep.generator_vanishes) CHECK(v);
    }

    // the full block (3) is not dominated by mu(3,2) = (2,1): a square entry
    // witnesses at the Jordan point itself
    const auto rep = vanishing_report(gens, Partition::parse("3"), 25, 7);
    CHECK_FALSE(rep.all_zero);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->sample_index == -1);
    const GeneratorEntry& g = gens.entries[rep.witness->generator_index];
    CHECK(g.family == "phi_power");
    CHECK(g.params.at("row") == "1");
    CHECK(g.params.at("col") == "3");
    CHECK(rep.witness->value.is_one());
}

TEST_CASE("vanishing report is reproducible under a fixed seed") {
    const GeneratorSet gens = theorem2_set(FieldSpec::prime_field(3), 3);
    const auto a = vanishing_report(gens, Partition::parse("2,1"), 30, 99);
    const auto b = vanishing_report(gens, Partition::parse("2,1"), 30, 99);
    CHECK(a.all_zero == b.all_zero);
    CHECK(a.generator_vanishes == b.generator_vanishes);
}

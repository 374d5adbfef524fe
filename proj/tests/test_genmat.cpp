#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oil/genmat.hpp"
#include "oil/linalg.hpp"
#include "oil/orbits.hpp"

using namespace oil;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Polynomial var(FieldSpec f, int n, int i, int j) {
    return Polynomial::variable(f, n, {i, j});
}

// --- univariate-in-x oracle -------------------------------------------------
// Polynomials in A[x]: coefficient of x^k at index k. Used to expand
// det(x*I + Phi) independently of trace_invariant().

using XPoly = std::vector<Polynomial>;

XPoly xp_add(const XPoly& a, const XPoly& b, FieldSpec f, int n) {
    XPoly r(std::max(a.size(), b.size()), Polynomial::zero(f, n));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

XPoly xp_mul(const XPoly& a, const XPoly& b, FieldSpec f, int n) {
    if (a.empty() || b.empty()) return {};
    XPoly r(a.size() + b.size() - 1, Polynomial::zero(f, n));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

XPoly xp_scale_sign(const XPoly& a, bool negate) {
    if (!negate) return a;
    XPoly r = a;
    for (auto& c : r) c = -c;
    return r;
}

// det by cofactor expansion along the first listed row
XPoly xp_det(const std::vector<std::vector<XPoly>>& m, std::vector<int> rows,
             std::vector<int> cols, FieldSpec f, int n) {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    XPoly acc;
    for (std::size_t l = 0; l < cols.size(); ++l) {
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != l) sub_cols.push_back(cols[t]);
        const XPoly cof = xp_mul(m[rows[0]][cols[l]], xp_det(m, sub_rows, sub_cols, f, n), f, n);
        acc = xp_add(acc, xp_scale_sign(cof, l % 2 == 1), f, n);
    }
    return acc;
}

// det(x*I + Phi) expanded in A[x]
XPoly char_poly_oracle(FieldSpec f, int n) {
    std::vector<std::vector<XPoly>> entries(n, std::vector<XPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            entries[i][j] = {var(f, n, i + 1, j + 1)};
            if (i == j)
                entries[i][j].push_back(Polynomial::constant(f, n, Scalar::one(f)));
        }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return xp_det(entries, all, all, f, n);
}

// rank of the span of a polynomial family inside its common degree
std::size_t span_rank(const std::vector<Polynomial>& polys, int degree, FieldSpec f, int n) {
    std::vector<Polynomial> nonzero;
    for (const auto& p : polys)
        if (!p.is_zero()) nonzero.push_back(p);
    if (nonzero.empty()) return 0;
    const MonomialBasis basis(n, degree);
    std::vector<ScalarRow> rows;
    for (const auto& p : nonzero) {
        REQUIRE(p.degree() == degree);
        rows.push_back(coordinate_row(p, basis));
    }
    return exact_rank(f, basis.size(), rows);
}

const Polynomial& power_entry(const std::vector<Polynomial>& entries, int a, int b, int n) {
    return entries[static_cast<std::size_t>(a - 1) * n + (b - 1)];
}

} // namespace

TEST_CASE("minor examples") {
    CHECK(minor({{1}, {2}}, Q, 2) == var(Q, 2, 1, 2));
    CHECK(minor({{1, 2}, {1, 2}}, Q, 2) ==
          var(Q, 2, 1, 1) * var(Q, 2, 2, 2) - var(Q, 2, 1, 2) * var(Q, 2, 2, 1));
    CHECK(minor({{1, 1}, {1, 2}}, Q, 2).is_zero());
    CHECK_THROWS_AS(minor({{1, 3}, {1, 2}}, Q, 2), argument_error);
    CHECK_THROWS_AS(minor({{1, 2}, {1}}, Q, 2), argument_error);
}

TEST_CASE("minors are antisymmetric in rows and columns (exhaustive, n <= 3)") {
    for (int n = 2; n <= 3; ++n) {
        for (int s = 2; s <= n; ++s) {
            // enumerate all index sequences in [1,n]^s
            std::vector<std::vector<int>> seqs;
            std::vector<int> cur(s, 1);
            for (;;) {
                seqs.push_back(cur);
                int k = s - 1;
                while (k >= 0 && cur[k] == n) cur[k--] = 1;
                if (k < 0) break;
                ++cur[k];
            }
            for (const auto& rows : seqs)
                for (const auto& cols : seqs) {
                    const Polynomial base = minor({rows, cols}, Q, n);
                    for (int i = 0; i < s; ++i)
                        for (int j = i + 1; j < s; ++j) {
                            auto swapped_rows = rows;
                            std::swap(swapped_rows[i], swapped_rows[j]);
                            CHECK(minor({swapped_rows, cols}, Q, n) == -base);
                            auto swapped_cols = cols;
                            std::swap(swapped_cols[i], swapped_cols[j]);
                            CHECK(minor({rows, swapped_cols}, Q, n) == -base);
                        }
                }
        }
    }
}

TEST_CASE("Laplace expansion reproduces every 3x3 minor") {
    const int n = 4;
    std::vector<std::vector<int>> triples;
    detail::for_each_combination(n, 3, [&](const std::vector<int>& t) { triples.push_back(t); });
    for (const auto& rows : triples)
        for (const auto& cols : triples) {
            const Polynomial full = minor({rows, cols}, Q, n);
            for (int k = 0; k < 3; ++k) { // expand along row position k
                Polynomial acc = Polynomial::zero(Q, n);
                for (int l = 0; l < 3; ++l) {
                    std::vector<int> sub_rows, sub_cols;
                    for (int t = 0; t < 3; ++t) {
                        if (t != k) sub_rows.push_back(rows[t]);
                        if (t != l) sub_cols.push_back(cols[t]);
                    }
                    Polynomial cof =
                        var(Q, n, rows[k], cols[l]) * minor({sub_rows, sub_cols}, Q, n);
                    if ((k + l) % 2 == 1) cof = -cof;
                    acc = acc + cof;
                }
                CHECK(acc == full);
            }
        }
}

TEST_CASE("trace invariant examples") {
    CHECK(trace_invariant(1, Q, 2) == var(Q, 2, 1, 1) + var(Q, 2, 2, 2));
    // T_n is the single principal n-minor
    for (int n = 2; n <= 4; ++n) {
        std::vector<int> all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        CHECK(trace_invariant(n, Q, n) == minor({all, all}, Q, n));
    }
    // T_2 at n=3: the three principal 2x2 minors, six terms
    const Polynomial t2 = trace_invariant(2, Q, 3);
    const Polynomial expected = minor({{1, 2}, {1, 2}}, Q, 3) +
                                minor({{1, 3}, {1, 3}}, Q, 3) +
                                minor({{2, 3}, {2, 3}}, Q, 3);
    CHECK(t2 == expected);
    CHECK(t2.terms().size() == 6);
    CHECK_THROWS_AS(trace_invariant(0, Q, 3), argument_error);
    CHECK_THROWS_AS(trace_invariant(4, Q, 3), argument_error);
}

TEST_CASE("matrix power entries") {
    // e = 1: the variables themselves
    const auto first = matrix_power_entries(1, Q, 2);
    CHECK(first.size() == 4);
    CHECK(power_entry(first, 1, 2, 2) == var(Q, 2, 1, 2));
    // e = 2, entry (1,1)
    const auto square = matrix_power_entries(2, Q, 2);
    CHECK(power_entry(square, 1, 1, 2) ==
          var(Q, 2, 1, 1) * var(Q, 2, 1, 1) + var(Q, 2, 1, 2) * var(Q, 2, 2, 1));
    for (const auto& p : square) {
        CHECK(p.is_homogeneous());
        CHECK(p.degree() == 2);
    }
}

TEST_CASE("powers multiply: Phi^a * Phi^b = Phi^{a+b}") {
    for (int n = 2; n <= 3; ++n)
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; a + b <= 4; ++b) {
                const auto pa = matrix_power_entries(a, Q, n);
                const auto pb = matrix_power_entries(b, Q, n);
                const auto pab = matrix_power_entries(a + b, Q, n);
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j) {
                        Polynomial acc = Polynomial::zero(Q, n);
                        for (int k = 1; k <= n; ++k)
                            acc = acc + power_entry(pa, i, k, n) * power_entry(pb, k, j, n);
                        CHECK(acc == power_entry(pab, i, j, n));
                    }
            }
}

TEST_CASE("characteristic polynomial identity det(xI + Phi) = sum T_i x^(n-i)") {
    for (int n = 2; n <= 4; ++n) {
        const XPoly lhs = char_poly_oracle(Q, n);
        REQUIRE(lhs.size() == static_cast<std::size_t>(n) + 1);
        CHECK(lhs[n] == Polynomial::constant(Q, n, Scalar::one(Q))); // T_0 = 1
        for (int i = 1; i <= n; ++i) CHECK(lhs[n - i] == trace_invariant(i, Q, n));
    }
}

TEST_CASE("Cayley-Hamilton instances fix the sign convention") {
    // n=2: Phi^2 - T1*Phi + T2*I = 0
    {
        const int n = 2;
        const auto sq = matrix_power_entries(2, Q, n);
        const auto id = matrix_power_entries(1, Q, n);
        const Polynomial t1 = trace_invariant(1, Q, n);
        const Polynomial t2 = trace_invariant(2, Q, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Polynomial acc = power_entry(sq, i, j, n) - t1 * power_entry(id, i, j, n);
                if (i == j) acc = acc + t2;
                CHECK(acc.is_zero());
            }
    }
    // n=3: Phi^3 - T1*Phi^2 + T2*Phi - T3*I = 0
    {
        const int n = 3;
        const auto cube = matrix_power_entries(3, Q, n);
        const auto sq = matrix_power_entries(2, Q, n);
        const auto id = matrix_power_entries(1, Q, n);
        const Polynomial t1 = trace_invariant(1, Q, n);
        const Polynomial t2 = trace_invariant(2, Q, n);
        const Polynomial t3 = trace_invariant(3, Q, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Polynomial acc = power_entry(cube, i, j, n) -
                                 t1 * power_entry(sq, i, j, n) +
                                 t2 * power_entry(id, i, j, n);
                if (i == j) acc = acc - t3;
                CHECK(acc.is_zero());
            }
    }
}

TEST_CASE("trace invariants are conjugation invariant numerically") {
    const FieldSpec f = FieldSpec::prime_field(101);
    std::mt19937_64 rng(2024);
    const int n = 4;
    for (int trial = 0; trial < 50; ++trial) {
        MatrixPoint m(f, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                m.at(i, j) = Scalar::of(f, static_cast<long long>(rng() % 101));
        const MatrixPoint conj = random_conjugate(m, rng());
        for (int i = 1; i <= n; ++i) {
            const Polynomial ti = trace_invariant(i, f, n);
            CHECK(ti.evaluate(conj) == ti.evaluate(m));
        }
    }
}

TEST_CASE("rel examples") {
    // rel(p, p) is T_p
    for (int n = 2; n <= 4; ++n)
        for (int p = 1; p <= n; ++p)
            CHECK(rel(p, p, {}, {}, Q, n) == trace_invariant(p, Q, n));
    // rel(1, 2, [a], [b]) = T1*F[a,b] - (Phi^2)[a,b]
    for (int n = 2; n <= 3; ++n) {
        const Polynomial t1 = trace_invariant(1, Q, n);
        const auto sq = matrix_power_entries(2, Q, n);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                CHECK(rel(1, 2, {a}, {b}, Q, n) ==
                      t1 * var(Q, n, a, b) - power_entry(sq, a, b, n));
    }
    CHECK_THROWS_AS(rel(1, 2, {1}, {1, 2}, Q, 3), argument_error);
    CHECK_THROWS_AS(rel(3, 2, {}, {}, Q, 3), argument_error);
    CHECK_THROWS_AS(rel(1, 4, {1, 2, 5}, {1, 2, 3}, Q, 4), argument_error);
}

TEST_CASE("v_space spanning families") {
    // i = 0: just T_p
    for (int n = 2; n <= 3; ++n)
        for (int p = 1; p <= n; ++p) {
            const auto fam = v_space_spanning_set(0, p, Q, n);
            REQUIRE(fam.size() == 1);
            CHECK(fam[0] == trace_invariant(p, Q, n));
        }
    // i = p = 1: all the variables, spanning dimension n^2
    for (int n = 2; n <= 3; ++n) {
        const auto fam = v_space_spanning_set(1, 1, Q, n);
        CHECK(fam.size() == static_cast<std::size_t>(n) * n);
        CHECK(span_rank(fam, 1, Q, n) == static_cast<std::size_t>(n) * n);
    }
    // n=2, (i,p)=(1,2): the family collapses; two members are T_2, two are 0,
    // matching V_{1,2} = span{T_2} when p = n.
    {
        const auto fam = v_space_spanning_set(1, 2, Q, 2);
        REQUIRE(fam.size() == 4);
        CHECK(span_rank(fam, 2, Q, 2) == 1);
        int zeros = 0;
        for (const auto& g : fam) zeros += g.is_zero();
        CHECK(zeros == 2);
    }
    // n=3, (i,p)=(1,2): nine independent members
    {
        const auto fam = v_space_spanning_set(1, 2, Q, 3);
        REQUIRE(fam.size() == 9);
        CHECK(span_rank(fam, 2, Q, 3) == 9);
    }
}

TEST_CASE("V_{i-1,p} is contained in V_{i,p} (rank form, n <= 4)") {
    for (int n = 2; n <= 4; ++n)
        for (int p = 1; p <= n; ++p)
            for (int i = 1; i <= p; ++i) {
                const auto smaller = v_space_spanning_set(i - 1, p, Q, n);
                const auto larger = v_space_spanning_set(i, p, Q, n);
                auto both = larger;
                both.insert(both.end(), smaller.begin(), smaller.end());
                CHECK(span_rank(both, p, Q, n) == span_rank(larger, p, Q, n));
            }
}

TEST_CASE("generator sets carry the advertised members and degrees") {
    const GeneratorSet t1 = theorem1_set(Q, 3, 2);
    CHECK(t1.entries.size() == 1 + 9);
    for (const auto& g : t1.entries) {
        CHECK(g.poly.is_homogeneous());
        if (g.family == "T") CHECK(g.poly.degree() == std::stoi(g.params.at("i")));
        if (g.family == "phi_power") CHECK(g.poly.degree() == 2);
    }

    const GeneratorSet t2 = theorem2_set(FieldSpec::prime_field(3), 3);
    CHECK(t2.entries.size() == 3 + 9);

    const GeneratorSet w = weyman_thm5_set(Q, 3, 2);
    CHECK(w.entries.size() == 3 + 9); // T1..T3 plus the 9 vspace members at (i,p)=(1,2)
    for (const auto& g : w.entries)
        if (g.family == "vspace") CHECK(g.poly.degree() == 2);

    const GeneratorSet s = strickland_full_set(Q, 3);
    bool has_minor = false;
    for (const auto& g : s.entries)
        if (g.family == "minor") {
            has_minor = true;
            CHECK(g.poly.degree() == 2); // floor(3/2)+1
        }
    CHECK(has_minor);

    CHECK_THROWS_AS(theorem1_set(Q, 3, 3), argument_error);
    CHECK_THROWS_AS(generator_set("bogus", Q, 3, 2), argument_error);
}

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/poly.hpp"

namespace oil {

/// Row and column index sequences of a minor, in the order laid out. The
/// sequences are not resorted: repeated indices give the zero polynomial,
/// and swapping two indices flips the sign.
struct MinorSpec {
    std::vector<int> rows;
    std::vector<int> cols;
};

namespace detail {

inline void check_indices(const std::vector<int>& idx, int n, const char* what) {
    for (int v : idx)
        if (v < 1 || v > n)
            throw argument_error(std::string(what) + " index out of range: " +
                                 std::to_string(v) + " for n=" + std::to_string(n));
}

/// Calls fn(combination) for every strictly increasing k-subset of [1, n].
template <class F>
void for_each_combination(int n, int k, F&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 1);
    for (;;) {
        fn(const_cast<const std::vector<int>&>(c));
        int i = k - 1;
        while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

} // namespace detail

/// Signed determinant of the submatrix of the generic matrix selected by
/// the given row/column sequences, expanded over permutations.
inline Polynomial minor(const MinorSpec& spec, FieldSpec field, int n) {
    if (spec.rows.size() != spec.cols.size())
        throw argument_error("minor: row/column counts differ");
    if (spec.rows.empty()) throw argument_error("minor: empty index sequences");
    detail::check_indices(spec.rows, n, "row");
    detail::check_indices(spec.cols, n, "column");

    const int s = static_cast<int>(spec.rows.size());
    std::vector<int> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial acc = Polynomial::zero(field, n);
    do {
        int inversions = 0;
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Monomial m(n);
        for (int i = 0; i < s; ++i) {
            const VariableIndex v{spec.rows[i], spec.cols[perm[i]]};
            m.set_exponent(v, m.exponent(v) + 1);
        }
        const Scalar c = (inversions % 2 == 0) ? Scalar::one(field) : -Scalar::one(field);
        acc = acc + Polynomial::term(field, n, m, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// T_i: the sum of all principal i x i minors; homogeneous of degree i.
inline Polynomial trace_invariant(int i, FieldSpec field, int n) {
    if (i < 1 || i > n)
        throw argument_error("trace invariant index out of range: " + std::to_string(i));
    Polynomial acc = Polynomial::zero(field, n);
    detail::for_each_combination(n, i, [&](const std::vector<int>& subset) {
        acc = acc + minor({subset, subset}, field, n);
    });
    return acc;
}

namespace detail {

inline std::size_t entry_index(int a, int b, int n) {
    return static_cast<std::size_t>(a - 1) * n + (b - 1);
}

} // namespace detail

/// Entries of the symbolic e-th power of the generic matrix, row-major;
/// each is homogeneous of degree e.
inline std::vector<Polynomial> matrix_power_entries(int e, FieldSpec field, int n) {
    if (e < 1) throw argument_error("matrix power must be positive");
    std::vector<Polynomial> cur;
    cur.reserve(static_cast<std::size_t>(n) * n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            cur.push_back(Polynomial::variable(field, n, {a, b}));
    for (int step = 1; step < e; ++step) {
        std::vector<Polynomial> next(cur.size(), Polynomial::zero(field, n));
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                Polynomial& out = next[detail::entry_index(a, b, n)];
                for (int k = 1; k <= n; ++k) {
                    const Monomial var = Monomial::variable(n, {k, b});
                    out = out + cur[detail::entry_index(a, k, n)].times_monomial(var);
                }
            }
        cur = std::move(next);
    }
    return cur;
}

/// Sum over strictly increasing r-tuples i_1 < ... < i_r of the p x p minors
/// M(a_1..a_{p-r}, i_1..i_r ; b_1..b_{p-r}, i_1..i_r). Tuples meeting the
/// fixed indices are kept: their minors vanish but they belong to the sum.
/// r = 0 is the plain minor M(a; b).
inline Polynomial rel(int r, int p, const std::vector<int>& a,
                      const std::vector<int>& b, FieldSpec field, int n) {
    if (p < 1 || p > n) throw argument_error("rel: p out of range");
    if (r < 0 || r > p) throw argument_error("rel: r out of range");
    if (a.size() != b.size() || static_cast<int>(a.size()) != p - r)
        throw argument_error("rel: fixed index sequences must have length p-r");
    detail::check_indices(a, n, "row");
    detail::check_indices(b, n, "column");

    Polynomial acc = Polynomial::zero(field, n);
    detail::for_each_combination(n, r, [&](const std::vector<int>& tuple) {
        MinorSpec spec{a, b};
        spec.rows.insert(spec.rows.end(), tuple.begin(), tuple.end());
        spec.cols.insert(spec.cols.end(), tuple.begin(), tuple.end());
        acc = acc + minor(spec, field, n);
    });
    return acc;
}

/// Canonical spanning family of the degree-p subspace V_{i,p}: the sums
/// rel(p-i, p, u, v) over strictly increasing i-tuples u, v. Permuting a
/// tuple only flips signs and repeated entries give zero, so the increasing
/// tuples span the same subspace as arbitrary ones.
inline std::vector<Polynomial> v_space_spanning_set(int i, int p, FieldSpec field, int n) {
    if (p < 1 || p > n) throw argument_error("v_space: p out of range");
    if (i < 0 || i > p) throw argument_error("v_space: i out of range");
    std::vector<std::vector<int>> tuples;
    detail::for_each_combination(n, i, [&](const std::vector<int>& t) { tuples.push_back(t); });
    std::vector<Polynomial> out;
    out.reserve(tuples.size() * tuples.size());
    for (const auto& u : tuples)
        for (const auto& v : tuples) out.push_back(rel(p - i, p, u, v, field, n));
    return out;
}

// ---------------------------------------------------------------------------
// Named generator sets.
// ---------------------------------------------------------------------------

/// One generator with its provenance: which family produced it and with
/// which parameters.
struct GeneratorEntry {
    std::string family;                           // "T", "phi_power", "rel", "minor", "vspace"
    std::map<std::string, std::string> params;
    Polynomial poly;

    std::string id() const {
        std::string s = family;
        s += "(";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) s += ",";
            s += k + "=" + v;
            first = false;
        }
        s += ")";
        return s;
    }
};

/// A labelled family of homogeneous generators for one of the compared
/// ideals.
struct GeneratorSet {
    std::string label; // theorem1 | theorem2 | weyman_thm5 | strickland_full
    int n = 0;
    int e = 0;
    FieldSpec field = FieldSpec::rationals();
    std::vector<GeneratorEntry> entries;

    std::vector<Polynomial> polynomials() const {
        std::vector<Polynomial> out;
        out.reserve(entries.size());
        for (const auto& g : entries) out.push_back(g.poly);
        return out;
    }
};

namespace detail {

inline std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline void append_traces(GeneratorSet& set, int up_to, FieldSpec f, int n) {
    for (int i = 1; i <= up_to; ++i)
        set.entries.push_back(
            {"T", {{"i", std::to_string(i)}}, trace_invariant(i, f, n)});
}

inline void append_power_entries(GeneratorSet& set, int e, FieldSpec f, int n) {
    const auto entries = matrix_power_entries(e, f, n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            set.entries.push_back({"phi_power",
                                   {{"e", std::to_string(e)},
                                    {"row", std::to_string(a)},
                                    {"col", std::to_string(b)}},
                                   entries[entry_index(a, b, n)]});
}

} // namespace detail

/// {T_1..T_{e-1}} together with the entries of the e-th symbolic power.
inline GeneratorSet theorem1_set(FieldSpec f, int n, int e) {
    if (e < 1 || e >= n) throw argument_error("theorem1 set requires 1 <= e < n");
    GeneratorSet set{"theorem1", n, e, f, {}};
    detail::append_traces(set, e - 1, f, n);
    detail::append_power_entries(set, e, f, n);
    return set;
}

/// {T_1..T_n} together with the entries of the square.
inline GeneratorSet theorem2_set(FieldSpec f, int n) {
    if (n < 2) throw argument_error("theorem2 set requires n >= 2");
    GeneratorSet set{"theorem2", n, 2, f, {}};
    detail::append_traces(set, n, f, n);
    detail::append_power_entries(set, 2, f, n);
    return set;
}

/// {T_1..T_n} together with the canonical spanning families of the spaces
/// V_{i, ie-i+1} for i = 1..floor(n/e).
inline GeneratorSet weyman_thm5_set(FieldSpec f, int n, int e) {
    if (e < 1 || e >= n) throw argument_error("weyman_thm5 set requires 1 <= e < n");
    GeneratorSet set{"weyman_thm5", n, e, f, {}};
    detail::append_traces(set, n, f, n);
    const int r = n / e;
    for (int i = 1; i <= r; ++i) {
        const int p = i * e - i + 1;
        std::vector<std::vector<int>> tuples;
        detail::for_each_combination(n, i, [&](const std::vector<int>& t) {
            tuples.push_back(t);
        });
        for (const auto& u : tuples)
            for (const auto& v : tuples)
                set.entries.push_back({"vspace",
                                       {{"i", std::to_string(i)},
                                        {"p", std::to_string(p)},
                                        {"rows", detail::join(u)},
                                        {"cols", detail::join(v)}},
                                       rel(p - i, p, u, v, f, n)});
    }
    return set;
}

/// The theorem2 set extended by all summed-minor relations rel(r, p) and by
/// all minors of size floor(n/2) + 1.
inline GeneratorSet strickland_full_set(FieldSpec f, int n) {
    GeneratorSet set = theorem2_set(f, n);
    set.label = "strickland_full";
    for (int p = 1; p <= n; ++p)
        for (int r = 1; r <= p; ++r) {
            std::vector<std::vector<int>> tuples;
            detail::for_each_combination(n, p - r, [&](const std::vector<int>& t) {
                tuples.push_back(t);
            });
            for (const auto& a : tuples)
                for (const auto& b : tuples) {
                    Polynomial g = rel(r, p, a, b, f, n);
                    if (g.is_zero()) continue;
                    set.entries.push_back({"rel",
                                           {{"r", std::to_string(r)},
                                            {"p", std::to_string(p)},
                                            {"rows", detail::join(a)},
                                            {"cols", detail::join(b)}},
                                           std::move(g)});
                }
        }
    const int m = n / 2 + 1;
    detail::for_each_combination(n, m, [&](const std::vector<int>& rows) {
        detail::for_each_combination(n, m, [&](const std::vector<int>& cols) {
            set.entries.push_back({"minor",
                                   {{"rows", detail::join(rows)},
                                    {"cols", detail::join(cols)}},
                                   minor({rows, cols}, f, n)});
        });
    });
    return set;
}

inline GeneratorSet generator_set(const std::string& label, FieldSpec f, int n, int e) {
    if (label == "theorem1") return theorem1_set(f, n, e);
    if (label == "theorem2") return theorem2_set(f, n);
    if (label == "weyman_thm5") return weyman_thm5_set(f, n, e);
    if (label == "strickland_full") return strickland_full_set(f, n);
    throw argument_error("unknown generator set label: " + label);
}

} // namespace oil

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/genmat.hpp"
#include "oil/linalg.hpp"

namespace oil {

/// Strictly increasing k-subsets of [1, n] in lexicographic order: the
/// basis of the k-th exterior power.
class SubsetBasis {
public:
    SubsetBasis(int n, int k) : n_(n), k_(k) {
        if (k < 0 || k > n) throw argument_error("subset size out of range");
        detail::for_each_combination(n, k, [&](const std::vector<int>& c) {
            index_.emplace(c, static_cast<std::uint32_t>(subsets_.size()));
            subsets_.push_back(c);
        });
    }

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t size() const { return subsets_.size(); }
    const std::vector<int>& at(std::size_t i) const { return subsets_[i]; }

    std::uint32_t index_of(const std::vector<int>& subset) const {
        auto it = index_.find(subset);
        if (it == index_.end()) throw argument_error("subset not in basis");
        return it->second;
    }

private:
    int n_, k_;
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, std::uint32_t> index_;
};

namespace detail {

/// Parity sign of the shuffle that concatenates two disjoint sorted subsets:
/// (-1)^(number of pairs x in a, y in b with x > y).
inline int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b) {
    int inversions = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// Sorted union with shuffle sign; nullopt when the subsets intersect.
inline std::optional<std::pair<std::vector<int>, int>> wedge_merge(
    const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> merged;
    merged.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j]))
            merged.push_back(a[i++]);
        else if (i == a.size() || b[j] < a[i])
            merged.push_back(b[j++]);
        else
            return std::nullopt;
    }
    return std::make_pair(std::move(merged), shuffle_sign(a, b));
}

} // namespace detail

/// The complement-with-sign identification of the dual basis vector indexed
/// by S with the basis vector of the complementary subset.
inline std::pair<std::vector<int>, int> complement_with_sign(const std::vector<int>& s,
                                                             int n) {
    std::vector<int> complement;
    std::size_t pos = 0;
    for (int v = 1; v <= n; ++v) {
        if (pos < s.size() && s[pos] == v) {
            ++pos;
            continue;
        }
        complement.push_back(v);
    }
    if (pos != s.size()) throw argument_error("subset not sorted inside [1, n]");
    return {complement, detail::shuffle_sign(s, complement)};
}

/// Element of wedge^a E (x) wedge^b E with sparse coordinates on the
/// subset-pair basis.
class ExteriorTensor {
public:
    ExteriorTensor(FieldSpec f, int n, int a, int b) : field_(f), n_(n), a_(a), b_(b) {
        if (a < 0 || a > n || b < 0 || b > n)
            throw argument_error("exterior degrees out of range");
    }

    static ExteriorTensor basis_element(FieldSpec f, int n, const std::vector<int>& s,
                                        const std::vector<int>& t) {
        ExteriorTensor x(f, n, static_cast<int>(s.size()), static_cast<int>(t.size()));
        x.add_term(s, t, Scalar::one(f));
        return x;
    }

    FieldSpec field() const { return field_; }
    int n() const { return n_; }
    int degree_left() const { return a_; }
    int degree_right() const { return b_; }
    bool is_zero() const { return coords_.empty(); }

    const std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar>& coords() const {
        return coords_;
    }

    void add_term(const std::vector<int>& s, const std::vector<int>& t, const Scalar& c) {
        if (static_cast<int>(s.size()) != a_ || static_cast<int>(t.size()) != b_)
            throw argument_error("tensor term degrees mismatch");
        if (c.is_zero()) return;
        auto key = std::make_pair(s, t);
        auto it = coords_.find(key);
        if (it == coords_.end()) {
            coords_.emplace(std::move(key), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) coords_.erase(it);
        }
    }

    friend ExteriorTensor operator+(const ExteriorTensor& x, const ExteriorTensor& y) {
        if (x.field_ != y.field_ || x.n_ != y.n_ || x.a_ != y.a_ || x.b_ != y.b_)
            throw argument_error("tensor shapes differ");
        ExteriorTensor r = x;
        for (const auto& [key, c] : y.coords_) r.add_term(key.first, key.second, c);
        return r;
    }

    ExteriorTensor scaled(const Scalar& c) const {
        ExteriorTensor r(field_, n_, a_, b_);
        if (c.is_zero()) return r;
        for (const auto& [key, v] : coords_) r.add_term(key.first, key.second, v * c);
        return r;
    }

    friend bool operator==(const ExteriorTensor& x, const ExteriorTensor& y) {
        return x.field_ == y.field_ && x.n_ == y.n_ && x.a_ == y.a_ && x.b_ == y.b_ &&
               x.coords_ == y.coords_;
    }

    /// Coordinate vector over (left subset, right subset) pairs, columns
    /// flattened as left_index * right_size + right_index.
    ScalarRow coordinate_row(const SubsetBasis& left, const SubsetBasis& right) const {
        ScalarRow row;
        row.reserve(coords_.size());
        for (const auto& [key, c] : coords_) {
            const std::uint32_t col =
                left.index_of(key.first) * static_cast<std::uint32_t>(right.size()) +
                right.index_of(key.second);
            row.emplace_back(col, c);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return row;
    }

private:
    FieldSpec field_;
    int n_, a_, b_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> coords_;
};

/// The map of degrees (m-r, n-m+r) -> (m, n-m): split the right factor into
/// an r-part and the rest with shuffle signs, then wedge the r-part onto the
/// left factor.
inline ExteriorTensor psi(int r, int m, const ExteriorTensor& input) {
    const int n = input.n();
    if (r < 1 || r > m || m < 1 || m > n) throw argument_error("psi: bad (r, m)");
    if (input.degree_left() != m - r || input.degree_right() != n - m + r)
        throw argument_error("psi: input degrees must be (m-r, n-m+r)");
    ExteriorTensor out(input.field(), n, m, n - m);
    for (const auto& [key, c] : input.coords()) {
        const std::vector<int>& s = key.first;
        const std::vector<int>& t = key.second;
        detail::for_each_combination(static_cast<int>(t.size()), r,
                                     [&](const std::vector<int>& picks) {
            std::vector<int> part, rest;
            std::size_t pi = 0;
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (pi < picks.size() &&
                    static_cast<int>(k) == picks[pi] - 1) {
                    part.push_back(t[k]);
                    ++pi;
                } else {
                    rest.push_back(t[k]);
                }
            }
            const int split_sign = detail::shuffle_sign(part, rest);
            const auto merged = detail::wedge_merge(s, part);
            if (!merged) return;
            const int sign = split_sign * merged->second;
            const Scalar v =
                sign > 0 ? c : -c;
            out.add_term(merged->first, rest, v);
        });
    }
    return out;
}

/// Outcome of the spanning check of the images of psi(r, m), r = 1..m, with
/// m = floor(n/2) + 1.
struct SpanningResult {
    std::size_t rank = 0;
    Integer target = 0;
    bool full = false;
};

inline SpanningResult lemma5_spanning(int n, FieldSpec field) {
    if (n < 1) throw argument_error("lemma5_spanning requires n >= 1");
    const int m = n / 2 + 1;
    const SubsetBasis left(n, m), right(n, n - m);
    const std::size_t ncols = left.size() * right.size();

    SpanningResult result;
    result.target = binom(n, m) * binom(n, n - m);

    ExactEchelon ech(field, ncols);
    std::uint32_t id = 0;
    for (int r = 1; r <= m && ech.rank() < ncols; ++r) {
        const SubsetBasis in_left(n, m - r), in_right(n, n - m + r);
        for (std::size_t i = 0; i < in_left.size() && ech.rank() < ncols; ++i)
            for (std::size_t j = 0; j < in_right.size() && ech.rank() < ncols; ++j) {
                const ExteriorTensor image = psi(
                    r, m,
                    ExteriorTensor::basis_element(field, n, in_left.at(i), in_right.at(j)));
                if (image.is_zero()) continue;
                ech.insert(image.coordinate_row(left, right), id++);
            }
    }
    result.rank = ech.rank();
    result.full = Integer(result.rank) == result.target;
    return result;
}

/// Dimension of the irreducible GL(n) representation of highest weight
/// lambda (weakly decreasing integers): the product formula
/// prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).
inline Integer weyl_dim(const std::vector<int>& lambda, int n) {
    if (static_cast<int>(lambda.size()) != n)
        throw argument_error("weight length must equal n");
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1])
            throw argument_error("weight must be weakly decreasing");
    Integer num = 1, den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= Integer(lambda[i] - lambda[j] + j - i);
            den *= Integer(j - i);
        }
    if (num % den != 0) throw argument_error("weyl_dim: non-integral product");
    return num / den;
}

/// The hook weight (1^j, 0^{n-2j}, (-1)^j).
inline std::vector<int> hook_weight(int j, int n) {
    if (j < 0 || 2 * j > n) throw argument_error("hook weight out of range");
    std::vector<int> w(n, 0);
    for (int k = 0; k < j; ++k) {
        w[k] = 1;
        w[n - 1 - k] = -1;
    }
    return w;
}

/// Rank test of the degree-p spanning family of V_{i,p} against the
/// dimension count sum_{j=0..min(i, n-p)} dim S_{hook(j)}. Characteristic
/// zero only.
inline bool lemma1_rank_check(int i, int p, int n,
                              FieldSpec field = FieldSpec::rationals()) {
    if (!field.is_rationals())
        throw argument_error("lemma1_rank_check is a characteristic-zero statement");
    if (p < 1 || p > n || i < 0 || i > p) throw argument_error("lemma1: bad (i, p)");

    const auto family = v_space_spanning_set(i, p, field, n);
    std::vector<Polynomial> nonzero;
    for (const auto& g : family)
        if (!g.is_zero()) nonzero.push_back(g);

    std::size_t rank = 0;
    if (!nonzero.empty()) {
        const MonomialBasis basis(n, p);
        std::vector<ScalarRow> rows;
        rows.reserve(nonzero.size());
        for (const auto& g : nonzero) rows.push_back(coordinate_row(g, basis));
        rank = exact_rank(field, basis.size(), rows);
    }

    Integer expected = 0;
    const int jmax = std::min(i, n - p);
    for (int j = 0; j <= jmax; ++j) expected += weyl_dim(hook_weight(j, n), n);
    return Integer(rank) == expected;
}

} // namespace oil

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/poly.hpp"

namespace oil {

namespace detail {

/// out = a*x + b*y on sparse vectors with strictly ascending columns.
/// Arithmetic must be exact; zero results are dropped.
template <class C, class Mul, class Add, class IsZero>
std::vector<std::pair<std::uint32_t, C>> axpby(
    const std::vector<std::pair<std::uint32_t, C>>& x,
    const std::vector<std::pair<std::uint32_t, C>>& y, const C& a, const C& b,
    Mul mul, Add add, IsZero is_zero) {
    std::vector<std::pair<std::uint32_t, C>> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            C v = mul(a, x[i].second);
            if (!is_zero(v)) out.emplace_back(x[i].first, std::move(v));
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            C v = mul(b, y[j].second);
            if (!is_zero(v)) out.emplace_back(y[j].first, std::move(v));
            ++j;
        } else {
            C v = add(mul(a, x[i].second), mul(b, y[j].second));
            if (!is_zero(v)) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/// Row echelon over F_p. Stored pivot rows are monic. When witness tracking
/// is on, each stored row carries its expression in the caller's source ids.
class FpEchelon {
public:
    using Coeff = std::uint64_t;
    using WitnessCoeff = std::uint64_t;
    using Row = std::vector<std::pair<std::uint32_t, Coeff>>;
    using Combo = std::vector<std::pair<std::uint32_t, WitnessCoeff>>;

    FpEchelon(std::uint64_t p, std::size_t ncols, bool track)
        : p_(p), track_(track), pivot_at_col_(ncols, -1) {}

    std::size_t rank() const { return rows_.size(); }
    bool tracking() const { return track_; }

    void reduce(Row& row, Combo& combo) const {
        const auto mul = [this](Coeff a, Coeff b) { return mulmod_u64(a, b, p_); };
        const auto add = [this](Coeff a, Coeff b) {
            const Coeff s = a + b;
            return s >= p_ ? s - p_ : s;
        };
        const auto is_zero = [](Coeff a) { return a == 0; };
        while (!row.empty()) {
            const std::int32_t pr = pivot_at_col_[row.front().first];
            if (pr < 0) return;
            const Coeff nb = p_ - row.front().second; // pivot is monic
            row = axpby(row, rows_[pr], Coeff(1), nb, mul, add, is_zero);
            if (track_) combo = axpby(combo, combos_[pr], Coeff(1), nb, mul, add, is_zero);
        }
    }

    bool insert(Row row, Combo combo) {
        reduce(row, combo);
        if (row.empty()) return false;
        const Coeff inv = powmod_u64(row.front().second, p_ - 2, p_);
        for (auto& e : row) e.second = mulmod_u64(e.second, inv, p_);
        if (track_)
            for (auto& e : combo) e.second = mulmod_u64(e.second, inv, p_);
        pivot_at_col_[row.front().first] = static_cast<std::int32_t>(rows_.size());
        rows_.push_back(std::move(row));
        combos_.push_back(std::move(combo));
        return true;
    }

    std::uint64_t p() const { return p_; }

private:
    std::uint64_t p_;
    bool track_;
    std::vector<std::int32_t> pivot_at_col_;
    std::vector<Row> rows_;
    std::vector<Combo> combos_;
};

/// Row echelon over Q, carried on integer rows: every row is scaled to
/// integer entries with content 1 and positive leading coefficient, and
/// elimination steps are fraction-free. Witness combinations are rational.
class ZEchelon {
public:
    using Coeff = Integer;
    using WitnessCoeff = Rational;
    using Row = std::vector<std::pair<std::uint32_t, Coeff>>;
    using Combo = std::vector<std::pair<std::uint32_t, WitnessCoeff>>;

    ZEchelon(std::size_t ncols, bool track) : track_(track), pivot_at_col_(ncols, -1) {}

    std::size_t rank() const { return rows_.size(); }
    bool tracking() const { return track_; }

    void reduce(Row& row, Combo& combo) const {
        const auto imul = [](const Integer& a, const Integer& b) { return a * b; };
        const auto iadd = [](const Integer& a, const Integer& b) { return a + b; };
        const auto izero = [](const Integer& a) { return a.is_zero(); };
        const auto qmul = [](const Rational& a, const Rational& b) { return a * b; };
        const auto qadd = [](const Rational& a, const Rational& b) { return a + b; };
        const auto qzero = [](const Rational& a) { return a.is_zero(); };
        while (!row.empty()) {
            const std::int32_t pr = pivot_at_col_[row.front().first];
            if (pr < 0) return;
            const Row& pivot = rows_[pr];
            const Integer& a = pivot.front().second; // positive
            const Integer& b = row.front().second;
            const Integer g = boost::multiprecision::gcd(a, b);
            const Integer alpha = a / g;
            const Integer beta = -(b / g);
            row = axpby(row, pivot, alpha, beta, imul, iadd, izero);
            if (track_)
                combo = axpby(combo, combos_[pr], Rational(alpha), Rational(beta),
                              qmul, qadd, qzero);
            strip_content(row, combo);
        }
    }

    bool insert(Row row, Combo combo) {
        reduce(row, combo);
        if (row.empty()) return false;
        strip_content(row, combo);
        pivot_at_col_[row.front().first] = static_cast<std::int32_t>(rows_.size());
        rows_.push_back(std::move(row));
        combos_.push_back(std::move(combo));
        return true;
    }

private:
    /// Divide the row by its content and make the leading entry positive;
    /// the witness combination is divided by the same factor.
    void strip_content(Row& row, Combo& combo) const {
        if (row.empty()) return;
        Integer g = 0;
        for (const auto& e : row) {
            g = boost::multiprecision::gcd(g, e.second);
            if (g == 1) break;
        }
        if (row.front().second < 0) g = -g;
        if (g == 1) return;
        for (auto& e : row) e.second /= g;
        if (track_) {
            const Rational rg(g);
            for (auto& e : combo) e.second /= rg;
        }
    }

    bool track_;
    std::vector<std::int32_t> pivot_at_col_;
    std::vector<Row> rows_;
    std::vector<Combo> combos_;
};

} // namespace detail

/// Exact incremental row echelon over the chosen field, with optional
/// witness tracking. Rows enter as sparse Scalar vectors; each inserted row
/// is associated with a caller-chosen source id, and membership tests can
/// report the exact linear combination of source rows that reproduces the
/// tested vector.
class ExactEchelon {
public:
    ExactEchelon(FieldSpec f, std::size_t ncols, bool track_witness = false)
        : field_(f), ncols_(ncols), impl_(make_impl(f, ncols, track_witness)) {}

    FieldSpec field() const { return field_; }
    std::size_t columns() const { return ncols_; }

    std::size_t rank() const {
        return std::visit([](const auto& e) { return e.rank(); }, impl_);
    }

    /// Inserts a row; returns true when it was independent of the rows seen
    /// so far (i.e. contributed a new pivot).
    bool insert(const ScalarRow& row, std::uint32_t source_id) {
        if (auto* z = std::get_if<detail::ZEchelon>(&impl_)) {
            auto [r, scale] = to_integer_row(row);
            detail::ZEchelon::Combo combo;
            if (z->tracking()) combo.emplace_back(source_id, scale);
            return z->insert(std::move(r), std::move(combo));
        }
        auto& fp = std::get<detail::FpEchelon>(impl_);
        detail::FpEchelon::Combo combo;
        if (fp.tracking()) combo.emplace_back(source_id, 1);
        return fp.insert(to_residue_row(row), std::move(combo));
    }

    struct Membership {
        bool member = false;
        /// source id -> coefficient, such that the tested vector equals
        /// sum(coefficient * source row). Filled only when tracking is on
        /// and member is true.
        std::vector<std::pair<std::uint32_t, Scalar>> witness;
    };

    /// Does the row lie in the span of the inserted rows? Does not modify
    /// the echelon; safe to call concurrently from several threads.
    Membership test_membership(const ScalarRow& row) const {
        Membership result;
        if (const auto* z = std::get_if<detail::ZEchelon>(&impl_)) {
            auto [r, scale] = to_integer_row(row);
            detail::ZEchelon::Combo combo;
            if (z->tracking()) combo.emplace_back(kSelf, scale);
            z->reduce(r, combo);
            result.member = r.empty();
            if (result.member && z->tracking()) {
                Rational self;
                for (const auto& e : combo)
                    if (e.first == kSelf) self = e.second;
                for (const auto& e : combo) {
                    if (e.first == kSelf) continue;
                    result.witness.emplace_back(e.first,
                                                Scalar::of(field_, Rational(-e.second / self)));
                }
            }
            return result;
        }
        const auto& fp = std::get<detail::FpEchelon>(impl_);
        auto r = to_residue_row(row);
        detail::FpEchelon::Combo combo;
        if (fp.tracking()) combo.emplace_back(kSelf, 1);
        fp.reduce(r, combo);
        result.member = r.empty();
        if (result.member && fp.tracking()) {
            const std::uint64_t p = fp.p();
            std::uint64_t self = 0;
            for (const auto& e : combo)
                if (e.first == kSelf) self = e.second;
            const std::uint64_t inv = detail::powmod_u64(self, p - 2, p);
            for (const auto& e : combo) {
                if (e.first == kSelf) continue;
                const std::uint64_t c =
                    detail::mulmod_u64(p - e.second % p, inv, p); // -e/self
                if (c != 0) result.witness.emplace_back(e.first, Scalar::of(field_, (long long)c));
            }
        }
        return result;
    }

private:
    static constexpr std::uint32_t kSelf = 0xffffffffu;

    static std::variant<detail::FpEchelon, detail::ZEchelon> make_impl(
        FieldSpec f, std::size_t ncols, bool track) {
        if (f.is_rationals())
            return std::variant<detail::FpEchelon, detail::ZEchelon>(
                std::in_place_type<detail::ZEchelon>, ncols, track);
        return std::variant<detail::FpEchelon, detail::ZEchelon>(
            std::in_place_type<detail::FpEchelon>, f.characteristic(), ncols, track);
    }

    /// Clears denominators and strips content; returns the integer row and
    /// the rational factor lambda with integer_row = lambda * scalar_row.
    std::pair<detail::ZEchelon::Row, Rational> to_integer_row(const ScalarRow& row) const {
        Integer lcm_den = 1;
        for (const auto& e : row) {
            const Integer& d = denominator(e.second.rational());
            lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
        }
        detail::ZEchelon::Row r;
        r.reserve(row.size());
        Integer content = 0;
        for (const auto& e : row) {
            const Rational& v = e.second.rational();
            Integer num = numerator(v) * (lcm_den / denominator(v));
            content = boost::multiprecision::gcd(content, num);
            r.emplace_back(e.first, std::move(num));
        }
        if (r.empty()) return {std::move(r), Rational(1)};
        if (r.front().second < 0) content = -content;
        if (content != 1)
            for (auto& e : r) e.second /= content;
        return {std::move(r), Rational(lcm_den, content)};
    }

    detail::FpEchelon::Row to_residue_row(const ScalarRow& row) const {
        detail::FpEchelon::Row r;
        r.reserve(row.size());
        for (const auto& e : row) r.emplace_back(e.first, e.second.residue());
        return r;
    }

    FieldSpec field_;
    std::size_t ncols_;
    std::variant<detail::FpEchelon, detail::ZEchelon> impl_;
};

/// Rank of a list of sparse vectors; stops early once `stop_at` is reached.
inline std::size_t exact_rank(FieldSpec f, std::size_t ncols,
                              const std::vector<ScalarRow>& rows,
                              std::optional<std::size_t> stop_at = std::nullopt) {
    ExactEchelon ech(f, ncols);
    std::uint32_t id = 0;
    for (const auto& row : rows) {
        ech.insert(row, id++);
        if (stop_at && ech.rank() >= *stop_at) break;
    }
    return ech.rank();
}

} // namespace oil

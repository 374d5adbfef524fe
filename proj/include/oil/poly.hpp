#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/matrix_point.hpp"

namespace oil {

/// 1-based coordinates of a matrix entry variable F[row, col].
struct VariableIndex {
    int row = 1;
    int col = 1;
    friend bool operator==(const VariableIndex&, const VariableIndex&) = default;
};

/// Monomial in the n*n matrix-entry variables, stored as a dense exponent
/// vector in row-major variable order. Equality is structural; the degree
/// is cached.
class Monomial {
public:
    explicit Monomial(int n)
        : n_(n), degree_(0), exp_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 1) throw argument_error("dimension must be positive");
    }

    static Monomial variable(int n, VariableIndex v, int power = 1) {
        Monomial m(n);
        if (power < 0) throw argument_error("negative exponent");
        m.set_exponent(v, power);
        return m;
    }

    int dimension() const { return n_; }
    int degree() const { return degree_; }
    int variable_count() const { return n_ * n_; }

    int exponent(VariableIndex v) const { return exp_[flat(v)]; }
    int exponent_flat(int k) const { return exp_[static_cast<std::size_t>(k)]; }

    void set_exponent(VariableIndex v, int e) {
        if (e < 0 || e > 0xffff) throw argument_error("exponent out of range");
        std::size_t k = flat(v);
        degree_ += e - exp_[k];
        exp_[k] = static_cast<std::uint16_t>(e);
    }

    /// Variable of flat index k, row-major: k = (row-1)*n + (col-1).
    VariableIndex variable_at(int k) const { return {k / n_ + 1, k % n_ + 1}; }

    Monomial times(const Monomial& o) const {
        require_same_dim(o);
        Monomial m(*this);
        for (std::size_t k = 0; k < exp_.size(); ++k) {
            const int e = m.exp_[k] + o.exp_[k];
            if (e > 0xffff) throw argument_error("exponent overflow");
            m.exp_[k] = static_cast<std::uint16_t>(e);
        }
        m.degree_ += o.degree_;
        return m;
    }

    bool divides(const Monomial& o) const {
        require_same_dim(o);
        for (std::size_t k = 0; k < exp_.size(); ++k)
            if (exp_[k] > o.exp_[k]) return false;
        return true;
    }

    /// this / o; requires o | this.
    Monomial divided_by(const Monomial& o) const {
        require_same_dim(o);
        Monomial m(*this);
        for (std::size_t k = 0; k < exp_.size(); ++k) {
            if (o.exp_[k] > m.exp_[k]) throw argument_error("monomial does not divide");
            m.exp_[k] = static_cast<std::uint16_t>(m.exp_[k] - o.exp_[k]);
        }
        m.degree_ -= o.degree_;
        return m;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        a.require_same_dim(b);
        Monomial m(a);
        for (std::size_t k = 0; k < m.exp_.size(); ++k)
            if (b.exp_[k] > m.exp_[k]) {
                m.degree_ += b.exp_[k] - m.exp_[k];
                m.exp_[k] = b.exp_[k];
            }
        return m;
    }

    bool is_constant() const { return degree_ == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.n_ == b.n_ && a.exp_ == b.exp_;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(n_);
        for (std::uint16_t e : exp_) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::size_t flat(VariableIndex v) const {
        if (v.row < 1 || v.row > n_ || v.col < 1 || v.col > n_)
            throw argument_error("variable index out of range");
        return static_cast<std::size_t>(v.row - 1) * n_ + (v.col - 1);
    }
    void require_same_dim(const Monomial& o) const {
        if (n_ != o.n_) throw dimension_mismatch("monomial dimensions differ");
    }

    int n_;
    int degree_;
    std::vector<std::uint16_t> exp_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Total orders on monomials. Both refine divisibility and are compatible
/// with multiplication. Variable ranking is row-major:
/// F[1,1] > F[1,2] > ... > F[n,n].
enum class MonomialOrder { degrevlex, lex };

/// Three-way comparison: negative when a < b, 0 when equal, positive when a > b.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
    if (a.dimension() != b.dimension())
        throw dimension_mismatch("comparing monomials of different dimension");
    const int k = a.variable_count();
    switch (order) {
    case MonomialOrder::degrevlex: {
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
        for (int i = k - 1; i >= 0; --i) {
            const int ea = a.exponent_flat(i), eb = b.exponent_flat(i);
            if (ea != eb) return ea > eb ? -1 : 1;
        }
        return 0;
    }
    case MonomialOrder::lex: {
        for (int i = 0; i < k; ++i) {
            const int ea = a.exponent_flat(i), eb = b.exponent_flat(i);
            if (ea != eb) return ea < eb ? -1 : 1;
        }
        return 0;
    }
    }
    throw argument_error("unknown monomial order");
}

inline MonomialOrder parse_order(std::string_view s) {
    if (s == "degrevlex") return MonomialOrder::degrevlex;
    if (s == "lex") return MonomialOrder::lex;
    throw parse_error("unknown monomial order: " + std::string(s));
}

/// Sparse multivariate polynomial over a fixed field in the n*n matrix
/// variables. Terms are kept in canonical form: sorted descending under
/// degrevlex, no zero coefficients. Immutable: all operations return new
/// values.
class Polynomial {
public:
    using Term = std::pair<Monomial, Scalar>;

    Polynomial(FieldSpec f, int n) : field_(f), n_(n) {
        if (n < 1) throw argument_error("dimension must be positive");
    }

    static Polynomial zero(FieldSpec f, int n) { return Polynomial(f, n); }

    static Polynomial constant(FieldSpec f, int n, const Scalar& c) {
        return term(f, n, Monomial(n), c);
    }

    static Polynomial variable(FieldSpec f, int n, VariableIndex v) {
        return term(f, n, Monomial::variable(n, v), Scalar::one(f));
    }

    static Polynomial term(FieldSpec f, int n, const Monomial& m, const Scalar& c) {
        Polynomial p(f, n);
        if (m.dimension() != n) throw dimension_mismatch("term dimension mismatch");
        if (c.field() != f) throw field_mismatch("term coefficient field mismatch");
        if (!c.is_zero()) p.terms_.emplace_back(m, c);
        return p;
    }

    FieldSpec field() const { return field_; }
    int dimension() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const Term& t : terms_) d = std::max(d, t.first.degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = terms_.front().first.degree();
        for (const Term& t : terms_)
            if (t.first.degree() != d) return false;
        return true;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial r(a.field_, a.n_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int cmp;
            if (i == a.terms_.size())
                cmp = -1;
            else if (j == b.terms_.size())
                cmp = 1;
            else
                cmp = compare(a.terms_[i].first, b.terms_[j].first,
                              MonomialOrder::degrevlex);
            if (cmp > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (cmp < 0) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                const Scalar c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(a.terms_[i].first, c);
                ++i;
                ++j;
            }
        }
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (Term& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        return a + (-b);
    }

    Polynomial scaled(const Scalar& c) const {
        if (c.field() != field_) throw field_mismatch("scale coefficient field mismatch");
        if (c.is_zero()) return zero(field_, n_);
        Polynomial r(*this);
        for (Term& t : r.terms_) t.second = t.second * c;
        return r;
    }

    /// Product with a single monomial; canonical order is preserved because
    /// the orders are compatible with multiplication.
    Polynomial times_monomial(const Monomial& m) const {
        Polynomial r(*this);
        for (Term& t : r.terms_) t.first = t.first.times(m);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        std::map<Monomial, Scalar, CanonicalGreater> acc;
        for (const Term& ta : a.terms_)
            for (const Term& tb : b.terms_) {
                const Monomial m = ta.first.times(tb.first);
                const Scalar c = ta.second * tb.second;
                auto it = acc.find(m);
                if (it == acc.end()) {
                    if (!c.is_zero()) acc.emplace(m, c);
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        Polynomial r(a.field_, a.n_);
        r.terms_.reserve(acc.size());
        for (auto& kv : acc) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Ring-homomorphism evaluation F[i,j] -> M(i,j).
    Scalar evaluate(const MatrixPoint& point) const {
        if (point.dimension() != n_) throw dimension_mismatch("evaluation point dimension");
        if (point.field() != field_) throw field_mismatch("evaluation point field");
        Scalar acc = Scalar::zero(field_);
        for (const Term& t : terms_) {
            Scalar v = t.second;
            for (int k = 0; k < t.first.variable_count(); ++k) {
                const int e = t.first.exponent_flat(k);
                if (e == 0) continue;
                const VariableIndex idx = t.first.variable_at(k);
                const Scalar& entry = point.at(idx.row, idx.col);
                if (entry.is_zero()) {
                    v = Scalar::zero(field_);
                    break;
                }
                for (int rep = 0; rep < e; ++rep) v = v * entry;
            }
            acc = acc + v;
        }
        return acc;
    }

    std::string to_string() const;

    struct CanonicalGreater {
        bool operator()(const Monomial& a, const Monomial& b) const {
            return compare(a, b, MonomialOrder::degrevlex) > 0;
        }
    };

    /// Internal: build from terms already canonical (sorted, nonzero).
    static Polynomial from_sorted_terms(FieldSpec f, int n, std::vector<Term> terms) {
        Polynomial p(f, n);
        p.terms_ = std::move(terms);
        return p;
    }

private:
    void require_compatible(const Polynomial& o) const {
        if (field_ != o.field_) throw field_mismatch("polynomial fields differ");
        if (n_ != o.n_) throw dimension_mismatch("polynomial dimensions differ");
    }

    FieldSpec field_;
    int n_;
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Text format.
//
//   poly   := term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := 'F[' int ',' int ']' ('^' int)?
//   coeff  := integer | integer '/' integer
//
// The writer emits canonical order (degrevlex descending) so that equal
// polynomials always serialize to identical bytes.
// ---------------------------------------------------------------------------

inline std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
        Scalar c = t.second;
        std::string sep;
        if (field_.is_rationals() && c.rational() < 0) {
            sep = first ? "-" : " - ";
            c = -c;
        } else {
            sep = first ? "" : " + ";
        }
        out += sep;
        std::string body;
        for (int k = 0; k < t.first.variable_count(); ++k) {
            const int e = t.first.exponent_flat(k);
            if (e == 0) continue;
            const VariableIndex v = t.first.variable_at(k);
            if (!body.empty()) body += "*";
            body += "F[" + std::to_string(v.row) + "," + std::to_string(v.col) + "]";
            if (e > 1) body += "^" + std::to_string(e);
        }
        if (body.empty()) {
            out += c.to_string();
        } else if (c.is_one()) {
            out += body;
        } else {
            out += c.to_string() + "*" + body;
        }
        first = false;
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, FieldSpec f, int n)
        : s_(text), field_(f), n_(n) {}

    Polynomial parse() {
        Polynomial acc = Polynomial::zero(field_, n_);
        skip_ws();
        bool negative = consume_sign();
        acc = acc + parse_term(negative);
        skip_ws();
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c != '+' && c != '-') throw parse_error(context("expected + or -"));
            ++pos_;
            skip_ws();
            acc = acc + parse_term(c == '-');
            skip_ws();
        }
        return acc;
    }

private:
    Polynomial parse_term(bool negative) {
        Scalar coeff = Scalar::one(field_);
        Monomial mono(n_);
        bool saw_any = false;
        if (peek_digit()) {
            coeff = parse_coeff();
            saw_any = true;
        }
        skip_ws();
        bool expect_factor = !saw_any;
        while (true) {
            if (!expect_factor) {
                if (pos_ < s_.size() && s_[pos_] == '*') {
                    ++pos_;
                    skip_ws();
                } else {
                    break;
                }
            }
            if (pos_ >= s_.size() || s_[pos_] != 'F')
                throw parse_error(context("expected factor F[i,j]"));
            parse_factor(mono);
            saw_any = true;
            expect_factor = false;
            skip_ws();
        }
        if (!saw_any) throw parse_error(context("empty term"));
        if (negative) coeff = -coeff;
        return Polynomial::term(field_, n_, mono, coeff);
    }

    void parse_factor(Monomial& mono) {
        expect('F');
        expect('[');
        skip_ws();
        const long long i = parse_int();
        skip_ws();
        expect(',');
        skip_ws();
        const long long j = parse_int();
        skip_ws();
        expect(']');
        int power = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            const long long e = parse_int();
            if (e < 1 || e > 0xffff) throw parse_error(context("bad exponent"));
            power = static_cast<int>(e);
        }
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw parse_error(context("variable index out of range for n=" +
                                      std::to_string(n_)));
        const VariableIndex v{static_cast<int>(i), static_cast<int>(j)};
        mono.set_exponent(v, mono.exponent(v) + power);
    }

    Scalar parse_coeff() {
        const Integer num = parse_integer();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            const Integer den = parse_integer();
            if (den == 0) throw parse_error(context("zero denominator"));
            return Scalar::of(field_, Rational(num, den));
        }
        return Scalar::of(field_, num);
    }

    Integer parse_integer() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start) throw parse_error(context("expected integer"));
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    long long parse_int() {
        return parse_integer().convert_to<long long>();
    }

    bool consume_sign() {
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            const bool neg = s_[pos_] == '-';
            ++pos_;
            skip_ws();
            return neg;
        }
        return false;
    }

    bool peek_digit() const {
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c)
            throw parse_error(context(std::string("expected '") + c + "'"));
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    std::string context(const std::string& msg) const {
        return msg + " at offset " + std::to_string(pos_) + " in \"" +
               std::string(s_) + "\"";
    }

    std::string_view s_;
    FieldSpec field_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Polynomial parse_polynomial(std::string_view text, FieldSpec f, int n) {
    return detail::PolyParser(text, f, n).parse();
}

// ---------------------------------------------------------------------------
// Graded components.
// ---------------------------------------------------------------------------

/// All monomials of one degree, sorted descending under a monomial order,
/// with O(1) position lookup. Column i of a coordinate vector refers to
/// the i-th monomial of this basis.
class MonomialBasis {
public:
    MonomialBasis(int n, int degree, MonomialOrder order = MonomialOrder::degrevlex)
        : n_(n), degree_(degree), order_(order) {
        if (degree < 0) throw argument_error("negative degree");
        Monomial scratch(n);
        emit(scratch, 0, degree);
        std::sort(monomials_.begin(), monomials_.end(),
                  [order](const Monomial& a, const Monomial& b) {
                      return compare(a, b, order) > 0;
                  });
        index_.reserve(monomials_.size());
        for (std::uint32_t i = 0; i < monomials_.size(); ++i)
            index_.emplace(monomials_[i], i);
    }

    int dimension() const { return n_; }
    int degree() const { return degree_; }
    MonomialOrder order() const { return order_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& at(std::size_t i) const { return monomials_[i]; }

    std::optional<std::uint32_t> index_of(const Monomial& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Number of monomials of the given degree in n*n variables.
    static Integer count(int n, int degree) {
        const std::uint64_t v = static_cast<std::uint64_t>(n) * n;
        return binom(v + degree - 1, degree);
    }

private:
    void emit(Monomial& scratch, int var, int remaining) {
        if (var == scratch.variable_count() - 1) {
            scratch.set_exponent(scratch.variable_at(var), remaining);
            monomials_.push_back(scratch);
            scratch.set_exponent(scratch.variable_at(var), 0);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            scratch.set_exponent(scratch.variable_at(var), e);
            emit(scratch, var + 1, remaining - e);
        }
        scratch.set_exponent(scratch.variable_at(var), 0);
    }

    int n_;
    int degree_;
    MonomialOrder order_;
    std::vector<Monomial> monomials_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

/// Sparse coordinate vector: (column, coefficient) pairs with strictly
/// increasing columns. Column 0 is the largest monomial, so the first entry
/// is the leading term.
using ScalarRow = std::vector<std::pair<std::uint32_t, Scalar>>;

inline ScalarRow coordinate_row(const Polynomial& f, const MonomialBasis& basis) {
    ScalarRow row;
    row.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        const auto idx = basis.index_of(t.first);
        if (!idx)
            throw argument_error("polynomial term of degree " +
                                 std::to_string(t.first.degree()) +
                                 " outside basis of degree " +
                                 std::to_string(basis.degree()));
        row.emplace_back(*idx, t.second);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
}

/// Coordinate vectors of {m*f : f in polys, m monomial of degree d - deg f}
/// inside the degree-d monomial basis. Inputs must be homogeneous of degree
/// <= d. Row order is deterministic: inputs in order, multipliers descending.
inline std::vector<ScalarRow> graded_component(std::span<const Polynomial> polys,
                                               int d,
                                               MonomialOrder order = MonomialOrder::degrevlex) {
    if (polys.empty()) return {};
    const int n = polys.front().dimension();
    const MonomialBasis target(n, d, order);
    std::vector<ScalarRow> rows;
    for (const Polynomial& f : polys) {
        if (f.is_zero()) throw argument_error("zero polynomial in graded component");
        if (!f.is_homogeneous()) throw argument_error("non-homogeneous input");
        if (f.dimension() != n) throw dimension_mismatch("mixed dimensions");
        const int df = f.degree();
        if (df > d)
            throw argument_error("generator degree exceeds component degree");
        const MonomialBasis multipliers(n, d - df, order);
        for (std::size_t i = 0; i < multipliers.size(); ++i)
            rows.push_back(coordinate_row(f.times_monomial(multipliers.at(i)), target));
    }
    return rows;
}

} // namespace oil

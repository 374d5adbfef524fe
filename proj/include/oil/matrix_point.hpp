#pragma once

#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"

namespace oil {

/// Dense n x n matrix of exact scalars; a point of the endomorphism space.
/// Indices are 1-based, matching the variable naming F[i,j].
class MatrixPoint {
public:
    MatrixPoint(FieldSpec f, int n)
        : field_(f), n_(n), a_(static_cast<std::size_t>(n) * n, Scalar::zero(f)) {
        if (n < 1) throw argument_error("matrix dimension must be positive");
    }

    static MatrixPoint identity(FieldSpec f, int n) {
        MatrixPoint m(f, n);
        for (int i = 1; i <= n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    FieldSpec field() const { return field_; }
    int dimension() const { return n_; }

    Scalar& at(int i, int j) {
        check_range(i, j);
        return a_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
    }
    const Scalar& at(int i, int j) const {
        check_range(i, j);
        return a_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
    }

    friend MatrixPoint operator*(const MatrixPoint& a, const MatrixPoint& b) {
        a.require_compatible(b);
        MatrixPoint c(a.field_, a.n_);
        for (int i = 1; i <= a.n_; ++i)
            for (int k = 1; k <= a.n_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 1; j <= a.n_; ++j)
                    c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
            }
        return c;
    }

    friend MatrixPoint operator+(const MatrixPoint& a, const MatrixPoint& b) {
        a.require_compatible(b);
        MatrixPoint c(a.field_, a.n_);
        for (int i = 1; i <= a.n_; ++i)
            for (int j = 1; j <= a.n_; ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
        return c;
    }

    MatrixPoint pow(unsigned e) const {
        MatrixPoint r = identity(field_, n_);
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    Scalar trace() const {
        Scalar t = Scalar::zero(field_);
        for (int i = 1; i <= n_; ++i) t = t + at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const Scalar& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    /// Exact rank by Gauss elimination (dense; intended for small n).
    int rank() const {
        std::vector<std::vector<Scalar>> w(n_, std::vector<Scalar>(n_, Scalar::zero(field_)));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) w[i][j] = at(i + 1, j + 1);
        int rank = 0;
        for (int col = 0; col < n_ && rank < n_; ++col) {
            int pivot = -1;
            for (int r = rank; r < n_; ++r)
                if (!w[r][col].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(w[rank], w[pivot]);
            const Scalar inv = w[rank][col].inverse();
            for (int r = rank + 1; r < n_; ++r) {
                if (w[r][col].is_zero()) continue;
                const Scalar factor = w[r][col] * inv;
                for (int j = col; j < n_; ++j)
                    w[r][j] = w[r][j] - factor * w[rank][j];
            }
            ++rank;
        }
        return rank;
    }

    friend bool operator==(const MatrixPoint& a, const MatrixPoint& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    void check_range(int i, int j) const {
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw argument_error("matrix index out of range");
    }
    void require_compatible(const MatrixPoint& o) const {
        if (field_ != o.field_) throw field_mismatch("matrix fields differ");
        if (n_ != o.n_) throw dimension_mismatch("matrix dimensions differ");
    }

    FieldSpec field_;
    int n_;
    std::vector<Scalar> a_;
};

} // namespace oil

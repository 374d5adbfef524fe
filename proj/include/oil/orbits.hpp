#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/genmat.hpp"
#include "oil/matrix_point.hpp"
#include "oil/parallel.hpp"
#include "oil/poly.hpp"

namespace oil {

/// Weakly decreasing sequence of positive integers.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw argument_error("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw argument_error("partition parts must be weakly decreasing");
        }
    }

    /// Parses "2,1".
    static Partition parse(std::string_view s) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t end = s.find(',', pos);
            if (end == std::string_view::npos) end = s.size();
            const std::string piece(s.substr(pos, end - pos));
            if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad partition: " + std::string(s));
            parts.push_back(std::stoi(piece));
            pos = end + 1;
        }
        if (parts.empty()) throw parse_error("empty partition");
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const {
        std::vector<int> out;
        if (parts_.empty()) return Partition();
        for (int i = 1; i <= parts_[0]; ++i) {
            int count = 0;
            for (int p : parts_)
                if (p >= i) ++count;
            out.push_back(count);
        }
        return Partition(std::move(out));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// The partition (e, ..., e, f) obtained from the division n = r*e + f.
inline Partition partition_mu(int n, int e) {
    if (n < 1) throw argument_error("n must be positive");
    if (e < 1 || e >= n) throw argument_error("partition_mu requires 1 <= e < n");
    const int r = n / e;
    const int f = n % e;
    std::vector<int> parts(r, e);
    if (f > 0) parts.push_back(f);
    return Partition(std::move(parts));
}

/// Dominance: every partial sum of a is at most that of b. Requires equal
/// weights.
inline bool dominance_leq(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight())
        throw argument_error("dominance compares partitions of equal weight");
    int sa = 0, sb = 0;
    const std::size_t len = std::max(a.parts().size(), b.parts().size());
    for (std::size_t i = 0; i < len; ++i) {
        sa += i < a.parts().size() ? a.parts()[i] : 0;
        sb += i < b.parts().size() ? b.parts()[i] : 0;
        if (sa > sb) return false;
    }
    return true;
}

/// All partitions of n, in reverse lexicographic order starting at (n).
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    const auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Block-diagonal nilpotent matrix whose blocks are upper shifts of the
/// part sizes.
inline MatrixPoint jordan_matrix(const Partition& lambda, FieldSpec field, int n) {
    if (lambda.weight() != n)
        throw argument_error("jordan_matrix: partition weight must equal n");
    MatrixPoint m(field, n);
    int offset = 0;
    for (int part : lambda.parts()) {
        for (int k = 1; k < part; ++k)
            m.at(offset + k, offset + k + 1) = Scalar::one(field);
        offset += part;
    }
    return m;
}

namespace detail {

/// Over Q: a product of seeded integer elementary matrices with entries in
/// [-3, 3]; unimodular, so the inverse is the reversed product of the
/// inverse elementary factors and stays integral.
inline std::pair<MatrixPoint, MatrixPoint> conjugator_rationals(FieldSpec f, int n,
                                                                std::mt19937_64& rng) {
    MatrixPoint g = MatrixPoint::identity(f, n);
    MatrixPoint ginv = MatrixPoint::identity(f, n);
    const int steps = 3 * n;
    for (int s = 0; s < steps; ++s) {
        int i = 1 + static_cast<int>(rng() % n);
        int j = 1 + static_cast<int>(rng() % n);
        if (i == j) j = j % n + 1;
        long long c = static_cast<long long>(rng() % 6) - 3;
        if (c >= 0) ++c; // c in {-3,-2,-1,1,2,3}
        MatrixPoint el = MatrixPoint::identity(f, n);
        el.at(i, j) = Scalar::of(f, c);
        MatrixPoint elinv = MatrixPoint::identity(f, n);
        elinv.at(i, j) = Scalar::of(f, -c);
        g = el * g;
        ginv = ginv * elinv;
    }
    return {g, ginv};
}

/// Over F_p: rejection-sample a matrix until invertible, inverse by
/// Gauss-Jordan.
inline std::pair<MatrixPoint, MatrixPoint> conjugator_prime_field(FieldSpec f, int n,
                                                                  std::mt19937_64& rng) {
    const std::uint64_t p = f.characteristic();
    for (;;) {
        MatrixPoint g(f, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                g.at(i, j) = Scalar::of(f, static_cast<long long>(rng() % p));
        if (g.rank() != n) continue;
        // Gauss-Jordan on [g | I]
        std::vector<std::vector<Scalar>> w(n, std::vector<Scalar>(2 * n, Scalar::zero(f)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) w[i][j] = g.at(i + 1, j + 1);
            w[i][n + i] = Scalar::one(f);
        }
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            while (w[pivot][col].is_zero()) ++pivot;
            std::swap(w[col], w[pivot]);
            const Scalar inv = w[col][col].inverse();
            for (int j = 0; j < 2 * n; ++j) w[col][j] = w[col][j] * inv;
            for (int r = 0; r < n; ++r) {
                if (r == col || w[r][col].is_zero()) continue;
                const Scalar factor = w[r][col];
                for (int j = 0; j < 2 * n; ++j)
                    w[r][j] = w[r][j] - factor * w[col][j];
            }
        }
        MatrixPoint ginv(f, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ginv.at(i + 1, j + 1) = w[i][n + j];
        return {g, ginv};
    }
}

} // namespace detail

/// g M g^{-1} for an invertible g generated deterministically from the seed.
inline MatrixPoint random_conjugate(const MatrixPoint& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto [g, ginv] = m.field().is_rationals()
                               ? detail::conjugator_rationals(m.field(), m.dimension(), rng)
                               : detail::conjugator_prime_field(m.field(), m.dimension(), rng);
    return g * m * ginv;
}

/// Jordan type of a nilpotent matrix, read off the rank sequence of powers:
/// the number of blocks of size >= k is rank(M^{k-1}) - rank(M^k).
inline Partition jordan_type(const MatrixPoint& m) {
    const int n = m.dimension();
    if (!m.pow(n).is_zero()) throw argument_error("jordan_type: matrix is not nilpotent");
    std::vector<int> ranks{n};
    MatrixPoint power = m;
    while (ranks.back() > 0) {
        ranks.push_back(power.rank());
        power = power * m;
    }
    std::vector<int> block_counts; // c_k = #blocks of size >= k
    for (std::size_t k = 1; k < ranks.size(); ++k)
        block_counts.push_back(ranks[k - 1] - ranks[k]);
    std::vector<int> parts;
    for (int j = 1; j <= (block_counts.empty() ? 0 : block_counts[0]); ++j) {
        int count = 0;
        for (int c : block_counts)
            if (c >= j) ++count;
        parts.push_back(count);
    }
    return Partition(std::move(parts));
}

/// Result of evaluating a generator family on sampled points of one orbit.
struct VanishingReport {
    Partition lambda;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<bool> generator_vanishes; // per generator, across all points
    bool all_zero = false;

    struct Witness {
        std::size_t generator_index;
        int sample_index; // -1 the Jordan point itself, else the sample number
        MatrixPoint point;
        Scalar value;
    };
    std::optional<Witness> witness; // first nonzero in scan order
};

/// Evaluates every generator at the Jordan matrix of lambda and at `samples`
/// seeded conjugates of it. The point of sample index k uses seed + k, so
/// parallel and serial runs agree.
inline VanishingReport vanishing_report(const GeneratorSet& gens, const Partition& lambda,
                                        int samples, std::uint64_t seed) {
    const int n = gens.n;
    const FieldSpec field = gens.field;
    if (lambda.weight() != n)
        throw argument_error("vanishing_report: partition weight must equal n");

    VanishingReport report;
    report.lambda = lambda;
    report.samples = samples;
    report.seed = seed;
    report.generator_vanishes.assign(gens.entries.size(), true);

    const MatrixPoint base = jordan_matrix(lambda, field, n);
    const auto point_at = [&](int sample_index) {
        return sample_index < 0
                   ? base
                   : random_conjugate(base, seed + static_cast<std::uint64_t>(sample_index));
    };

    // nonzero_at[k][g] covers point index k (0 = Jordan point, k >= 1 =
    // sample k-1)
    std::vector<std::vector<char>> nonzero_at(
        static_cast<std::size_t>(samples) + 1,
        std::vector<char>(gens.entries.size(), 0));
    parallel_for(static_cast<std::size_t>(samples) + 1, [&](std::size_t k) {
        const MatrixPoint pt = point_at(static_cast<int>(k) - 1);
        for (std::size_t g = 0; g < gens.entries.size(); ++g)
            if (!gens.entries[g].poly.evaluate(pt).is_zero()) nonzero_at[k][g] = 1;
    });

    report.all_zero = true;
    for (std::size_t k = 0; k < nonzero_at.size(); ++k)
        for (std::size_t g = 0; g < gens.entries.size(); ++g)
            if (nonzero_at[k][g]) {
                report.all_zero = false;
                report.generator_vanishes[g] = false;
                if (!report.witness) {
                    const int sample_index = static_cast<int>(k) - 1;
                    const MatrixPoint pt = point_at(sample_index);
                    report.witness = VanishingReport::Witness{
                        g, sample_index, pt, gens.entries[g].poly.evaluate(pt)};
                }
            }
    return report;
}

} // namespace oil

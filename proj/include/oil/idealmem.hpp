#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "oil/errors.hpp"
#include "oil/fields.hpp"
#include "oil/linalg.hpp"
#include "oil/poly.hpp"

namespace oil {

/// Ideal generated by homogeneous nonzero polynomials over one field and
/// dimension. Immutable.
class HomogeneousIdeal {
public:
    HomogeneousIdeal(FieldSpec f, int n, std::vector<Polynomial> generators)
        : field_(f), n_(n), gens_(std::move(generators)) {
        for (const Polynomial& g : gens_) {
            if (g.field() != f) throw field_mismatch("generator field differs from ideal");
            if (g.dimension() != n)
                throw dimension_mismatch("generator dimension differs from ideal");
            if (g.is_zero()) throw argument_error("zero generator");
            if (!g.is_homogeneous()) throw argument_error("non-homogeneous generator");
        }
    }

    FieldSpec field() const { return field_; }
    int dimension() const { return n_; }
    const std::vector<Polynomial>& generators() const { return gens_; }

private:
    FieldSpec field_;
    int n_;
    std::vector<Polynomial> gens_;
};

/// Explicit configuration of the graded engine. Hitting a cap raises
/// resource_limit, which callers must surface as `inconclusive`.
struct MacaulayLimits {
    int max_degree = 16;
    std::size_t max_rows = 500000;
};

/// Exact membership certificate: f = sum coefficient * multiplier * generator.
struct MembershipCertificate {
    struct Item {
        std::size_t generator;
        Monomial multiplier;
        Scalar coefficient;
    };
    std::vector<Item> items;
};

inline Polynomial reexpand(const HomogeneousIdeal& ideal,
                           const MembershipCertificate& cert) {
    Polynomial acc = Polynomial::zero(ideal.field(), ideal.dimension());
    for (const auto& item : cert.items)
        acc = acc + ideal.generators()[item.generator]
                        .times_monomial(item.multiplier)
                        .scaled(item.coefficient);
    return acc;
}

/// Degree-graded membership engine: the degree-d component of the ideal is
/// the span of {m * g}, deg(m g) = d, and membership is an exact rank
/// question decided by incremental row echelon. Echelon forms are cached
/// per degree, so batches of queries against one ideal amortize well.
class MacaulayEngine {
public:
    explicit MacaulayEngine(HomogeneousIdeal ideal, MacaulayLimits limits = {},
                            bool track_witness = false)
        : ideal_(std::move(ideal)), limits_(limits), track_(track_witness) {}

    const HomogeneousIdeal& ideal() const { return ideal_; }

    /// Exact membership of a homogeneous polynomial.
    bool member(const Polynomial& f) { return test(f).member; }

    /// Membership with the explicit combination; empty optional when f is
    /// not a member. Requires the engine to have been built with witness
    /// tracking.
    std::optional<MembershipCertificate> member_with_witness(const Polynomial& f) {
        if (!track_) throw argument_error("engine built without witness tracking");
        auto res = test(f);
        if (!res.member) return std::nullopt;
        return std::move(res.certificate);
    }

    /// dim of the degree-d graded component of the ideal.
    std::size_t graded_dimension(int d) { return degree_data(d).full_rank; }

    /// dim of A_1 * I_{d-1} inside degree d.
    std::size_t shifted_dimension(int d) { return degree_data(d).shifted_rank; }

    /// Number of minimal generators the ideal needs in degree d, given its
    /// listed generators: dim(I_d) - dim(A_1 * I_{d-1}).
    std::size_t minimal_generator_count(int d) {
        const DegreeData& data = degree_data(d);
        return data.full_rank - data.shifted_rank;
    }

private:
    struct DegreeData {
        std::unique_ptr<MonomialBasis> basis;
        std::unique_ptr<ExactEchelon> echelon;
        // source id -> (generator index, multiplier)
        std::vector<std::pair<std::size_t, Monomial>> sources;
        std::size_t shifted_rank = 0;
        std::size_t full_rank = 0;
    };

    struct TestResult {
        bool member = false;
        std::optional<MembershipCertificate> certificate;
    };

    TestResult test(const Polynomial& f) {
        if (f.field() != ideal_.field()) throw field_mismatch("query field differs");
        if (f.dimension() != ideal_.dimension())
            throw dimension_mismatch("query dimension differs");
        if (!f.is_homogeneous()) throw argument_error("membership needs homogeneous input");
        TestResult result;
        if (f.is_zero()) {
            result.member = true;
            if (track_) result.certificate = MembershipCertificate{};
            return result;
        }
        const DegreeData& data = degree_data(f.degree());
        const ScalarRow row = coordinate_row(f, *data.basis);
        auto res = data.echelon->test_membership(row);
        result.member = res.member;
        if (res.member && track_) {
            MembershipCertificate cert;
            for (const auto& [sid, coeff] : res.witness) {
                const auto& src = data.sources[sid];
                cert.items.push_back({src.first, src.second, coeff});
            }
            result.certificate = std::move(cert);
        }
        return result;
    }

    const DegreeData& degree_data(int d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        if (d > limits_.max_degree)
            throw resource_limit("degree " + std::to_string(d) + " exceeds cap " +
                                 std::to_string(limits_.max_degree));

        const int n = ideal_.dimension();
        Integer expected_rows = 0;
        for (const Polynomial& g : ideal_.generators()) {
            if (g.degree() > d) continue;
            expected_rows += MonomialBasis::count(n, d - g.degree());
        }
        if (expected_rows > Integer(limits_.max_rows))
            throw resource_limit("degree " + std::to_string(d) + " needs " +
                                 expected_rows.str() + " rows, cap is " +
                                 std::to_string(limits_.max_rows));

        DegreeData data;
        data.basis = std::make_unique<MonomialBasis>(n, d);
        data.echelon = std::make_unique<ExactEchelon>(ideal_.field(), data.basis->size(), track_);

        // Rows with multiplier degree >= 1 go first so that the rank of
        // A_1 * I_{d-1} can be read off before the degree-d generators enter.
        const auto insert_rows = [&](bool shifted_pass) {
            for (std::size_t gi = 0; gi < ideal_.generators().size(); ++gi) {
                const Polynomial& g = ideal_.generators()[gi];
                const int md = d - g.degree();
                if (md < 0) continue;
                if (shifted_pass ? md < 1 : md != 0) continue;
                const MonomialBasis multipliers(n, md);
                for (std::size_t k = 0; k < multipliers.size(); ++k) {
                    const Monomial& m = multipliers.at(k);
                    const std::uint32_t sid =
                        static_cast<std::uint32_t>(data.sources.size());
                    data.sources.emplace_back(gi, m);
                    data.echelon->insert(
                        coordinate_row(g.times_monomial(m), *data.basis), sid);
                }
            }
        };
        insert_rows(/*shifted_pass=*/true);
        data.shifted_rank = data.echelon->rank();
        insert_rows(/*shifted_pass=*/false);
        data.full_rank = data.echelon->rank();

        return cache_.emplace(d, std::move(data)).first->second;
    }

    HomogeneousIdeal ideal_;
    MacaulayLimits limits_;
    bool track_;
    std::map<int, DegreeData> cache_;
};

/// One-shot membership.
inline bool member(const HomogeneousIdeal& ideal, const Polynomial& f,
                   MacaulayLimits limits = {}) {
    MacaulayEngine engine(ideal, limits);
    return engine.member(f);
}

/// Two homogeneous ideals are equal iff each generator of one is a member
/// of the other.
inline bool ideal_equal(const HomogeneousIdeal& a, const HomogeneousIdeal& b,
                        MacaulayLimits limits = {}) {
    if (a.field() != b.field()) throw field_mismatch("comparing ideals over different fields");
    if (a.dimension() != b.dimension())
        throw dimension_mismatch("comparing ideals of different dimension");
    MacaulayEngine ea(a, limits), eb(b, limits);
    for (const Polynomial& g : a.generators())
        if (!eb.member(g)) return false;
    for (const Polynomial& g : b.generators())
        if (!ea.member(g)) return false;
    return true;
}

inline std::size_t minimal_generator_count(const HomogeneousIdeal& ideal, int d,
                                           MacaulayLimits limits = {}) {
    MacaulayEngine engine(ideal, limits);
    return engine.minimal_generator_count(d);
}

} // namespace oil

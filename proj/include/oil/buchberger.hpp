#pragma once

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "oil/errors.hpp"
#include "oil/idealmem.hpp"
#include "oil/poly.hpp"

namespace oil {

struct BuchbergerLimits {
    std::size_t max_pairs = 200000;
    std::size_t max_basis = 5000;
    int max_degree = 40;
};

struct GroebnerBasis {
    MonomialOrder order = MonomialOrder::degrevlex;
    std::vector<Polynomial> basis;
    bool reduced = false;
};

namespace detail {

/// Terms sorted descending under the active order (which may differ from
/// the canonical storage order of Polynomial).
struct OPoly {
    std::vector<Polynomial::Term> terms;
    bool empty() const { return terms.empty(); }
    const Monomial& lm() const { return terms.front().first; }
    const Scalar& lc() const { return terms.front().second; }
};

inline OPoly to_opoly(const Polynomial& p, MonomialOrder order) {
    OPoly o{p.terms()};
    std::sort(o.terms.begin(), o.terms.end(),
              [order](const Polynomial::Term& a, const Polynomial::Term& b) {
                  return compare(a.first, b.first, order) > 0;
              });
    return o;
}

inline Polynomial to_polynomial(const OPoly& o, FieldSpec f, int n) {
    auto terms = o.terms;
    std::sort(terms.begin(), terms.end(),
              [](const Polynomial::Term& a, const Polynomial::Term& b) {
                  return compare(a.first, b.first, MonomialOrder::degrevlex) > 0;
              });
    return Polynomial::from_sorted_terms(f, n, std::move(terms));
}

/// h - c * m * g, merged under the active order.
inline OPoly subtract_multiple(const OPoly& h, const OPoly& g, const Scalar& c,
                               const Monomial& m, MonomialOrder order) {
    OPoly out;
    out.terms.reserve(h.terms.size() + g.terms.size());
    std::size_t i = 0, j = 0;
    while (i < h.terms.size() || j < g.terms.size()) {
        int cmp;
        Monomial gm = j < g.terms.size() ? g.terms[j].first.times(m) : Monomial(1);
        if (i == h.terms.size())
            cmp = -1;
        else if (j == g.terms.size())
            cmp = 1;
        else
            cmp = compare(h.terms[i].first, gm, order);
        if (cmp > 0) {
            out.terms.push_back(h.terms[i++]);
        } else if (cmp < 0) {
            out.terms.emplace_back(gm, -(c * g.terms[j].second));
            ++j;
        } else {
            const Scalar v = h.terms[i].second - c * g.terms[j].second;
            if (!v.is_zero()) out.terms.emplace_back(h.terms[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

/// Full division remainder of h by the basis.
inline OPoly reduce_full(OPoly h, const std::vector<OPoly>& basis, MonomialOrder order,
                         std::size_t skip = static_cast<std::size_t>(-1)) {
    OPoly remainder;
    while (!h.empty()) {
        bool divided = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == skip || basis[k].empty()) continue;
            if (!basis[k].lm().divides(h.lm())) continue;
            const Monomial m = h.lm().divided_by(basis[k].lm());
            const Scalar c = h.lc() / basis[k].lc();
            h = subtract_multiple(h, basis[k], c, m, order);
            divided = true;
            break;
        }
        if (!divided) {
            remainder.terms.push_back(h.terms.front());
            h.terms.erase(h.terms.begin());
        }
    }
    return remainder;
}

inline void make_monic(OPoly& p) {
    if (p.empty() || p.lc().is_one()) return;
    const Scalar inv = p.lc().inverse();
    for (auto& t : p.terms) t.second = t.second * inv;
}

} // namespace detail

/// Buchberger's algorithm with the coprime-leading-term criterion and
/// normal (lowest lcm degree first) pair selection; the returned basis is
/// the unique reduced basis for the ideal and order. Resource caps raise
/// resource_limit, distinct from any mathematical failure.
inline GroebnerBasis buchberger(const HomogeneousIdeal& ideal, MonomialOrder order,
                                BuchbergerLimits limits = {}) {
    using detail::OPoly;
    const FieldSpec f = ideal.field();
    const int n = ideal.dimension();

    std::vector<OPoly> basis;
    for (const Polynomial& g : ideal.generators()) {
        OPoly o = detail::to_opoly(g, order);
        detail::make_monic(o);
        basis.push_back(std::move(o));
    }

    // (lcm degree, i, j), processed smallest degree first
    std::set<std::tuple<int, std::size_t, std::size_t>> pairs;
    const auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (basis[i].empty()) continue;
            const Monomial l = Monomial::lcm(basis[i].lm(), basis[j].lm());
            pairs.emplace(l.degree(), i, j);
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        const auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        if (++processed > limits.max_pairs)
            throw resource_limit("buchberger: pair cap exceeded");
        if (basis[i].empty() || basis[j].empty()) continue;

        const Monomial l = Monomial::lcm(basis[i].lm(), basis[j].lm());
        if (l.degree() == basis[i].lm().degree() + basis[j].lm().degree())
            continue; // coprime leading terms, S-polynomial reduces to zero
        if (l.degree() > limits.max_degree)
            throw resource_limit("buchberger: degree cap exceeded");

        // S(i, j) with monic basis elements
        OPoly s = detail::subtract_multiple(
            OPoly{}, basis[i], -Scalar::one(f), l.divided_by(basis[i].lm()), order);
        s = detail::subtract_multiple(s, basis[j], Scalar::one(f),
                                      l.divided_by(basis[j].lm()), order);
        OPoly r = detail::reduce_full(std::move(s), basis, order);
        if (r.empty()) continue;
        detail::make_monic(r);
        basis.push_back(std::move(r));
        if (basis.size() > limits.max_basis)
            throw resource_limit("buchberger: basis cap exceeded");
        push_pairs(basis.size() - 1);
    }

    // Interreduce to the reduced basis.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k].empty()) continue;
            OPoly r = detail::reduce_full(basis[k], basis, order, k);
            detail::make_monic(r);
            if (!(r.terms == basis[k].terms)) {
                basis[k] = std::move(r);
                changed = true;
            }
        }
    }

    GroebnerBasis result;
    result.order = order;
    result.reduced = true;
    std::vector<OPoly> kept;
    for (auto& o : basis)
        if (!o.empty()) kept.push_back(std::move(o));
    std::sort(kept.begin(), kept.end(), [order](const OPoly& a, const OPoly& b) {
        return compare(a.lm(), b.lm(), order) < 0;
    });
    for (const auto& o : kept) result.basis.push_back(detail::to_polynomial(o, f, n));
    return result;
}

/// Remainder of f on division by the basis; zero iff f is a member when the
/// basis is a Groebner basis for its ideal.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
    if (gb.basis.empty()) return f;
    const FieldSpec field = f.field();
    const int n = f.dimension();
    std::vector<detail::OPoly> basis;
    for (const Polynomial& g : gb.basis) basis.push_back(detail::to_opoly(g, gb.order));
    detail::OPoly r =
        detail::reduce_full(detail::to_opoly(f, gb.order), basis, gb.order);
    return detail::to_polynomial(r, field, n);
}

} // namespace oil

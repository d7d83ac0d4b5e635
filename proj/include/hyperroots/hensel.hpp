#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/matrix.hpp>
#include <hyperroots/resultants.hpp>
#include <hyperroots/upoly.hpp>

namespace hyperroots
{

// Coprime monic factors of a family at the origin.
struct SplitSeed {
    RatPoly p0;
    RatPoly q0;
};

struct LiftedSplit {
    MonicFamily p;
    MonicFamily q;
    // Coefficients of R - P Q, a_1..a_d; zero on retained terms.
    std::vector<Series> residual;
    // Valuation of the residual before each Newton step.
    std::vector<int> residual_valuations;
};

namespace detail
{

inline SeriesPoly<Rat> constant_poly(int nvars, const RatPoly &p, int trunc)
{
    SeriesPoly<Rat> out;
    for (const auto &c : p.coeffs()) {
        out.push_back(Series::constant(nvars, c, trunc));
    }
    return out;
}

inline int poly_valuation(const SeriesPoly<Rat> &p)
{
    int v = Valuation::infinite_order;
    for (const auto &c : p) {
        v = std::min(v, c.valuation().order);
    }
    return v;
}

} // namespace detail

// Lifts R(0) = P0 Q0 to R = P Q over the parameter series ring by Newton's
// method on the coefficient map. Each step solves dP Q + P dQ = R - P Q,
// whose matrix is the Sylvester matrix of (Q, P), a unit at the origin.
// With the residual of order v, the matrix is only needed below degree v
// and the correction below degree 2v.
inline LiftedSplit split_at_point(const MonicFamily &r, const SplitSeed &seed, int order)
{
    const int n = r.num_vars();
    const int p = seed.p0.degree();
    const int q = seed.q0.degree();
    if (p < 1 || q < 1 || p + q != r.degree() || seed.p0.leading() != 1 || seed.q0.leading() != 1) {
        raise(errc::invalid_argument, "seed factors must be monic of positive degrees summing to the family degree");
    }
    if (!(seed.p0 * seed.q0 == r.at_origin())) {
        raise(errc::no_factorization, "seed product differs from the family at the origin");
    }
    if (is_zero(resultant(seed.p0, seed.q0))) {
        raise(errc::not_coprime, "seed factors share a root");
    }
    const int t = std::min(order, r.trunc_order());
    if (t == Series::exact) {
        raise(errc::invalid_argument, "lifting needs a finite truncation order");
    }
    const SeriesPoly<Rat> target = r.truncated(t).as_poly();
    SeriesPoly<Rat> pp = detail::constant_poly(n, seed.p0, t);
    SeriesPoly<Rat> qq = detail::constant_poly(n, seed.q0, t);
    LiftedSplit out;
    for (int step = 0; step < 64; ++step) {
        SeriesPoly<Rat> e = poly_sub(target, poly_mul(pp, qq));
        e.resize(static_cast<std::size_t>(p + q), Series(n, t));
        const int v = detail::poly_valuation(e);
        out.residual_valuations.push_back(v);
        if (v == Valuation::infinite_order) {
            break;
        }
        const int lo = std::min(t, v - 1);
        const int hi = v > t / 2 ? t : 2 * v - 1;
        // Unknowns: dP_0..dP_{p-1}, dQ_0..dQ_{q-1}; equation k is [z^k].
        const auto dim = static_cast<std::size_t>(p + q);
        Matrix<Series> m(dim, dim, Series(n));
        for (int j = 0; j < p; ++j) {
            for (int i = 0; i <= q; ++i) {
                m(static_cast<std::size_t>(i + j), static_cast<std::size_t>(j)) = qq[static_cast<std::size_t>(i)].truncated(lo).as_exact().truncated(hi);
            }
        }
        for (int j = 0; j < q; ++j) {
            for (int i = 0; i <= p; ++i) {
                m(static_cast<std::size_t>(i + j), static_cast<std::size_t>(p + j)) = pp[static_cast<std::size_t>(i)].truncated(lo).as_exact().truncated(hi);
            }
        }
        std::vector<Series> rhs;
        for (const auto &c : e) {
            rhs.push_back(c.truncated(hi));
        }
        auto delta = solve_unit_pivot(std::move(m), std::move(rhs));
        for (int j = 0; j < p; ++j) {
            pp[static_cast<std::size_t>(j)] += delta[static_cast<std::size_t>(j)].truncated(hi).as_exact();
        }
        for (int j = 0; j < q; ++j) {
            qq[static_cast<std::size_t>(j)] += delta[static_cast<std::size_t>(p + j)].truncated(hi).as_exact();
        }
    }
    out.p = MonicFamily::from_poly(pp);
    out.q = MonicFamily::from_poly(qq);
    MonicFamily prod = family_product(out.p, out.q);
    for (int i = 1; i <= r.degree(); ++i) {
        out.residual.push_back(r.a(i).truncated(t) - prod.a(i));
    }
    return out;
}

// One factor of a cluster split: either the roots near a rational value
// `center` (with multiplicity), or a group of simple irrational roots.
struct ClusterFactor {
    MonicFamily family;
    std::optional<Rat> center;
    int multiplicity = 1;
};

// Seeds for cluster_split: (z - c)^m per rational root of P(0, z), plus one
// factor holding all simple irrational roots.
inline std::vector<std::pair<RatPoly, std::optional<Rat>>> cluster_seeds(const RatPoly &p0)
{
    std::vector<std::pair<RatPoly, std::optional<Rat>>> seeds;
    RatPoly irrational = RatPoly::constant(Rat(1));
    for (const auto &[f, mult] : squarefree_decomposition(p0)) {
        RatPoly rest = f;
        for (const auto &[c, one] : rational_roots(f)) {
            (void)one;
            seeds.emplace_back(RatPoly::from_roots(std::vector<Rat>(static_cast<std::size_t>(mult), c)), c);
            rest = divmod(rest, RatPoly(std::vector<Rat>{-c, Rat(1)})).first;
        }
        if (rest.degree() > 0) {
            if (mult > 1) {
                raise(errc::irrational_cluster,
                      "repeated irrational root at the origin (factor " + rest.to_string() + ")");
            }
            irrational = irrational * rest;
        }
    }
    if (irrational.degree() > 0) {
        seeds.emplace_back(irrational, std::nullopt);
    }
    return seeds;
}

// Splits P into factors, one per root cluster of P(0, z).
inline std::vector<ClusterFactor> cluster_split(const MonicFamily &p, int order)
{
    const RatPoly p0 = p.at_origin();
    auto seeds = cluster_seeds(p0);
    int distinct = 0;
    for (const auto &[f, c] : seeds) {
        distinct += c ? 1 : f.degree();
    }
    if (distinct < 2) {
        raise(errc::single_cluster, "a single distinct root at the origin");
    }
    std::vector<ClusterFactor> out;
    MonicFamily rest = p;
    RatPoly rest0 = p0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto &[f, c] = seeds[i];
        const int mult = c ? f.degree() : 1;
        if (i + 1 == seeds.size()) {
            out.push_back({rest, c, mult});
            break;
        }
        RatPoly other = divmod(rest0, f).first;
        LiftedSplit ls = split_at_point(rest, SplitSeed{f, other}, order);
        out.push_back({ls.p, c, mult});
        rest = ls.q;
        rest0 = other;
    }
    return out;
}

struct CoefficientMap {
    int p = 0;
    int q = 0;
    // Generic monic factors with coefficient variables a_1..a_p, b_1..b_q.
    SeriesPoly<Rat> pa;
    SeriesPoly<Rat> qb;
    // Coefficients c_1..c_{p+q} of the product.
    std::vector<Series> product;
    Matrix<Series> jacobian;
};

// The coefficient map (a, b) -> coefficients of P_a Q_b with its Jacobian,
// as polynomials in p + q variables.
inline CoefficientMap coefficient_map(int p, int q)
{
    if (p < 1 || q < 1 || p + q > Monomial::max_vars) {
        raise(errc::invalid_argument, "coefficient map needs 1 <= p, q and p + q <= 8");
    }
    const int n = p + q;
    CoefficientMap cm;
    cm.p = p;
    cm.q = q;
    cm.pa.assign(static_cast<std::size_t>(p + 1), Series(n));
    cm.qb.assign(static_cast<std::size_t>(q + 1), Series(n));
    cm.pa[static_cast<std::size_t>(p)] = Series::constant(n, Rat(1));
    cm.qb[static_cast<std::size_t>(q)] = Series::constant(n, Rat(1));
    for (int i = 1; i <= p; ++i) {
        cm.pa[static_cast<std::size_t>(p - i)] = Series::variable(n, i - 1);
    }
    for (int i = 1; i <= q; ++i) {
        cm.qb[static_cast<std::size_t>(q - i)] = Series::variable(n, p + i - 1);
    }
    SeriesPoly<Rat> prod = poly_mul(cm.pa, cm.qb);
    for (int k = 1; k <= n; ++k) {
        cm.product.push_back(prod[static_cast<std::size_t>(n - k)]);
    }
    cm.jacobian = Matrix<Series>(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Series(n));
    for (int k = 0; k < n; ++k) {
        for (int v = 0; v < n; ++v) {
            cm.jacobian(static_cast<std::size_t>(k), static_cast<std::size_t>(v)) =
                derivative(cm.product[static_cast<std::size_t>(k)], v);
        }
    }
    return cm;
}

} // namespace hyperroots

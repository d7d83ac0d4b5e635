#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/hensel.hpp>
#include <hyperroots/hyperbolic.hpp>

namespace hyperroots
{

namespace detail
{

inline int distinct_roots_at_origin(const MonicFamily &p)
{
    int n = 0;
    for (const auto &[f, m] : squarefree_decomposition(p.at_origin())) {
        n += f.degree();
    }
    return n;
}

inline void append(RootBranchSet &to, RootBranchSet &&from)
{
    for (auto &b : from.branches) {
        to.branches.push_back(std::move(b));
    }
    for (auto &g : from.groups) {
        to.groups.push_back(std::move(g));
    }
    for (auto &l : from.chart_log) {
        to.chart_log.push_back(std::move(l));
    }
}

// Roots s + (unknown of order >= ceil((T + 1) / 2)) when a_2 vanishes to
// order T: all roots coincide with the shift to that precision.
inline RootBranchSet coincident_roots(const MonicFamily &q, const Series &shift)
{
    for (int i = 3; i <= q.degree(); ++i) {
        if (!q.a(i).is_zero()) {
            raise(errc::hyperbolicity_violation,
                  "a_2 vanishes but a_" + std::to_string(i) + " does not after the Tschirnhausen shift");
        }
    }
    const int t = q.trunc_order();
    const Series b = t == Series::exact ? shift : shift.truncated((t + 2) / 2 - 1);
    RootBranchSet out;
    out.num_vars = q.num_vars();
    out.branches.assign(static_cast<std::size_t>(q.degree()), b);
    return out;
}

// Runs f, reporting a failed exact division as an order deficiency.
template <typename F>
auto or_violation(F &&f)
{
    try {
        return f();
    } catch (const error &e) {
        if (e.code() == errc::not_divisible) {
            raise(errc::hyperbolicity_violation, std::string("order deficiency: ") + e.detail());
        }
        throw;
    }
}

// Largest monomial dividing every retained term, if it is itself a term;
// then s = m * unit.
inline std::optional<std::pair<Monomial, Rat>> normal_crossing(const Series &s)
{
    const int n = s.num_vars();
    std::vector<int> lo(static_cast<std::size_t>(n), Monomial::max_exponent);
    for (const auto &[m, c] : s.terms()) {
        for (int v = 0; v < n; ++v) {
            lo[static_cast<std::size_t>(v)] = std::min(lo[static_cast<std::size_t>(v)], m[v]);
        }
    }
    const Monomial g{std::span<const int>(lo)};
    const Rat c = s.coeff(g);
    if (s.is_zero() || is_zero(c)) {
        return std::nullopt;
    }
    return std::make_pair(g, c);
}

struct DescentState {
    int work = 0;
    int max_depth = 0;
};

inline RootBranchSet descent(const MonicFamily &p, int depth, const DescentState &st);

// Roots h * b + shift from the roots b of the rescaled family.
inline RootBranchSet rescaled(const RootBranchSet &sub, const Series &h, const Series &shift)
{
    RootBranchSet out;
    out.num_vars = sub.num_vars;
    for (const auto &b : sub.branches) {
        out.branches.push_back(b * h + shift);
    }
    if (!sub.groups.empty()) {
        raise(errc::non_rational_branch, "irrational roots under a non-monomial scale");
    }
    return out;
}

inline RootBranchSet descent(const MonicFamily &p, int depth, const DescentState &st)
{
    const int n = p.num_vars();
    const int d = p.degree();
    RootBranchSet out;
    out.num_vars = n;
    if (depth > st.max_depth) {
        raise(errc::max_depth, "recursion exceeded depth " + std::to_string(st.max_depth));
    }
    if (d == 1) {
        out.branches.push_back(-p.a(1));
        return out;
    }
    if (p.trunc_order() < 0) {
        out.branches.assign(static_cast<std::size_t>(d), Series(n, -1));
        return out;
    }
    if (p.is_exact() && p.a(d).is_zero()) {
        // z divides P exactly.
        out.branches.push_back(Series(n));
        std::vector<Series> a(p.coeffs().begin(), p.coeffs().end() - 1);
        append(out, descent(MonicFamily(n, std::move(a)), depth, st));
        return out;
    }
    if (p.is_exact() && std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Series &c) { return c.is_constant(); })) {
        const auto roots = rational_roots(p.at_origin());
        int found = 0;
        for (const auto &[c, mult] : roots) {
            found += mult;
        }
        if (found == d) {
            for (const auto &[c, mult] : roots) {
                out.branches.insert(out.branches.end(), static_cast<std::size_t>(mult), Series::constant(n, c));
            }
            return out;
        }
    }
    if (distinct_roots_at_origin(p) >= 2) {
        for (auto &part : cluster_split(p, st.work)) {
            if (part.center) {
                append(out, descent(part.family, depth, st));
            } else {
                out.groups.push_back(RootGroup{part.family, Monomial{}, Series(n, part.family.trunc_order())});
            }
        }
        return out;
    }
    const auto ts = tschirnhausen(p);
    const MonicFamily &q = ts.family;
    const Series a2 = q.a(2);
    if (a2.is_zero()) {
        return coincident_roots(q, ts.shift);
    }
    if (auto nc = normal_crossing(a2)) {
        const auto &[m, c] = *nc;
        std::vector<int> half;
        for (int e : m.exponents(n)) {
            if (e % 2 != 0) {
                raise(errc::hyperbolicity_violation, "a_2 = " + to_string(a2) + " has a monomial factor of odd order");
            }
            half.push_back(e / 2);
        }
        if (sgn(c) > 0) {
            raise(errc::hyperbolicity_violation, "a_2 = " + to_string(a2) + " has a positive leading coefficient");
        }
        const Monomial mu{std::span<const int>(half)};
        RootBranchSet sub = descent(or_violation([&] { return family_unscale_roots(q, mu); }), depth + 1, st);
        for (auto &b : sub.branches) {
            out.branches.push_back(mul_monomial(b, mu) + ts.shift);
        }
        for (auto &g : sub.groups) {
            out.groups.push_back(RootGroup{g.inner, g.scale * mu, mul_monomial(g.shift, mu) + ts.shift});
        }
        return out;
    }
    // Several parameters: a_2 = -k h^2 with h a polynomial.
    if (q.is_exact()) {
        if (auto sq = polynomial_sqrt(-a2); sq && sgn(sq->first) > 0) {
            const Series &h = sq->second;
            std::vector<Series> a;
            Series hi = Series::constant(n, Rat(1));
            bool ok = true;
            for (int i = 1; i <= d && ok; ++i) {
                hi = hi * h;
                ok = divides_exactly(hi, q.a(i));
                if (ok) {
                    a.push_back(exact_divide(q.a(i), hi));
                }
            }
            if (!ok) {
                raise(errc::hyperbolicity_violation, "coefficients are not divisible by powers of sqrt(-a_2)");
            }
            return rescaled(descent(MonicFamily(n, std::move(a)), depth + 1, st), h, ts.shift);
        }
    }
    raise(errc::not_well_ordered,
          "a_2 = " + to_string(a2) + " is not a monomial times a unit in this chart; a further blow-up is required");
}

} // namespace detail

// Runs `attempt(work_order)` with growing working orders until the result
// reaches `order`. Exact inputs have no precision ceiling, so the working
// order is raised; truncated inputs are tried once at their own order.
template <typename F>
auto with_adaptive_order(bool exact_input, int order, int input_order, int extra, F &&attempt, bool truncate = true)
{
    if (!exact_input) {
        auto res = attempt(std::min(order, input_order));
        res.truncate(order);
        return res;
    }
    int w = order + extra;
    const int cap = 16 * order + 64;
    while (true) {
        auto res = attempt(w);
        if (res.precision() >= order || w >= cap) {
            if (truncate) {
                res.truncate(order);
            }
            return res;
        }
        w = std::min(cap, 2 * w + extra);
    }
}

// Analytic roots of a hyperbolic family whose reduction only meets
// monomial a_2 data (always the case for one parameter), to total order
// `order`. max_depth < 0 selects working order + degree.
// With keep_exact, branches found in closed form stay exact instead of
// being truncated to `order`.
inline RootBranchSet analytic_roots(const MonicFamily &p, int order = 16, int max_depth = -1, bool keep_exact = false)
{
    if (order < 0) {
        raise(errc::invalid_argument, "order must be >= 0");
    }
    RootBranchSet out = with_adaptive_order(
        p.is_exact(), order, p.trunc_order(), p.degree(),
        [&](int w) {
            detail::DescentState st{w, max_depth >= 0 ? max_depth : w + p.degree()};
            RootBranchSet r = detail::descent(p.is_exact() ? p : p.truncated(w), 0, st);
            if (keep_exact) {
                for (auto &b : r.branches) {
                    if (!b.is_exact()) {
                        b = b.truncated(order);
                    }
                }
            }
            return r;
        },
        !keep_exact);
    out.sort();
    return out;
}

inline RootBranchSet analytic_roots_1param(const MonicFamily &p, int order = 16, int max_depth = -1)
{
    if (p.num_vars() != 1) {
        raise(errc::var_mismatch, "expected a one-parameter family");
    }
    return analytic_roots(p, order, max_depth);
}

} // namespace hyperroots

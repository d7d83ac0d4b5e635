#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/hensel.hpp>
#include <hyperroots/hyperbolic.hpp>
#include <hyperroots/matrix.hpp>
#include <hyperroots/rellich.hpp>

// Two-parameter families in the variables x = var 0, y = var 1.
namespace hyperroots
{

// {|x| < y^N, 0 < y < delta}. delta is a caller-supplied bound for numeric
// checks; it is not derived.
struct HornedRegion {
    int exponent = 1;
    Rat delta = make_rat(1, 4);
};

struct ChartStep {
    enum class kind {
        // x -> x y, a_i -> a_i / y^i.
        blowup,
        // z -> z + shift.
        shift,
        // a_i -> a_i / x^(r i).
        rescale,
    };
    kind op = kind::blowup;
    Series shift;
    int exponent = 0;
};

struct ChartFamily {
    MonicFamily family;
    std::vector<ChartStep> log;
};

namespace detail
{

inline void require_two_vars(const MonicFamily &p)
{
    if (p.num_vars() != 2) {
        raise(errc::var_mismatch, "expected a family in two parameters");
    }
}

inline MonicFamily apply_step(const MonicFamily &p, const ChartStep &s)
{
    switch (s.op) {
        case ChartStep::kind::blowup:
            return family_unscale_roots(family_substitute(p, 0, Monomial{1, 1}), Monomial{0, 1});
        case ChartStep::kind::shift: return family_shift(p, s.shift);
        case ChartStep::kind::rescale: return family_unscale_roots(p, Monomial{s.exponent, 0});
    }
    return p;
}

} // namespace detail

// Strict transform of the coefficients under (x, y) -> (x y, y):
// a_i(x y, y) / y^i.
inline ChartFamily blowup_substitute(const ChartFamily &c)
{
    detail::require_two_vars(c.family);
    ChartStep step{ChartStep::kind::blowup, Series(2), 0};
    ChartFamily out{detail::apply_step(c.family, step), c.log};
    out.log.push_back(std::move(step));
    return out;
}

inline ChartFamily blowup_substitute(const MonicFamily &p)
{
    return blowup_substitute(ChartFamily{p, {}});
}

inline ChartFamily chart_tschirnhausen(const ChartFamily &c)
{
    auto ts = tschirnhausen(c.family);
    ChartFamily out{ts.family, c.log};
    out.log.push_back({ChartStep::kind::shift, ts.shift, 0});
    return out;
}

inline ChartFamily chart_rescale(const ChartFamily &c, int r)
{
    ChartStep step{ChartStep::kind::rescale, Series(c.family.num_vars()), r};
    ChartFamily out{detail::apply_step(c.family, step), c.log};
    out.log.push_back(std::move(step));
    return out;
}

inline MonicFamily replay(const MonicFamily &p, const std::vector<ChartStep> &log)
{
    MonicFamily q = p;
    for (const auto &s : log) {
        q = detail::apply_step(q, s);
    }
    return q;
}

struct HornedSplit {
    HornedRegion region;
    // Roots g_i of P(x y^N, y, z).
    RootBranchSet roots;

    int precision() const
    {
        return roots.precision();
    }
    void truncate(int t)
    {
        roots.truncate(t);
    }
};

namespace detail
{

struct HornedState {
    int work = 0;
    int max_steps = 0;
    int steps = 0;
    std::vector<std::string> log;
};

struct HornedPart {
    int n = 0;
    RootBranchSet roots;
};

// x -> x y^k in every branch and group.
inline void push_into_chart(RootBranchSet &r, int k)
{
    if (k == 0) {
        return;
    }
    const Monomial m{1, k};
    for (auto &b : r.branches) {
        b = series_substitute(b, 0, m);
    }
    for (auto &g : r.groups) {
        g.inner = family_substitute(g.inner, 0, m);
        g.shift = series_substitute(g.shift, 0, m);
        g.scale = Monomial{g.scale[0], g.scale[1] + k * g.scale[0]};
    }
}

// Leading (lowest-degree) term of a nonzero series in one effective
// variable.
inline std::pair<int, Rat> lowest_term(const Series &s)
{
    const auto &[m, c] = *s.terms().begin();
    return {m.degree(), c};
}

inline void check_even_negative(const Series &s, const std::string &what)
{
    const auto [v, c] = lowest_term(s);
    if (v % 2 != 0 || sgn(c) > 0) {
        raise(errc::hyperbolicity_violation, what + " = " + to_string(s) + " is not of even order with negative sign");
    }
}

inline HornedPart horned_rec(const MonicFamily &p, HornedState &st)
{
    const int d = p.degree();
    HornedPart out;
    out.roots.num_vars = 2;
    if (d == 1) {
        out.roots.branches.push_back(-p.a(1));
        return out;
    }
    if (p.trunc_order() < 0) {
        out.roots.branches.assign(static_cast<std::size_t>(d), Series(2, -1));
        return out;
    }
    if (distinct_roots_at_origin(p) >= 2) {
        std::vector<HornedPart> parts;
        for (auto &c : cluster_split(p, st.work)) {
            if (c.center) {
                parts.push_back(horned_rec(c.family, st));
            } else {
                HornedPart g;
                g.roots.num_vars = 2;
                g.roots.groups.push_back(RootGroup{c.family, Monomial{}, Series(2, c.family.trunc_order())});
                parts.push_back(std::move(g));
            }
            out.n = std::max(out.n, parts.back().n);
        }
        for (auto &part : parts) {
            push_into_chart(part.roots, out.n - part.n);
            append(out.roots, std::move(part.roots));
        }
        return out;
    }
    const auto ts = tschirnhausen(p);
    const MonicFamily &q = ts.family;
    const Series a2 = q.a(2);
    if (a2.is_zero()) {
        RootBranchSet c = coincident_roots(q, ts.shift);
        out.roots.branches = std::move(c.branches);
        return out;
    }
    if (++st.steps > st.max_steps) {
        raise(errc::max_steps, "reduction budget of " + std::to_string(st.max_steps) + " steps exhausted");
    }
    const Series a2y = at_zero(a2, 0);
    if (!a2y.is_zero()) {
        // Case 1.1: the blow-up lowers the y-order of a_2(0, y) by 2.
        check_even_negative(a2y, "a_2(0, y)");
        st.log.push_back("step " + std::to_string(st.steps) + ": blowup, multiplicity " + std::to_string(d) +
                         ", contact " + std::to_string(lowest_term(a2y).first));
        HornedPart sub = horned_rec(or_violation([&] { return blowup_substitute(q).family; }), st);
        out.n = sub.n + 1;
        const Series s = series_substitute(ts.shift, 0, Monomial{1, out.n});
        const Monomial y{0, 1};
        for (auto &b : sub.roots.branches) {
            out.roots.branches.push_back(mul_monomial(b, y) + s);
        }
        for (auto &g : sub.roots.groups) {
            out.roots.groups.push_back(RootGroup{g.inner, g.scale * y, mul_monomial(g.shift, y) + s});
        }
        return out;
    }
    // Case 1.2: a_2 = x^(2r) c(y) + ...; rescale the roots by x^r.
    const int k = min_exponent(a2, 0);
    if (k % 2 != 0) {
        raise(errc::hyperbolicity_violation, "a_2 has odd x-order " + std::to_string(k));
    }
    check_even_negative(coefficient_of(a2, 0, k), "x-leading coefficient of a_2");
    const int r = k / 2;
    st.log.push_back("step " + std::to_string(st.steps) + ": rescale x^" + std::to_string(r) + ", multiplicity " +
                     std::to_string(d));
    HornedPart sub = horned_rec(or_violation([&] { return family_unscale_roots(q, Monomial{r, 0}); }), st);
    out.n = sub.n;
    const Series s = series_substitute(ts.shift, 0, Monomial{1, out.n});
    const Monomial w{r, r * out.n};
    for (auto &b : sub.roots.branches) {
        out.roots.branches.push_back(mul_monomial(b, w) + s);
    }
    for (auto &g : sub.roots.groups) {
        out.roots.groups.push_back(RootGroup{g.inner, g.scale * w, mul_monomial(g.shift, w) + s});
    }
    return out;
}

} // namespace detail

// Finds N >= 1 and roots g_i with P(x y^N, y, z) = prod (z - g_i(x, y)) to
// total order `order`. max_steps < 0 selects 4 * order.
inline HornedSplit horned_split(const MonicFamily &p, int order = 16, int max_steps = -1)
{
    detail::require_two_vars(p);
    if (order < 0) {
        raise(errc::invalid_argument, "order must be >= 0");
    }
    HornedSplit out = with_adaptive_order(p.is_exact(), order, p.trunc_order(), p.degree(), [&](int w) {
        detail::HornedState st;
        st.work = w;
        st.max_steps = max_steps >= 0 ? max_steps : 4 * order;
        detail::HornedPart part = detail::horned_rec(p.is_exact() ? p : p.truncated(w), st);
        if (part.n == 0) {
            detail::push_into_chart(part.roots, 1);
            part.n = 1;
        }
        HornedSplit hs;
        hs.region.exponent = part.n;
        hs.roots = std::move(part.roots);
        hs.roots.chart_log = std::move(st.log);
        return hs;
    });
    out.roots.sort();
    return out;
}

// P(x y^N, y, z).
inline MonicFamily horned_pullback(const MonicFamily &p, int n)
{
    return family_substitute(p, 0, Monomial{1, n});
}

// f(x y, y) / y for f with f(0, y) = 0.
inline Series strict_transform_root(const Series &f)
{
    if (f.num_vars() != 2) {
        raise(errc::var_mismatch, "expected a series in two parameters");
    }
    if (!at_zero(f, 0).is_zero()) {
        raise(errc::not_divisible, "f(0, y) does not vanish");
    }
    return series_divide_monomial(series_substitute(f, 0, Monomial{1, 1}), Monomial{0, 1});
}

// g(x y^-N, y); only defined when every term x^a y^b has b >= a N.
inline Series unsubstitute(const Series &g, int n)
{
    const int t = g.is_exact() ? Series::exact : (g.trunc_order() < 0 ? -1 : g.trunc_order() / (n + 1));
    Series out(g.num_vars(), t);
    for (const auto &[m, c] : g.terms()) {
        if (m[1] < m[0] * n) {
            raise(errc::not_analytic_in_chart, "term x^" + std::to_string(m[0]) + " y^" + std::to_string(m[1]) +
                                                   " has a negative y-exponent after x -> x y^-" + std::to_string(n));
        }
        out.add_term(Monomial{m[0], m[1] - m[0] * n}, c);
    }
    return out;
}

// d f_i / dx at x = 0, as series in y (one variable). Rational branches give
// one series each; a root group gives the monic polynomial whose roots are
// the derivatives of its members.
struct BoundaryDerivative {
    int exponent = 1;
    std::vector<Series> branches;
    std::vector<MonicFamily> groups;
};

namespace detail
{

// Elements of Q[[y]][t] / F as coefficient vectors in t.
struct QuotientRing {
    MonicFamily f;

    std::size_t dim() const
    {
        return static_cast<std::size_t>(f.degree());
    }

    std::vector<Series> times_t(const std::vector<Series> &v) const
    {
        const std::size_t k = dim();
        const Series top = v[k - 1];
        std::vector<Series> out(k, zero_like(top));
        for (std::size_t j = k - 1; j > 0; --j) {
            out[j] = v[j - 1];
        }
        for (std::size_t j = 0; j < k; ++j) {
            out[j] -= top * f.a(static_cast<int>(k - j));
        }
        return out;
    }

    Matrix<Series> mult_matrix(const std::vector<Series> &v) const
    {
        const std::size_t k = dim();
        Matrix<Series> m(k, k, zero_like(v[0]));
        std::vector<Series> col = v;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                m(i, j) = col[i];
            }
            col = times_t(col);
        }
        return m;
    }

    std::vector<Series> mul(const std::vector<Series> &a, const std::vector<Series> &b) const
    {
        const Matrix<Series> m = mult_matrix(a);
        std::vector<Series> out(dim(), zero_like(a[0]));
        for (std::size_t i = 0; i < dim(); ++i) {
            for (std::size_t j = 0; j < dim(); ++j) {
                out[i] += m(i, j) * b[j];
            }
        }
        return out;
    }
};

inline Series divide_by_y_power(const Series &s, int n)
{
    try {
        return series_divide_monomial(s, Monomial{n});
    } catch (const error &e) {
        if (e.code() == errc::not_divisible) {
            raise(errc::not_analytic_in_chart, "boundary derivative has a negative y-exponent");
        }
        throw;
    }
}

// [x^1] g / y^N as a series in y.
inline Series branch_boundary_derivative(const Series &g, int n)
{
    const Series c1 = coefficient_of(g, 0, 1);
    const Series st = strict_transform_root(g - at_zero(g, 0));
    const Series c1_st = coefficient_of(st, 0, 1);
    const int t = std::min(c1.trunc_order(), c1_st.trunc_order());
    if (!equal_to_order(c1, c1_st, t)) {
        raise(errc::not_analytic_in_chart, "x-linear coefficient changed under the strict transform");
    }
    return divide_by_y_power(drop_var(c1, 0), n);
}

inline MonicFamily group_boundary_derivative(const RootGroup &g, int n, int t)
{
    const MonicFamily inner = g.inner.is_exact() ? g.inner.truncated(t) : g.inner;
    const int k = inner.degree();
    const int tt = inner.trunc_order();
    std::vector<Series> f0;
    std::vector<Series> fx(static_cast<std::size_t>(k), Series(1, tt));
    for (int i = 1; i <= k; ++i) {
        f0.push_back(drop_var(inner.a(i), 0));
        fx[static_cast<std::size_t>(k - i)] = drop_var(coefficient_of(inner.a(i), 0, 1), 0);
    }
    QuotientRing ring{MonicFamily(1, f0)};
    std::vector<Series> ft(static_cast<std::size_t>(k), Series(1, tt));
    for (int j = 0; j < k; ++j) {
        ft[static_cast<std::size_t>(j)] = ring.f.a(k - j - 1) * Rat(j + 1);
    }
    std::vector<Series> one(static_cast<std::size_t>(k), Series(1, tt));
    one[0] = Series::constant(1, Rat(1), tt);
    // rho_x = -F_x / F_t at x = 0.
    const std::vector<Series> ft_inv = solve_unit_pivot(ring.mult_matrix(ft), one);
    std::vector<Series> d = ring.mul(fx, ft_inv);
    const int a = g.scale[0];
    const int b = g.scale[1];
    for (auto &c : d) {
        c = a == 0 ? mul_monomial(c, Monomial{b}, Rat(-1)) : Series(1, c.trunc_order());
    }
    if (a == 1 && k > 1) {
        d[1] += Series::monomial(1, Monomial{b}, Rat(1), tt);
    } else if (a == 1) {
        // Degree-one group: t = -a_1.
        d[0] += mul_monomial(-ring.f.a(1), Monomial{b});
    }
    d[0] += drop_var(coefficient_of(g.shift, 0, 1), 0);
    auto cp = charpoly(ring.mult_matrix(d), Series(1, tt), Series::constant(1, Rat(1), tt));
    MonicFamily fam(1, std::vector<Series>(cp.begin() + 1, cp.end()));
    try {
        return family_unscale_roots(fam, Monomial{n});
    } catch (const error &e) {
        if (e.code() == errc::not_divisible) {
            raise(errc::not_analytic_in_chart, "boundary derivative of a root group has a negative y-exponent");
        }
        throw;
    }
}

} // namespace detail

// d f_i / dx (0, y) for the roots f_i(x, y) = g_i(x y^-N, y) on the horned
// region; each is checked to be a power series in y.
inline BoundaryDerivative boundary_derivative(const HornedSplit &hs, int order)
{
    const int n = hs.region.exponent;
    BoundaryDerivative out;
    out.exponent = n;
    for (const auto &g : hs.roots.branches) {
        out.branches.push_back(detail::branch_boundary_derivative(g, n).truncated(order));
    }
    for (const auto &g : hs.roots.groups) {
        out.groups.push_back(detail::group_boundary_derivative(g, n, order + n + 1).truncated(order));
    }
    return out;
}

inline BoundaryDerivative boundary_derivative(const MonicFamily &p, int order = 16, int max_steps = -1)
{
    HornedSplit hs = horned_split(p, order, max_steps);
    if (p.is_exact()) {
        hs = horned_split(p, order + hs.region.exponent + 1, max_steps);
    }
    return boundary_derivative(hs, order);
}

} // namespace hyperroots

#pragma once

#include <algorithm>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/series.hpp>
#include <hyperroots/upoly.hpp>

namespace hyperroots
{

// Polynomial in the main variable z with series coefficients, ascending.
template <typename C>
using SeriesPoly = std::vector<BasicSeries<C>>;

template <typename C>
int poly_degree(const SeriesPoly<C> &p)
{
    for (std::size_t i = p.size(); i-- > 0;) {
        if (!p[i].is_zero()) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

template <typename C>
void poly_trim(SeriesPoly<C> &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

template <typename C>
SeriesPoly<C> poly_mul(const SeriesPoly<C> &a, const SeriesPoly<C> &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    SeriesPoly<C> r(a.size() + b.size() - 1, BasicSeries<C>(a[0].num_vars()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

template <typename C>
SeriesPoly<C> poly_add(const SeriesPoly<C> &a, const SeriesPoly<C> &b)
{
    const std::size_t n = std::max(a.size(), b.size());
    SeriesPoly<C> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < a.size() && i < b.size()) {
            r[i] = a[i] + b[i];
        } else {
            r[i] = i < a.size() ? a[i] : b[i];
        }
    }
    return r;
}

template <typename C>
SeriesPoly<C> poly_sub(const SeriesPoly<C> &a, const SeriesPoly<C> &b)
{
    SeriesPoly<C> nb = b;
    for (auto &s : nb) {
        s = -s;
    }
    return poly_add(a, nb);
}

template <typename C>
SeriesPoly<C> poly_derivative(const SeriesPoly<C> &p)
{
    SeriesPoly<C> d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * C(static_cast<long>(i)));
    }
    return d;
}

// p(z + s) by Horner's scheme.
template <typename C>
SeriesPoly<C> poly_shift(const SeriesPoly<C> &p, const BasicSeries<C> &s)
{
    if (p.empty()) {
        return p;
    }
    SeriesPoly<C> q{p.back()};
    const SeriesPoly<C> lin{s, BasicSeries<C>::constant(s.num_vars(), C(1))};
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        q = poly_mul(q, lin);
        q[0] += p[k];
    }
    return q;
}

// Monic polynomial z^d + a_1 z^{d-1} + ... + a_d whose coefficients are
// series in the parameters.
class MonicFamily
{
public:
    MonicFamily() = default;

    MonicFamily(int nvars, std::vector<Series> a) : m_nvars(nvars), m_a(std::move(a))
    {
        if (m_a.empty()) {
            raise(errc::invalid_argument, "a monic family needs degree >= 1");
        }
        int t = Series::exact;
        for (const auto &s : m_a) {
            if (s.num_vars() != nvars) {
                raise(errc::var_mismatch, "family coefficient has the wrong number of variables");
            }
            t = std::min(t, s.trunc_order());
        }
        for (auto &s : m_a) {
            s = s.truncated(t);
        }
    }

    // From ascending z-coefficients; the leading one must be 1.
    static MonicFamily from_poly(const SeriesPoly<Rat> &p)
    {
        SeriesPoly<Rat> q = p;
        while (q.size() > 1 && q.back().is_zero() && q.back().is_exact()) {
            q.pop_back();
        }
        const bool unknown_top = q.back().is_zero() && q.back().trunc_order() < 0;
        if (q.size() < 2 || (!unknown_top && (!q.back().is_constant() || q.back().constant_term() != 1))) {
            raise(errc::invalid_argument, "polynomial in z is not monic of degree >= 1");
        }
        const int d = static_cast<int>(q.size()) - 1;
        std::vector<Series> a;
        for (int i = 1; i <= d; ++i) {
            a.push_back(q[static_cast<std::size_t>(d - i)]);
        }
        return MonicFamily(q[0].num_vars(), std::move(a));
    }

    static MonicFamily from_rational(int nvars, const RatPoly &p)
    {
        std::vector<Series> a;
        for (const auto &c : p.monic_coeffs()) {
            a.push_back(Series::constant(nvars, c));
        }
        return MonicFamily(nvars, std::move(a));
    }

    // prod (z - f_i).
    static MonicFamily from_roots(int nvars, const std::vector<Series> &roots)
    {
        SeriesPoly<Rat> p{Series::constant(nvars, Rat(1))};
        for (const auto &r : roots) {
            p = poly_mul(p, SeriesPoly<Rat>{-r, Series::constant(nvars, Rat(1))});
        }
        return from_poly(p);
    }

    int degree() const
    {
        return static_cast<int>(m_a.size());
    }
    int num_vars() const
    {
        return m_nvars;
    }
    const std::vector<Series> &coeffs() const
    {
        return m_a;
    }
    // a_i with a_0 = 1.
    Series a(int i) const
    {
        if (i == 0) {
            return Series::constant(m_nvars, Rat(1));
        }
        return m_a.at(static_cast<std::size_t>(i - 1));
    }
    int trunc_order() const
    {
        return m_a.front().trunc_order();
    }
    bool is_exact() const
    {
        return trunc_order() == Series::exact;
    }

    SeriesPoly<Rat> as_poly() const
    {
        SeriesPoly<Rat> p(m_a.size() + 1);
        const int d = degree();
        for (int i = 0; i <= d; ++i) {
            p[static_cast<std::size_t>(d - i)] = a(i);
        }
        return p;
    }

    MonicFamily truncated(int t) const
    {
        std::vector<Series> a;
        for (const auto &s : m_a) {
            a.push_back(s.truncated(t));
        }
        return MonicFamily(m_nvars, std::move(a));
    }

    RatPoly at_origin() const
    {
        std::vector<Rat> a;
        for (const auto &s : m_a) {
            a.push_back(s.constant_term());
        }
        return RatPoly::monic(a);
    }

    std::vector<double> evaluate(std::span<const double> point) const
    {
        std::vector<double> out;
        for (const auto &s : m_a) {
            out.push_back(hyperroots::evaluate(s, point));
        }
        return out;
    }

    std::vector<Rat> evaluate_exact(std::span<const Rat> point) const
    {
        std::vector<Rat> out;
        for (const auto &s : m_a) {
            out.push_back(hyperroots::evaluate_exact(s, point));
        }
        return out;
    }

    friend bool operator==(const MonicFamily &, const MonicFamily &) = default;

    std::string to_string(const std::vector<std::string> &names = {}) const
    {
        std::ostringstream os;
        os << "z^" << degree();
        for (int i = 1; i <= degree(); ++i) {
            const Series &s = m_a[static_cast<std::size_t>(i - 1)];
            if (s.is_zero() && s.is_exact()) {
                continue;
            }
            os << " + (" << hyperroots::to_string(s, names) << ")";
            if (degree() - i > 0) {
                os << "*z";
                if (degree() - i > 1) {
                    os << "^" << degree() - i;
                }
            }
        }
        return os.str();
    }

private:
    int m_nvars = 0;
    std::vector<Series> m_a;
};

inline MonicFamily family_product(const MonicFamily &p, const MonicFamily &q)
{
    return MonicFamily::from_poly(poly_mul(p.as_poly(), q.as_poly()));
}

// P(z + s): roots move by -s.
inline MonicFamily family_shift(const MonicFamily &p, const Series &s)
{
    return MonicFamily::from_poly(poly_shift(p.as_poly(), s));
}

// a_i -> c^i m^i a_i: the roots are multiplied by c * m.
inline MonicFamily family_scale_roots(const MonicFamily &p, const Monomial &m, const Rat &c = Rat(1))
{
    std::vector<Series> a;
    Monomial mi;
    Rat ci(1);
    for (int i = 1; i <= p.degree(); ++i) {
        mi = mi * m;
        ci *= c;
        a.push_back(mul_monomial(p.a(i), mi, ci));
    }
    return MonicFamily(p.num_vars(), std::move(a));
}

// a_i -> a_i / m^i: the roots are divided by m. Raises NOT_DIVISIBLE.
inline MonicFamily family_unscale_roots(const MonicFamily &p, const Monomial &m)
{
    std::vector<Series> a;
    Monomial mi;
    for (int i = 1; i <= p.degree(); ++i) {
        mi = mi * m;
        a.push_back(series_divide_monomial(p.a(i), mi));
    }
    return MonicFamily(p.num_vars(), std::move(a));
}

inline MonicFamily family_substitute(const MonicFamily &p, int var, const Monomial &m, const Rat &c = Rat(1))
{
    std::vector<Series> a;
    for (const auto &s : p.coeffs()) {
        a.push_back(series_substitute(s, var, m, c));
    }
    return MonicFamily(p.num_vars(), std::move(a));
}

// A cluster of roots mu * rho_j + shift, where rho_j are the simple roots at
// the origin of `inner`. Used for analytic roots that are not rational
// series (for example roots near +-sqrt(3)).
struct RootGroup {
    MonicFamily inner;
    Monomial scale;
    Series shift;

    int size() const
    {
        return inner.degree();
    }

    // prod over the group of (z - mu rho_j - shift).
    MonicFamily polynomial() const
    {
        return family_shift(family_scale_roots(inner, scale), -shift);
    }

    friend bool operator==(const RootGroup &, const RootGroup &) = default;
};

namespace detail
{

inline bool series_less(const Series &a, const Series &b)
{
    const auto va = a.valuation();
    const auto vb = b.valuation();
    if (va != vb) {
        return va < vb;
    }
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) {
            return ia->first < ib->first;
        }
        if (ia->second != ib->second) {
            return ia->second < ib->second;
        }
    }
    return a.size() < b.size();
}

} // namespace detail

// Roots of a family in a chart, without ordering semantics.
struct RootBranchSet {
    int num_vars = 0;
    std::vector<Series> branches;
    std::vector<RootGroup> groups;
    std::vector<std::string> chart_log;

    int size() const
    {
        int n = static_cast<int>(branches.size());
        for (const auto &g : groups) {
            n += g.size();
        }
        return n;
    }

    int precision() const
    {
        int t = Series::exact;
        for (const auto &b : branches) {
            t = std::min(t, b.trunc_order());
        }
        for (const auto &g : groups) {
            t = std::min({t, g.inner.trunc_order(), g.shift.trunc_order()});
        }
        return t;
    }

    bool all_rational() const
    {
        return groups.empty();
    }

    void sort()
    {
        std::sort(branches.begin(), branches.end(), detail::series_less);
    }

    void truncate(int t)
    {
        for (auto &b : branches) {
            b = b.truncated(t);
        }
        for (auto &g : groups) {
            g.inner = g.inner.truncated(t);
            g.shift = g.shift.truncated(t);
        }
    }

    MonicFamily product() const
    {
        SeriesPoly<Rat> p{Series::constant(num_vars, Rat(1))};
        for (const auto &b : branches) {
            p = poly_mul(p, SeriesPoly<Rat>{-b, Series::constant(num_vars, Rat(1))});
        }
        for (const auto &g : groups) {
            p = poly_mul(p, g.polynomial().as_poly());
        }
        return MonicFamily::from_poly(p);
    }
};

// Coefficient-wise residual P - prod(z - f_i), as a_1..a_d differences.
inline std::vector<Series> verify_product(const MonicFamily &p, const RootBranchSet &roots)
{
    if (roots.size() != p.degree()) {
        raise(errc::invalid_argument, "branch count differs from the degree");
    }
    MonicFamily q = roots.product();
    std::vector<Series> res;
    for (int i = 1; i <= p.degree(); ++i) {
        res.push_back(p.a(i) - q.a(i));
    }
    return res;
}

inline bool residual_is_zero(const std::vector<Series> &res)
{
    return std::all_of(res.begin(), res.end(), [](const Series &s) { return s.is_zero(); });
}

} // namespace hyperroots

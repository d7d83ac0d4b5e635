#pragma once

#include <algorithm>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/matrix.hpp>
#include <hyperroots/series.hpp>
#include <hyperroots/upoly.hpp>

namespace hyperroots
{

namespace detail
{

inline Rat times(const Rat &r, long k)
{
    return r * k;
}
inline Series times(const Series &s, long k)
{
    return s * Rat(k);
}

} // namespace detail

// Sylvester matrix of two polynomials given by ascending coefficients.
// The q = deg Q rows holding P come first, then the p = deg P rows of Q;
// every row lists coefficients from the leading one down.
template <typename R>
Matrix<R> sylvester_matrix(const std::vector<R> &p, const std::vector<R> &q, const R &zero)
{
    const int dp = static_cast<int>(p.size()) - 1;
    const int dq = static_cast<int>(q.size()) - 1;
    if (dp < 0 || dq < 0) {
        raise(errc::invalid_argument, "zero polynomial in a Sylvester matrix");
    }
    if (dp < 1 && dq < 1) {
        raise(errc::both_constant, "both polynomials are constant");
    }
    const auto n = static_cast<std::size_t>(dp + dq);
    Matrix<R> s(n, n, zero);
    for (int i = 0; i < dq; ++i) {
        for (int k = 0; k <= dp; ++k) {
            s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + k)) = p[static_cast<std::size_t>(dp - k)];
        }
    }
    for (int i = 0; i < dp; ++i) {
        for (int k = 0; k <= dq; ++k) {
            s(static_cast<std::size_t>(dq + i), static_cast<std::size_t>(i + k)) = q[static_cast<std::size_t>(dq - k)];
        }
    }
    return s;
}

inline Matrix<Rat> sylvester_matrix(const RatPoly &p, const RatPoly &q)
{
    return sylvester_matrix(p.coeffs(), q.coeffs(), Rat(0));
}

inline Matrix<Series> sylvester_matrix(const SeriesPoly<Rat> &p, const SeriesPoly<Rat> &q)
{
    if (p.empty() || q.empty()) {
        raise(errc::invalid_argument, "zero polynomial in a Sylvester matrix");
    }
    return sylvester_matrix(p, q, Series(p[0].num_vars()));
}

// Determinant of the Sylvester matrix (P rows first).
inline Rat sylvester_resultant(const RatPoly &p, const RatPoly &q)
{
    return determinant(sylvester_matrix(p, q), Rat(0), Rat(1));
}

inline Series resultant(const SeriesPoly<Rat> &p, const SeriesPoly<Rat> &q)
{
    const int n = p[0].num_vars();
    return determinant(sylvester_matrix(p, q), Series(n), Series::constant(n, Rat(1)));
}

inline Series resultant(const MonicFamily &p, const MonicFamily &q)
{
    return resultant(p.as_poly(), q.as_poly());
}

// Power sums p_0..p_upto of the roots of z^d + a_1 z^{d-1} + ... + a_d by
// Newton's identities.
template <typename R>
std::vector<R> power_sums(const std::vector<R> &a, int upto, const R &zero, const R &one)
{
    const int d = static_cast<int>(a.size());
    std::vector<R> p(static_cast<std::size_t>(upto + 1), zero);
    p[0] = detail::times(one, d);
    for (int k = 1; k <= upto; ++k) {
        R s = zero;
        for (int i = 1; i <= std::min(k - 1, d); ++i) {
            s = s + a[static_cast<std::size_t>(i - 1)] * p[static_cast<std::size_t>(k - i)];
        }
        if (k <= d) {
            s = s + detail::times(a[static_cast<std::size_t>(k - 1)], k);
        }
        p[static_cast<std::size_t>(k)] = zero - s;
    }
    return p;
}

// D_0..D_{d-1}. D_s is the sum over (d-s)-subsets J of the roots of the
// product of (z_mu - z_nu)^2 over pairs in J. By Cauchy-Binet it equals the
// leading (d-s)-minor of the Hankel matrix of power sums.
template <typename R>
std::vector<R> generalized_discriminants(const std::vector<R> &a, const R &zero, const R &one)
{
    const int d = static_cast<int>(a.size());
    if (d < 1) {
        raise(errc::invalid_argument, "degree must be >= 1");
    }
    std::vector<R> ps = power_sums(a, 2 * d - 2, zero, one);
    Matrix<R> h(static_cast<std::size_t>(d), static_cast<std::size_t>(d), zero);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = ps[static_cast<std::size_t>(i + j)];
        }
    }
    auto minors = leading_principal_minors(h, zero, one);
    std::vector<R> out;
    for (int s = 0; s < d; ++s) {
        out.push_back(minors[static_cast<std::size_t>(d - s)]);
    }
    return out;
}

inline std::vector<Rat> generalized_discriminants(const std::vector<Rat> &a)
{
    return generalized_discriminants(a, Rat(0), Rat(1));
}

inline std::vector<Series> generalized_discriminants(const MonicFamily &p)
{
    const int n = p.num_vars();
    return generalized_discriminants(p.coeffs(), Series(n), Series::constant(n, Rat(1)));
}

// D_s straight from the definition on given roots; any d, exact or
// floating point.
template <typename T>
std::vector<T> generalized_discriminants_from_roots(std::span<const T> roots)
{
    const int d = static_cast<int>(roots.size());
    std::vector<T> out(static_cast<std::size_t>(d), T(0));
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        const int k = __builtin_popcount(mask);
        T prod(1);
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                if ((mask >> i & 1u) && (mask >> j & 1u)) {
                    T diff = roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)];
                    prod *= diff * diff;
                }
            }
        }
        out[static_cast<std::size_t>(d - k)] += prod;
    }
    return out;
}

// Number of distinct complex roots: d - j for the first j with D_j != 0.
inline int max_distinct_roots(const std::vector<Rat> &a)
{
    auto ds = generalized_discriminants(a);
    const int d = static_cast<int>(a.size());
    for (int j = 0; j < d; ++j) {
        if (!is_zero(ds[static_cast<std::size_t>(j)])) {
            return d - j;
        }
    }
    return 1;
}

struct Gd2Result {
    bool holds = false;
    int distinct = 0;
    Rat multiplicity_product;
    Rat reduced_discriminant;
    Rat lhs;
    Rat rhs;
};

// Checks prod(nu_i) * disc(reduced P) = D_{d-s} at a rational point, the
// product running over distinct roots.
inline Gd2Result gd2_check(const std::vector<Rat> &a)
{
    const RatPoly p = RatPoly::monic(a);
    Gd2Result r;
    r.multiplicity_product = 1;
    RatPoly reduced = RatPoly::constant(Rat(1));
    for (const auto &[f, nu] : squarefree_decomposition(p)) {
        for (int k = 0; k < f.degree(); ++k) {
            r.multiplicity_product *= nu;
        }
        reduced = reduced * f;
    }
    r.distinct = reduced.degree();
    r.reduced_discriminant = discriminant(reduced);
    r.lhs = r.multiplicity_product * r.reduced_discriminant;
    r.rhs = generalized_discriminants(a)[static_cast<std::size_t>(p.degree() - r.distinct)];
    r.holds = r.lhs == r.rhs;
    return r;
}

namespace detail
{

// Arithmetic in Q[x][z] with exact multivariate coefficients.

inline SeriesPoly<Rat> trimmed(SeriesPoly<Rat> p)
{
    poly_trim(p);
    return p;
}

inline Series power(const Series &s, int e)
{
    Series r = Series::constant(s.num_vars(), Rat(1));
    for (int i = 0; i < e; ++i) {
        r *= s;
    }
    return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
inline SeriesPoly<Rat> pseudo_remainder(SeriesPoly<Rat> a, const SeriesPoly<Rat> &b)
{
    const int db = poly_degree(b);
    const Series &lc = b[static_cast<std::size_t>(db)];
    int da = poly_degree(a);
    int e = da - db + 1;
    while (da >= db) {
        Series t = a[static_cast<std::size_t>(da)];
        for (auto &c : a) {
            c = c * lc;
        }
        for (int j = 0; j <= db; ++j) {
            a[static_cast<std::size_t>(da - db + j)] -= t * b[static_cast<std::size_t>(j)];
        }
        --e;
        poly_trim(a);
        da = poly_degree(a);
    }
    if (e > 0) {
        Series f = power(lc, e);
        for (auto &c : a) {
            c = c * f;
        }
    }
    return a;
}

// Quotient by a monic divisor; raises NOT_DIVISIBLE unless exact.
inline SeriesPoly<Rat> divide_by_monic(SeriesPoly<Rat> a, const SeriesPoly<Rat> &b)
{
    const int db = poly_degree(b);
    int da = poly_degree(a);
    if (da < db) {
        if (da < 0) {
            return {};
        }
        raise(errc::not_divisible, "polynomial in z is not divisible");
    }
    SeriesPoly<Rat> q(static_cast<std::size_t>(da - db + 1), Series(b[0].num_vars()));
    for (int k = da - db; k >= 0; --k) {
        Series t = a[static_cast<std::size_t>(k + db)];
        q[static_cast<std::size_t>(k)] = t;
        if (t.is_zero()) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            a[static_cast<std::size_t>(k + j)] -= t * b[static_cast<std::size_t>(j)];
        }
    }
    if (poly_degree(a) >= 0) {
        raise(errc::not_divisible, "polynomial in z is not divisible");
    }
    return q;
}

// Monic normalization over Q(x); the result must have polynomial
// coefficients.
inline SeriesPoly<Rat> make_monic(const SeriesPoly<Rat> &g)
{
    const Series lc = g[static_cast<std::size_t>(poly_degree(g))];
    SeriesPoly<Rat> out;
    for (const auto &c : g) {
        try {
            out.push_back(exact_divide(c, lc));
        } catch (const error &e) {
            if (e.code() == errc::not_divisible) {
                raise(errc::non_polynomial_factor, "gcd factor has non-polynomial coefficients after normalization");
            }
            throw;
        }
    }
    poly_trim(out);
    return out;
}

// Monic gcd over Q(x) by the subresultant remainder sequence.
inline SeriesPoly<Rat> monic_gcd(SeriesPoly<Rat> a, SeriesPoly<Rat> b)
{
    poly_trim(a);
    poly_trim(b);
    const int n = a.empty() ? (b.empty() ? 0 : b[0].num_vars()) : a[0].num_vars();
    if (b.empty()) {
        return make_monic(a);
    }
    if (a.empty()) {
        return make_monic(b);
    }
    if (poly_degree(a) < poly_degree(b)) {
        std::swap(a, b);
    }
    Series g = Series::constant(n, Rat(1));
    Series h = Series::constant(n, Rat(1));
    while (true) {
        const int delta = poly_degree(a) - poly_degree(b);
        SeriesPoly<Rat> r = pseudo_remainder(a, b);
        if (r.empty()) {
            return make_monic(b);
        }
        if (poly_degree(r) == 0) {
            return {Series::constant(n, Rat(1))};
        }
        a = std::move(b);
        Series den = g * power(h, delta);
        for (auto &c : r) {
            c = exact_divide(c, den);
        }
        b = std::move(r);
        g = a[static_cast<std::size_t>(poly_degree(a))];
        if (delta > 0) {
            h = exact_divide(power(g, delta), power(h, delta - 1));
        }
    }
}

} // namespace detail

struct SquareFreeSplit {
    std::vector<MonicFamily> factors;
    std::vector<int> multiplicities;
    MonicFamily reduction;

    int distinct() const
    {
        return reduction.degree();
    }
};

// Yun's algorithm over Q(x)[z] for a monic family with polynomial
// coefficients. Factors are ordered by increasing multiplicity.
inline SquareFreeSplit squarefree_split(const MonicFamily &p)
{
    if (!p.is_exact()) {
        raise(errc::invalid_argument, "square-free splitting needs polynomial (exact) coefficients");
    }
    using detail::divide_by_monic;
    using detail::monic_gcd;
    const SeriesPoly<Rat> f = p.as_poly();
    const SeriesPoly<Rat> df = detail::trimmed(poly_derivative(f));
    SeriesPoly<Rat> g = monic_gcd(f, df);
    SeriesPoly<Rat> b = divide_by_monic(f, g);
    SeriesPoly<Rat> c = divide_by_monic(df, g);
    SeriesPoly<Rat> d = detail::trimmed(poly_sub(c, poly_derivative(b)));
    SquareFreeSplit out;
    SeriesPoly<Rat> reduced{Series::constant(p.num_vars(), Rat(1))};
    for (int i = 1; poly_degree(b) > 0; ++i) {
        SeriesPoly<Rat> a = monic_gcd(b, d);
        if (poly_degree(a) > 0) {
            out.factors.push_back(MonicFamily::from_poly(a));
            out.multiplicities.push_back(i);
            reduced = poly_mul(reduced, a);
        }
        b = divide_by_monic(b, a);
        c = divide_by_monic(d, a);
        d = detail::trimmed(poly_sub(c, poly_derivative(b)));
    }
    out.reduction = MonicFamily::from_poly(reduced);
    return out;
}

} // namespace hyperroots

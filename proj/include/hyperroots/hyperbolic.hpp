#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/upoly.hpp>

namespace hyperroots
{

struct Tschirnhausen {
    MonicFamily family;
    // Roots of the input are the roots of `family` plus `shift`.
    Series shift;
};

// Substitutes z -> z + shift with shift = -a_1/d, removing the z^{d-1} term.
inline Tschirnhausen tschirnhausen(const MonicFamily &p)
{
    const Series a1 = p.a(1);
    if (a1.is_zero()) {
        return {p, Series(p.num_vars(), a1.trunc_order())};
    }
    Series shift = a1 * Rat(make_rat(-1, p.degree()));
    MonicFamily q = family_shift(p, shift);
    // The z^{d-1} coefficient cancels identically; keep it an explicit zero.
    std::vector<Series> a = q.coeffs();
    a[0] = Series(p.num_vars(), a[0].trunc_order());
    return {MonicFamily(p.num_vars(), std::move(a)), shift};
}

// True iff every root of z^d + a_1 z^{d-1} + ... + a_d is real.
inline bool is_hyperbolic_exact(const std::vector<Rat> &a)
{
    RatPoly p = RatPoly::monic(a);
    if (p.degree() <= 1) {
        return true;
    }
    RatPoly g = gcd(p, p.derivative());
    RatPoly reduced = divmod(p, g).first;
    return count_distinct_real_roots(reduced) == reduced.degree();
}

// Necessary condition near 0 for a one-parameter family with a_1 = 0:
// a_2 has even order and a nonpositive leading coefficient; a_2 = 0
// forces every coefficient to vanish.
inline bool necessary_sign_check(const MonicFamily &p)
{
    if (p.num_vars() != 1) {
        raise(errc::invalid_argument, "necessary_sign_check expects one parameter");
    }
    if (!p.a(1).is_zero()) {
        raise(errc::invalid_argument, "necessary_sign_check expects a_1 = 0");
    }
    if (p.degree() < 2) {
        return true;
    }
    const Series a2 = p.a(2);
    if (a2.is_zero()) {
        return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Series &s) { return s.is_zero(); });
    }
    const auto &[m, c] = *a2.terms().begin();
    return m.degree() % 2 == 0 && sgn(c) <= 0;
}

using OrderedRoots = std::vector<double>;

// Ascending real roots from companion eigenvalues; rejects roots whose
// imaginary part exceeds tol * (1 + |root|).
inline OrderedRoots ordered_roots(std::span<const double> a, double tol = 1e-9)
{
    auto roots = companion_roots(a);
    OrderedRoots out;
    double worst = 0.0;
    for (const auto &z : roots) {
        double resid = std::fabs(z.imag()) / (1.0 + std::abs(z));
        worst = std::max(worst, resid);
        out.push_back(z.real());
    }
    if (worst > tol) {
        raise(errc::not_hyperbolic_numeric, "max imaginary residual " + std::to_string(worst));
    }
    std::stable_sort(out.begin(), out.end());
    return out;
}

struct Region {
    double x1_min = -1, x1_max = 1, x2_min = -1, x2_max = 1;
};

struct LipschitzReport {
    Region region;
    std::vector<int> grid_sizes;
    std::vector<double> sup_quotients;
    std::vector<int> excluded_points;
};

using CoefficientEvaluator = std::function<std::vector<double>(double, double)>;

namespace detail
{

inline double max_norm_diff(const OrderedRoots &a, const OrderedRoots &b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

} // namespace detail

// Ordered roots on an n x n grid; points failing the hyperbolicity
// tolerance are left empty.
inline std::vector<std::vector<OrderedRoots>> sample_grid(const CoefficientEvaluator &eval, const Region &r, int n,
                                                          double tol)
{
    std::vector<std::vector<OrderedRoots>> g(static_cast<std::size_t>(n), std::vector<OrderedRoots>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x1 = r.x1_min + (r.x1_max - r.x1_min) * i / (n - 1);
            const double x2 = r.x2_min + (r.x2_max - r.x2_min) * j / (n - 1);
            auto c = eval(x1, x2);
            try {
                g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ordered_roots(c, tol);
            } catch (const error &e) {
                if (e.code() != errc::not_hyperbolic_numeric) {
                    throw;
                }
            }
        }
    }
    return g;
}

// Suprema of |Lambda(p) - Lambda(q)|_inf / |p - q| over horizontally and
// vertically adjacent grid points, on grids of (grid - 1) 2^k + 1 points.
inline LipschitzReport lipschitz_scan(const CoefficientEvaluator &eval, const Region &r, int grid, int levels,
                                      double tol = 1e-9)
{
    if (grid < 2 || levels < 1) {
        raise(errc::invalid_argument, "grid must be >= 2 and levels >= 1");
    }
    LipschitzReport rep;
    rep.region = r;
    for (int k = 0; k < levels; ++k) {
        const int n = (grid - 1) * (1 << k) + 1;
        const double h1 = (r.x1_max - r.x1_min) / (n - 1);
        const double h2 = (r.x2_max - r.x2_min) / (n - 1);
        auto g = sample_grid(eval, r, n, tol);
        double sup = 0.0;
        int excluded = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const auto &here = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (here.empty()) {
                    ++excluded;
                    continue;
                }
                if (i + 1 < n && !g[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)].empty() && h1 > 0) {
                    sup = std::max(sup, detail::max_norm_diff(here, g[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)]) / h1);
                }
                if (j + 1 < n && !g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)].empty() && h2 > 0) {
                    sup = std::max(sup, detail::max_norm_diff(here, g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)]) / h2);
                }
            }
        }
        if (excluded == n * n) {
            raise(errc::not_hyperbolic_numeric, "no hyperbolic grid point at level " + std::to_string(k));
        }
        rep.grid_sizes.push_back(n);
        rep.sup_quotients.push_back(sup);
        rep.excluded_points.push_back(excluded);
    }
    return rep;
}

// Smallest positive root of (z^4 - (x^2 + y^8))^2 - x^4 - y^20, namely
// (u - sqrt(v))^(1/4) with u = x^2 + y^8, v = x^4 + y^20. The difference is
// rewritten as (u^2 - v) / (u + sqrt(v)) to avoid cancellation.
inline long double nonlipschitz_root(long double x, long double y)
{
    const long double x2 = x * x;
    const long double y8 = std::pow(y, 8.0L);
    const long double u = x2 + y8;
    const long double v = x2 * x2 + std::pow(y, 20.0L);
    const long double num = 2 * x2 * y8 + y8 * y8 - std::pow(y, 20.0L);
    return std::pow(num / (u + std::sqrt(v)), 0.25L);
}

struct PathQuotient {
    double y = 0;
    double quotient = 0;
};

// Central difference quotients in x of nonlipschitz_root along x = y^5,
// with step rel_step * y^5.
inline std::vector<PathQuotient> nonlipschitz_path_scan(std::span<const double> ys, double rel_step = 1e-4)
{
    std::vector<PathQuotient> out;
    for (double y : ys) {
        const long double x = std::pow(static_cast<long double>(y), 5.0L);
        const long double h = rel_step * x;
        const long double q = std::fabs(nonlipschitz_root(x + h, y) - nonlipschitz_root(x - h, y)) / (2 * h);
        out.push_back({y, static_cast<double>(q)});
    }
    return out;
}

struct LidskiiReport {
    bool in_hull = false;
    bool weyl = false;
    std::vector<double> difference;
    std::vector<double> spectrum_of_difference;
    double weyl_lhs = 0;
    double weyl_rhs = 0;
    // First k whose top-k partial sum violates dominance, or -1.
    int witness = -1;
};

inline std::vector<double> symmetric_spectrum(const Eigen::MatrixXd &a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

inline void require_symmetric(const Eigen::MatrixXd &a, double tol)
{
    if (a.rows() != a.cols() || (a - a.transpose()).cwiseAbs().maxCoeff() > tol * (1.0 + a.cwiseAbs().maxCoeff())) {
        raise(errc::not_symmetric, "matrix is not symmetric within tolerance");
    }
}

// Is x majorized by y: equal sums and top-k partial sums of x bounded by
// those of y. Returns the first failing k, or -1.
inline int majorization_violation(std::vector<double> x, std::vector<double> y, double tol)
{
    std::sort(x.rbegin(), x.rend());
    std::sort(y.rbegin(), y.rend());
    double sx = 0, sy = 0;
    double scale = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        scale += std::fabs(x[k]) + std::fabs(y[k]);
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        if (sx > sy + tol * scale) {
            return static_cast<int>(k) + 1;
        }
    }
    if (std::fabs(sx - sy) > tol * scale) {
        return static_cast<int>(x.size());
    }
    return -1;
}

// Decides whether Lambda(A) - Lambda(B) lies in the convex hull of the
// coordinate permutations of Lambda(A - B), and checks Weyl's bound.
inline LidskiiReport lidskii_check(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b, double tol = 1e-9)
{
    require_symmetric(a, tol);
    require_symmetric(b, tol);
    if (a.rows() != b.rows()) {
        raise(errc::invalid_argument, "matrices differ in size");
    }
    auto la = symmetric_spectrum(a);
    auto lb = symmetric_spectrum(b);
    LidskiiReport rep;
    rep.spectrum_of_difference = symmetric_spectrum(a - b);
    for (std::size_t i = 0; i < la.size(); ++i) {
        rep.difference.push_back(la[i] - lb[i]);
        rep.weyl_lhs = std::max(rep.weyl_lhs, std::fabs(la[i] - lb[i]));
    }
    for (double v : rep.spectrum_of_difference) {
        rep.weyl_rhs = std::max(rep.weyl_rhs, std::fabs(v));
    }
    rep.witness = majorization_violation(rep.difference, rep.spectrum_of_difference, tol);
    rep.in_hull = rep.witness < 0;
    rep.weyl = rep.weyl_lhs <= rep.weyl_rhs + 1e-10;
    return rep;
}

} // namespace hyperroots

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <hyperroots/error.hpp>
#include <hyperroots/family.hpp>
#include <hyperroots/matrix.hpp>
#include <hyperroots/rellich.hpp>
#include <hyperroots/resultants.hpp>
#include <hyperroots/series.hpp>

namespace hyperroots
{

enum class symmetry { none, symmetric, antisymmetric };

inline std::string_view symmetry_name(symmetry s)
{
    switch (s) {
        case symmetry::none: return "none";
        case symmetry::symmetric: return "symmetric";
        case symmetry::antisymmetric: return "antisymmetric";
    }
    return "none";
}

// Square matrix of series with an explicit symmetry tag.
class MatrixFamily
{
public:
    MatrixFamily() = default;

    MatrixFamily(int nvars, Matrix<Series> entries, symmetry tag)
        : m_nvars(nvars), m_entries(std::move(entries)), m_tag(tag)
    {
        const std::size_t d = m_entries.rows();
        if (d == 0 || m_entries.cols() != d) {
            raise(errc::invalid_argument, "matrix family must be square and nonempty");
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (m_entries(i, j).num_vars() != nvars) {
                    raise(errc::var_mismatch, "matrix entry has the wrong number of variables");
                }
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                const Series &a = m_entries(i, j);
                const Series &b = m_entries(j, i);
                if (tag == symmetry::symmetric && !(a == b)) {
                    raise(errc::not_symmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
                }
                if (tag == symmetry::antisymmetric && !(a == -b)) {
                    raise(errc::not_antisymmetric,
                          "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not minus its transpose");
                }
            }
        }
    }

    int size() const
    {
        return static_cast<int>(m_entries.rows());
    }
    int num_vars() const
    {
        return m_nvars;
    }
    symmetry tag() const
    {
        return m_tag;
    }
    const Matrix<Series> &entries() const
    {
        return m_entries;
    }
    const Series &operator()(std::size_t i, std::size_t j) const
    {
        return m_entries(i, j);
    }
    bool is_exact() const
    {
        return trunc_order() == Series::exact;
    }
    int trunc_order() const
    {
        int t = Series::exact;
        for (std::size_t i = 0; i < m_entries.rows(); ++i) {
            for (std::size_t j = 0; j < m_entries.cols(); ++j) {
                t = std::min(t, m_entries(i, j).trunc_order());
            }
        }
        return t;
    }

    // Substitutes var -> m in every entry (a chart map such as x -> x y).
    MatrixFamily substituted(int var, const Monomial &m) const
    {
        Matrix<Series> e = m_entries;
        for (std::size_t i = 0; i < e.rows(); ++i) {
            for (std::size_t j = 0; j < e.cols(); ++j) {
                e(i, j) = series_substitute(e(i, j), var, m);
            }
        }
        return MatrixFamily(m_nvars, std::move(e), m_tag);
    }

    Eigen::MatrixXd evaluate(std::span<const double> point) const
    {
        const auto d = static_cast<Eigen::Index>(size());
        Eigen::MatrixXd a(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                a(i, j) = hyperroots::evaluate(m_entries(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), point);
            }
        }
        return a;
    }

private:
    int m_nvars = 0;
    Matrix<Series> m_entries;
    symmetry m_tag = symmetry::none;
};

// det(z I - A) over the series ring.
inline MonicFamily char_poly_family(const MatrixFamily &a)
{
    const int n = a.num_vars();
    auto c = charpoly(a.entries(), Series(n), Series::constant(n, Rat(1)));
    return MonicFamily(n, std::vector<Series>(c.begin() + 1, c.end()));
}

// For P with purely imaginary roots i t_j, the family with roots t_j:
// i^-d P(i z), whose coefficients are (-1)^(k) a_{2k}. Odd coefficients
// must vanish.
inline MonicFamily imaginary_axis_companion(const MonicFamily &p)
{
    std::vector<Series> a;
    for (int i = 1; i <= p.degree(); ++i) {
        if (i % 2 == 1) {
            if (!p.a(i).is_zero()) {
                raise(errc::invalid_argument, "odd coefficient a_" + std::to_string(i) + " does not vanish");
            }
            a.push_back(p.a(i));
        } else {
            a.push_back((i / 2) % 2 == 0 ? p.a(i) : -p.a(i));
        }
    }
    return MonicFamily(p.num_vars(), std::move(a));
}

namespace detail
{

// The gcd monomial of all retained terms, when it is itself a term: then
// s is that monomial times a unit.
template <typename C>
std::optional<Monomial> monomial_factor(const BasicSeries<C> &s)
{
    if (s.is_zero()) {
        return std::nullopt;
    }
    const int n = s.num_vars();
    std::vector<int> lo(static_cast<std::size_t>(n), Monomial::max_exponent);
    for (const auto &[m, c] : s.terms()) {
        for (int v = 0; v < n; ++v) {
            lo[static_cast<std::size_t>(v)] = std::min(lo[static_cast<std::size_t>(v)], m[v]);
        }
    }
    const Monomial g{std::span<const int>(lo)};
    if (is_zero(s.coeff(g))) {
        return std::nullopt;
    }
    return g;
}

// Is b / a a power series?
template <typename C>
bool series_divides(const BasicSeries<C> &a, const BasicSeries<C> &b)
{
    if (b.is_zero()) {
        return true;
    }
    if (auto mu = monomial_factor(a)) {
        return std::all_of(b.terms().begin(), b.terms().end(), [&](const auto &t) { return mu->divides(t.first); });
    }
    if (a.is_exact() && b.is_exact()) {
        return divides_exactly(a, b);
    }
    return false;
}

// b / a when series_divides(a, b); truncated at `order` unless exact.
template <typename C>
BasicSeries<C> series_quotient(const BasicSeries<C> &b, const BasicSeries<C> &a, int order)
{
    if (a.is_exact() && b.is_exact() && divides_exactly(a, b)) {
        return exact_divide(b, a);
    }
    auto mu = monomial_factor(a);
    if (!mu) {
        raise(errc::not_well_ordered, "quotient by a minor that is not a monomial times a unit");
    }
    BasicSeries<C> num = series_divide_monomial(b, *mu);
    BasicSeries<C> unit = series_divide_monomial(a, *mu);
    if (unit.is_exact() && !unit.is_constant()) {
        unit = unit.truncated(order);
    }
    return num / unit;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto &&self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

template <typename C>
BasicSeries<C> det(const Matrix<BasicSeries<C>> &m, int nvars)
{
    if (m.rows() == 0) {
        return BasicSeries<C>::constant(nvars, C(1));
    }
    return determinant(m, BasicSeries<C>(nvars), BasicSeries<C>::constant(nvars, C(1)));
}

template <typename C>
int min_valuation(const std::vector<BasicSeries<C>> &v)
{
    int best = Valuation::infinite_order;
    for (const auto &s : v) {
        best = std::min(best, s.valuation().order);
    }
    return best;
}

} // namespace detail

// Index k with minors[j] / minors[k] a series for every j; the first such
// index among those of minimal valuation.
template <typename C>
std::size_t well_ordered(const std::vector<BasicSeries<C>> &minors)
{
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        if (minors[k].is_zero()) {
            continue;
        }
        const bool ok = std::all_of(minors.begin(), minors.end(),
                                    [&](const BasicSeries<C> &m) { return detail::series_divides(minors[k], m); });
        if (ok && (!best || minors[k].valuation().order < minors[*best].valuation().order)) {
            best = k;
        }
    }
    if (!best) {
        if (std::all_of(minors.begin(), minors.end(), [](const BasicSeries<C> &m) { return m.is_zero(); })) {
            raise(errc::invalid_argument, "all minors vanish");
        }
        raise(errc::not_well_ordered, "no minor divides all others; a further blow-up is required");
    }
    return *best;
}

template <typename C>
struct EigenSolve {
    std::vector<std::size_t> kept_rows;
    Matrix<BasicSeries<C>> reduced;
    // Column subsets of the kept rows and their minors.
    std::vector<std::vector<std::size_t>> column_sets;
    std::vector<BasicSeries<C>> minors;
    std::size_t pivot = 0;
    // Cramer vectors: coordinate free_columns[j] of vectors[j] is 1 and the
    // other free coordinates are 0.
    std::vector<std::size_t> free_columns;
    std::vector<std::vector<BasicSeries<C>>> vectors;
};

template <typename C>
std::vector<BasicSeries<C>> mat_vec(const Matrix<BasicSeries<C>> &a, const std::vector<BasicSeries<C>> &v)
{
    std::vector<BasicSeries<C>> out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BasicSeries<C> acc = zero_like(v[0]);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * v[j];
        }
        out.push_back(acc);
    }
    return out;
}

// Kernel of A - lambda I of generic dimension m, by row deletion and
// Cramer's rule against a well-ordered pivot minor.
template <typename C>
EigenSolve<C> eigenvector_branch(const Matrix<BasicSeries<C>> &a, const BasicSeries<C> &lambda, int m, int order)
{
    const std::size_t d = a.rows();
    const int nvars = lambda.num_vars();
    if (m < 1 || static_cast<std::size_t>(m) > d) {
        raise(errc::rank_mismatch, "multiplicity must be in [1, d]");
    }
    Matrix<BasicSeries<C>> b = a;
    for (std::size_t i = 0; i < d; ++i) {
        b(i, i) -= lambda;
    }
    const std::size_t r = d - static_cast<std::size_t>(m);
    EigenSolve<C> es;
    const auto col_sets = detail::subsets(d, r);
    int best_val = Valuation::infinite_order;
    for (const auto &rows : detail::subsets(d, r)) {
        std::vector<BasicSeries<C>> minors;
        for (const auto &cols : col_sets) {
            minors.push_back(detail::det(b.select(rows, cols), nvars));
        }
        const int v = detail::min_valuation(minors);
        if (v < best_val) {
            best_val = v;
            es.kept_rows = rows;
            es.minors = std::move(minors);
        }
    }
    if (best_val == Valuation::infinite_order) {
        raise(errc::rank_mismatch, "every " + std::to_string(r) + "-minor of A - lambda I vanishes");
    }
    std::vector<std::size_t> all_cols(d);
    for (std::size_t j = 0; j < d; ++j) {
        all_cols[j] = j;
    }
    es.column_sets = col_sets;
    es.reduced = b.select(es.kept_rows, all_cols);
    es.pivot = well_ordered(es.minors);
    const std::vector<std::size_t> &piv_cols = col_sets[es.pivot];
    const BasicSeries<C> &pivot_minor = es.minors[es.pivot];
    for (std::size_t j = 0; j < d; ++j) {
        if (std::find(piv_cols.begin(), piv_cols.end(), j) == piv_cols.end()) {
            es.free_columns.push_back(j);
        }
    }
    for (std::size_t f : es.free_columns) {
        std::vector<BasicSeries<C>> v(d, BasicSeries<C>(nvars));
        v[f] = BasicSeries<C>::constant(nvars, C(1));
        for (std::size_t i = 0; i < r; ++i) {
            // Column i of the pivot block replaced by -b_f.
            Matrix<BasicSeries<C>> ci(r, r, BasicSeries<C>(nvars));
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t j = 0; j < r; ++j) {
                    ci(k, j) = j == i ? -es.reduced(k, f) : es.reduced(k, piv_cols[j]);
                }
            }
            v[piv_cols[i]] = detail::series_quotient(detail::det(ci, nvars), pivot_minor, order);
        }
        for (const auto &c : mat_vec(b, v)) {
            const int t = std::min(order, c.trunc_order());
            if (!c.truncated(t).is_zero()) {
                raise(errc::rank_mismatch, "lambda is not an eigenvalue of generic multiplicity " + std::to_string(m));
            }
        }
        es.vectors.push_back(std::move(v));
    }
    return es;
}

// The vector u / sqrt(c), with c a positive rational.
template <typename C>
struct ScaledVector {
    std::vector<BasicSeries<C>> u;
    Rat c = 1;
};

template <typename C>
BasicSeries<C> inner(const std::vector<BasicSeries<C>> &a, const std::vector<BasicSeries<C>> &b)
{
    BasicSeries<C> acc = zero_like(a[0]);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += conj(a[i]) * b[i];
    }
    return acc;
}

namespace detail
{

inline Series real_series(const Series &s)
{
    return s;
}
inline Series real_series(const CSeries &s)
{
    return real_part(s);
}

template <typename C>
BasicSeries<C> lift(const Series &s)
{
    if constexpr (std::is_same_v<C, Rat>) {
        return s;
    } else {
        return to_complex<C>(s);
    }
}

} // namespace detail

// Gram-Schmidt over the (Hermitian) inner product, to total order `order`.
template <typename C>
std::vector<ScaledVector<C>> gram_schmidt_series(const std::vector<std::vector<BasicSeries<C>>> &vs, int order)
{
    std::vector<ScaledVector<C>> out;
    for (const auto &v : vs) {
        std::vector<BasicSeries<C>> w = v;
        for (const auto &e : out) {
            const BasicSeries<C> p = inner(e.u, w) * C(Rat(1) / e.c);
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= p * e.u[i];
            }
        }
        const Series s = detail::real_series(inner(w, w));
        const Rat s0 = s.constant_term();
        if (sgn(s0) <= 0) {
            raise(errc::degenerate_gram, "Gram matrix is singular at the origin");
        }
        Series ratio = s * (Rat(1) / s0);
        if (!ratio.is_constant() || !ratio.is_exact()) {
            ratio = ratio.truncated(std::min(order, ratio.trunc_order()));
        }
        const Series root = ratio.is_exact() ? Series::constant(s.num_vars(), Rat(1)) : series_sqrt(ratio);
        const BasicSeries<C> inv = detail::lift<C>(root.is_exact() ? root : series_inverse(root));
        ScaledVector<C> e;
        e.c = s0;
        Rat scale(1);
        if (auto q = exact_sqrt(s0)) {
            scale = Rat(1) / *q;
            e.c = 1;
        }
        for (auto &x : w) {
            e.u.push_back(x * inv * C(scale));
        }
        out.push_back(std::move(e));
    }
    return out;
}

struct EigenBranch {
    Series value;
    int multiplicity = 1;
    std::vector<ScaledVector<Rat>> basis;
};

struct DecompCheck {
    bool dimension = false;
    bool eigen = false;
    bool orthonormal = false;
    bool cross_orthogonal = false;

    bool ok() const
    {
        return dimension && eigen && orthonormal && cross_orthogonal;
    }
};

struct EigenDecomp {
    int order = 0;
    std::vector<EigenBranch> branches;
    DecompCheck check;

    int precision() const
    {
        int t = Series::exact;
        for (const auto &b : branches) {
            t = std::min(t, b.value.trunc_order());
            for (const auto &e : b.basis) {
                for (const auto &s : e.u) {
                    t = std::min(t, s.trunc_order());
                }
            }
        }
        return t;
    }

    void truncate(int t)
    {
        for (auto &b : branches) {
            b.value = b.value.truncated(t);
            for (auto &e : b.basis) {
                for (auto &s : e.u) {
                    s = s.truncated(t);
                }
            }
        }
    }
};

namespace detail
{

inline bool zero_to(const Series &s, int order)
{
    return s.truncated(std::min(order, s.trunc_order())).is_zero();
}

inline Matrix<Series> shifted(const MatrixFamily &a, const Series &lambda)
{
    Matrix<Series> b = a.entries();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        b(i, i) -= lambda;
    }
    return b;
}

inline void require_small(const MatrixFamily &a)
{
    if (a.num_vars() > 2) {
        raise(errc::invalid_argument, "at most two parameters are supported");
    }
}

// Roots of each square-free factor with their multiplicities.
inline std::vector<std::pair<Series, int>> eigenvalue_branches(const MonicFamily &p, int order)
{
    std::vector<std::pair<Series, int>> out;
    auto take = [&](const MonicFamily &f, int mult) {
        RootBranchSet r = analytic_roots(f, order, -1, true);
        if (!r.groups.empty()) {
            raise(errc::non_rational_branch, "eigenvalues are not rational series: " + r.groups[0].inner.to_string());
        }
        for (auto &b : r.branches) {
            out.emplace_back(std::move(b), mult);
        }
    };
    if (p.is_exact()) {
        SquareFreeSplit sf = squarefree_split(p);
        for (std::size_t k = 0; k < sf.factors.size(); ++k) {
            take(sf.factors[k], sf.multiplicities[k]);
        }
        return out;
    }
    RootBranchSet r = analytic_roots(p, order);
    if (!r.groups.empty()) {
        raise(errc::non_rational_branch, "eigenvalues are not rational series");
    }
    for (auto &b : r.branches) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto &e) { return e.first == b; });
        if (it == out.end()) {
            out.emplace_back(b, 1);
        } else {
            ++it->second;
        }
    }
    return out;
}

} // namespace detail

inline DecompCheck verify_decomposition(const MatrixFamily &a, const EigenDecomp &dec, int order)
{
    DecompCheck ck;
    int total = 0;
    std::vector<const ScaledVector<Rat> *> all;
    std::vector<std::size_t> owner;
    for (std::size_t bi = 0; bi < dec.branches.size(); ++bi) {
        const auto &b = dec.branches[bi];
        total += b.multiplicity;
        for (const auto &e : b.basis) {
            all.push_back(&e);
            owner.push_back(bi);
        }
    }
    ck.dimension = total == a.size() && static_cast<int>(all.size()) == a.size();
    ck.eigen = true;
    for (const auto &b : dec.branches) {
        const Matrix<Series> m = detail::shifted(a, b.value);
        for (const auto &e : b.basis) {
            for (const auto &c : mat_vec(m, e.u)) {
                ck.eigen = ck.eigen && detail::zero_to(c, order);
            }
        }
    }
    ck.orthonormal = true;
    ck.cross_orthogonal = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i; j < all.size(); ++j) {
            Series g = inner(all[i]->u, all[j]->u);
            if (i == j) {
                g -= Series::constant(g.num_vars(), all[i]->c);
            }
            const bool z = detail::zero_to(g, order);
            (owner[i] == owner[j] ? ck.orthonormal : ck.cross_orthogonal) &= z;
        }
    }
    return ck;
}

// Analytic eigenvalues and orthonormal eigenbases of a symmetric family,
// to total order `order`. NOT_WELL_ORDERED reports that the chart needs a
// further blow-up.
inline EigenDecomp diagonalize_family(const MatrixFamily &a, int order = 16)
{
    if (a.tag() == symmetry::none) {
        raise(errc::unsupported_family, "only tagged symmetric families are diagonalized");
    }
    if (a.tag() != symmetry::symmetric) {
        raise(errc::not_symmetric, "family is tagged antisymmetric");
    }
    detail::require_small(a);
    const MonicFamily p = char_poly_family(a);
    EigenDecomp dec = with_adaptive_order(a.is_exact(), order, a.trunc_order(), a.size() + 2, [&](int w) {
        EigenDecomp d;
        d.order = order;
        for (auto &[lambda, mult] : detail::eigenvalue_branches(p, w)) {
            const auto es = eigenvector_branch(a.entries(), lambda, mult, w);
            d.branches.push_back({lambda, mult, gram_schmidt_series(es.vectors, w)});
        }
        return d;
    });
    dec.check = verify_decomposition(a, dec, order);
    return dec;
}

struct CanonicalPoint {
    // Columns: e_1, f_1, ..., e_k, f_k, then the kernel.
    Eigen::MatrixXd basis;
    std::vector<double> lambdas;
    int zeros = 0;
    double residual = 0;
};

inline Eigen::MatrixXd canonical_blocks(const std::vector<double> &lambdas, int d)
{
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(2 * k);
        c(i, i + 1) = lambdas[k];
        c(i + 1, i) = -lambdas[k];
    }
    return c;
}

// Real orthonormal Q with Q^T A Q block diagonal: blocks [[0, l],[-l, 0]]
// with l > 0, followed by zeros.
inline CanonicalPoint antisym_canonical_point(const Eigen::MatrixXd &a, double tol = 1e-9)
{
    if (a.rows() != a.cols() || (a + a.transpose()).cwiseAbs().maxCoeff() > tol * (1.0 + a.cwiseAbs().maxCoeff())) {
        raise(errc::not_antisymmetric, "matrix is not antisymmetric within tolerance");
    }
    const Eigen::Index d = a.rows();
    Eigen::RealSchur<Eigen::MatrixXd> schur(a);
    const Eigen::MatrixXd &t = schur.matrixT();
    const Eigen::MatrixXd &u = schur.matrixU();
    const double scale = 1.0 + a.cwiseAbs().maxCoeff();
    std::vector<std::pair<double, std::pair<Eigen::Index, Eigen::Index>>> blocks;
    std::vector<Eigen::Index> kernel;
    for (Eigen::Index i = 0; i < d;) {
        if (i + 1 < d && std::fabs(t(i + 1, i)) > tol * scale) {
            const double l = (t(i, i + 1) - t(i + 1, i)) / 2;
            if (l > 0) {
                blocks.push_back({l, {i, i + 1}});
            } else {
                blocks.push_back({-l, {i + 1, i}});
            }
            i += 2;
        } else {
            kernel.push_back(i);
            ++i;
        }
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto &x, const auto &y) { return x.first > y.first; });
    CanonicalPoint out;
    out.basis.resize(d, d);
    Eigen::Index col = 0;
    for (const auto &[l, ef] : blocks) {
        out.lambdas.push_back(l);
        out.basis.col(col++) = u.col(ef.first);
        out.basis.col(col++) = u.col(ef.second);
    }
    for (auto k : kernel) {
        out.basis.col(col++) = u.col(k);
    }
    out.zeros = static_cast<int>(kernel.size());
    out.residual = (out.basis.transpose() * a * out.basis - canonical_blocks(out.lambdas, static_cast<int>(d))).cwiseAbs().maxCoeff();
    return out;
}

struct CanonicalFamily {
    int order = 0;
    // e_1, f_1, ..., e_k, f_k, then kernel vectors.
    std::vector<ScaledVector<Rat>> basis;
    std::vector<Series> lambdas;
    int zeros = 0;
    bool orthonormal = false;
    bool canonical = false;

    int precision() const
    {
        int t = Series::exact;
        for (const auto &l : lambdas) {
            t = std::min(t, l.trunc_order());
        }
        for (const auto &e : basis) {
            for (const auto &s : e.u) {
                t = std::min(t, s.trunc_order());
            }
        }
        return t;
    }

    void truncate(int t)
    {
        for (auto &l : lambdas) {
            l = l.truncated(t);
        }
        for (auto &e : basis) {
            for (auto &s : e.u) {
                s = s.truncated(t);
            }
        }
    }
};

inline void verify_canonical(const MatrixFamily &a, CanonicalFamily &cf, int order)
{
    const std::size_t d = cf.basis.size();
    cf.orthonormal = d == static_cast<std::size_t>(a.size());
    cf.canonical = cf.orthonormal;
    for (std::size_t i = 0; i < d && cf.orthonormal; ++i) {
        const auto av = mat_vec(a.entries(), cf.basis[i].u);
        for (std::size_t j = 0; j < d; ++j) {
            Series g = inner(cf.basis[i].u, cf.basis[j].u);
            if (i == j) {
                g -= Series::constant(g.num_vars(), cf.basis[i].c);
            }
            cf.orthonormal = cf.orthonormal && detail::zero_to(g, order);
            // e_j^T A e_i against the block entry; paired vectors share c.
            Series h = inner(cf.basis[j].u, av);
            const std::size_t k = i / 2;
            if (k < cf.lambdas.size() && j / 2 == k && i != j) {
                const Series l = mul_monomial(cf.lambdas[k], Monomial{}, cf.basis[i].c);
                h = j < i ? h - l : h + l;
            }
            cf.canonical = cf.canonical && detail::zero_to(h, order);
        }
    }
}

// Canonical form of an antisymmetric family: analytic lambda_k and an
// orthonormal basis e_k = Re v_k, f_k = Im v_k (rescaled) from eigenvectors
// v_k of i lambda_k.
inline CanonicalFamily antisym_canonical_family(const MatrixFamily &a, int order = 16)
{
    if (a.tag() != symmetry::antisymmetric) {
        raise(a.tag() == symmetry::none ? errc::unsupported_family : errc::not_antisymmetric,
              "family is not tagged antisymmetric");
    }
    detail::require_small(a);
    const int n = a.num_vars();
    const MonicFamily h = imaginary_axis_companion(char_poly_family(a));
    Matrix<CSeries> ac(a.entries().rows(), a.entries().cols(), CSeries(n));
    for (std::size_t i = 0; i < ac.rows(); ++i) {
        for (std::size_t j = 0; j < ac.cols(); ++j) {
            ac(i, j) = to_complex<GaussRat>(a(i, j));
        }
    }
    CanonicalFamily cf = with_adaptive_order(a.is_exact(), order, a.trunc_order(), a.size() + 2, [&](int w) {
        CanonicalFamily out;
        out.order = order;
        std::vector<ScaledVector<Rat>> kernel;
        for (auto &[lambda, mult] : detail::eigenvalue_branches(h, w)) {
            if (lambda.is_zero()) {
                const auto es = eigenvector_branch(a.entries(), lambda, mult, w);
                for (auto &e : gram_schmidt_series(es.vectors, w)) {
                    kernel.push_back(std::move(e));
                }
                continue;
            }
            if (sgn(lambda.terms().begin()->second) < 0) {
                continue;
            }
            const CSeries il = to_complex<GaussRat>(lambda) * GaussRat::i_unit();
            const auto es = eigenvector_branch(ac, il, mult, w);
            for (const auto &v : gram_schmidt_series(es.vectors, w)) {
                ScaledVector<Rat> e, f;
                for (const auto &x : v.u) {
                    e.u.push_back(real_part(x));
                    f.u.push_back(imag_part(x));
                }
                e.c = f.c = v.c / 2;
                out.basis.push_back(std::move(e));
                out.basis.push_back(std::move(f));
                out.lambdas.push_back(lambda);
            }
        }
        out.zeros = static_cast<int>(kernel.size());
        for (auto &e : kernel) {
            out.basis.push_back(std::move(e));
        }
        return out;
    });
    verify_canonical(a, cf, order);
    return cf;
}

// Families without a symmetry tag are outside the analytic reduction: a
// diagonalizable family need not admit a continuous eigenbasis.
[[noreturn]] inline void reject_non_normal(const MatrixFamily &a)
{
    raise(errc::unsupported_family, std::string("no analytic reduction for a family tagged ") +
                                        std::string(symmetry_name(a.tag())) + "; only symmetric or antisymmetric families");
}

} // namespace hyperroots

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/series.hpp>

namespace hyperroots
{

// Row-major dense matrix over an arbitrary commutative ring.
template <typename R>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const R &fill) : m_rows(rows), m_cols(cols), m_data(rows * cols, fill) {}

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    R &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const R &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

    Matrix transposed() const
    {
        Matrix t;
        t.m_rows = m_cols;
        t.m_cols = m_rows;
        t.m_data.reserve(m_data.size());
        for (std::size_t j = 0; j < m_cols; ++j) {
            for (std::size_t i = 0; i < m_rows; ++i) {
                t.m_data.push_back((*this)(i, j));
            }
        }
        return t;
    }

    // Submatrix on the given row and column index lists.
    Matrix select(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const
    {
        Matrix s;
        s.m_rows = rows.size();
        s.m_cols = cols.size();
        for (auto i : rows) {
            for (auto j : cols) {
                s.m_data.push_back((*this)(i, j));
            }
        }
        return s;
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<R> m_data;
};

// Berkowitz's division-free algorithm. Returns c[0..n] with
// det(z I - A) = sum_k c[k] z^{n-k}; the intermediate vectors give the
// characteristic polynomials of the leading principal submatrices.
template <typename R>
std::vector<std::vector<R>> berkowitz_all(const Matrix<R> &a, const R &zero, const R &one)
{
    const std::size_t n = a.rows();
    std::vector<std::vector<R>> all;
    std::vector<R> c{one};
    all.push_back(c);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<R> t(r + 2, zero);
        t[0] = one;
        t[1] = zero - a(r, r);
        std::vector<R> v(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
            v[i] = a(i, r);
        }
        for (std::size_t k = 0; k < r; ++k) {
            R dot = zero;
            for (std::size_t i = 0; i < r; ++i) {
                dot = dot + a(r, i) * v[i];
            }
            t[k + 2] = zero - dot;
            if (k + 1 < r) {
                std::vector<R> w(r, zero);
                for (std::size_t i = 0; i < r; ++i) {
                    for (std::size_t j = 0; j < r; ++j) {
                        w[i] = w[i] + a(i, j) * v[j];
                    }
                }
                v = std::move(w);
            }
        }
        std::vector<R> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= std::min(i, r); ++j) {
                next[i] = next[i] + t[i - j] * c[j];
            }
        }
        c = std::move(next);
        all.push_back(c);
    }
    return all;
}

template <typename R>
std::vector<R> charpoly(const Matrix<R> &a, const R &zero, const R &one)
{
    return berkowitz_all(a, zero, one).back();
}

template <typename R>
R determinant(const Matrix<R> &a, const R &zero, const R &one)
{
    if (a.rows() != a.cols()) {
        raise(errc::invalid_argument, "determinant of a non-square matrix");
    }
    auto c = charpoly(a, zero, one);
    R d = c.back();
    return a.rows() % 2 == 0 ? d : zero - d;
}

// det of every leading principal k x k submatrix, k = 0..n.
template <typename R>
std::vector<R> leading_principal_minors(const Matrix<R> &a, const R &zero, const R &one)
{
    auto all = berkowitz_all(a, zero, one);
    std::vector<R> out;
    for (std::size_t k = 0; k < all.size(); ++k) {
        R d = all[k].back();
        out.push_back(k % 2 == 0 ? d : zero - d);
    }
    return out;
}

// Solves M x = b over a series ring by Gaussian elimination with pivots
// that are units (nonzero constant term).
template <typename C>
std::vector<BasicSeries<C>> solve_unit_pivot(Matrix<BasicSeries<C>> m, std::vector<BasicSeries<C>> b)
{
    const std::size_t n = m.rows();
    if (m.cols() != n || b.size() != n) {
        raise(errc::invalid_argument, "solve needs a square system");
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r) {
            if (!is_zero(m(r, col).constant_term())) {
                piv = r;
                break;
            }
        }
        if (piv == n) {
            raise(errc::div_by_non_unit, "linear system is singular at the origin");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
            }
            std::swap(b[piv], b[col]);
        }
        const BasicSeries<C> inv = series_inverse(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) {
                continue;
            }
            const BasicSeries<C> f = m(r, col) * inv;
            for (std::size_t j = col; j < n; ++j) {
                m(r, j) -= f * m(col, j);
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<BasicSeries<C>> x(n);
    for (std::size_t i = n; i-- > 0;) {
        BasicSeries<C> acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= m(i, j) * x[j];
        }
        x[i] = acc / m(i, i);
    }
    return x;
}

} // namespace hyperroots

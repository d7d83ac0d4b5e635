#include <catch_amalgamated.hpp>

#include <random>

#include <hyperroots/specfam.hpp>

using namespace hyperroots;

namespace
{

const Series X = Series::variable(2, 0);
const Series Y = Series::variable(2, 1);

Series k2(long v)
{
    return Series::constant(2, Rat(v));
}

Matrix<Series> mat2(const Series &a, const Series &b, const Series &c, const Series &d)
{
    Matrix<Series> m(2, 2, Series(a.num_vars()));
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

MatrixFamily uncontrolled()
{
    return MatrixFamily(2, mat2(X * X, X * Y, X * Y, Y * Y), symmetry::symmetric);
}

// Largest principal angle between span(a) and span(b), columns orthonormal.
double principal_angle(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
    const double s = svd.singularValues().minCoeff();
    return std::acos(std::min(1.0, s));
}

Eigen::VectorXd eval_vector(const ScaledVector<Rat> &e, std::span<const double> pt)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(e.u.size()));
    for (std::size_t i = 0; i < e.u.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = evaluate(e.u[i], pt) / std::sqrt(to_double(e.c));
    }
    return v;
}

} // namespace

TEST_CASE("char_poly_family")
{
    CHECK(char_poly_family(uncontrolled()) == MonicFamily(2, {-(X * X + Y * Y), Series(2)}));
    Matrix<Series> z(3, 3, Series(2));
    CHECK(char_poly_family(MatrixFamily(2, z, symmetry::symmetric)) == MonicFamily(2, {Series(2), Series(2), Series(2)}));
    Series l = X + Y * Y;
    MatrixFamily rot(2, mat2(Series(2), l, -l, Series(2)), symmetry::antisymmetric);
    MonicFamily p = char_poly_family(rot);
    CHECK(p == MonicFamily(2, {Series(2), l * l}));
    CHECK(imaginary_axis_companion(p) == MonicFamily(2, {Series(2), -(l * l)}));
}

TEST_CASE("MatrixFamily tags")
{
    CHECK_THROWS_AS(MatrixFamily(2, mat2(X, Y, X, Y), symmetry::symmetric), error);
    try {
        MatrixFamily(2, mat2(X, Y, Y, X), symmetry::antisymmetric);
        FAIL();
    } catch (const error &e) {
        CHECK(e.code() == errc::not_antisymmetric);
    }
}

TEST_CASE("well_ordered")
{
    CHECK(well_ordered(std::vector<Series>{Y * Y, Y * Y * (k2(1) + X)}) == 0);
    Series w1 = X;
    CHECK(well_ordered(std::vector<Series>{w1 * w1 * w1 * w1, w1 * w1}) == 1);
    try {
        well_ordered(std::vector<Series>{X, Y});
        FAIL();
    } catch (const error &e) {
        CHECK(e.code() == errc::not_well_ordered);
    }
}

TEST_CASE("eigenvector_branch examples")
{
    // w1^2 [[1, w2], [w2, w2^2]].
    const Series w1 = X, w2 = Y;
    Matrix<Series> a = mat2(w1 * w1, w1 * w1 * w2, w1 * w1 * w2, w1 * w1 * w2 * w2);
    auto e1 = eigenvector_branch(a, w1 * w1 * (k2(1) + w2 * w2), 1, 10);
    REQUIRE(e1.vectors.size() == 1);
    CHECK(e1.vectors[0] == std::vector<Series>{k2(1), w2});
    auto e0 = eigenvector_branch(a, Series(2), 1, 10);
    CHECK(e0.vectors[0] == std::vector<Series>{-w2, k2(1)});

    Series pa = X + k2(1), pb = Y;
    auto ed = eigenvector_branch(mat2(pa, Series(2), Series(2), pb), pa, 1, 10);
    CHECK(ed.vectors[0] == std::vector<Series>{k2(1), Series(2)});

    try {
        eigenvector_branch(a, k2(5), 1, 10);
        FAIL();
    } catch (const error &e) {
        CHECK(e.code() == errc::rank_mismatch);
    }
}

TEST_CASE("gram_schmidt_series")
{
    auto g = gram_schmidt_series(std::vector<std::vector<Series>>{{k2(1), Y}}, 8);
    REQUIRE(g.size() == 1);
    Series r = series_inverse(series_sqrt((k2(1) + Y * Y).truncated(8)));
    CHECK(g[0].c == 1);
    CHECK(g[0].u[0] == r);
    CHECK(g[0].u[1] == (Y * r).truncated(8));

    auto s = gram_schmidt_series(std::vector<std::vector<Series>>{{k2(1), Series(2)}, {Series(2), k2(1)}}, 8);
    CHECK(s[0].u == std::vector<Series>{k2(1), Series(2)});
    CHECK(s[1].u == std::vector<Series>{Series(2), k2(1)});

    auto t = gram_schmidt_series(std::vector<std::vector<Series>>{{k2(1), k2(1)}}, 8);
    CHECK(t[0].c == 2);

    try {
        gram_schmidt_series(std::vector<std::vector<Series>>{{k2(1), Series(2)}, {k2(1), X}}, 8);
        FAIL();
    } catch (const error &e) {
        CHECK(e.code() == errc::degenerate_gram);
    }
}

TEST_CASE("uncontrolled family: direct chart fails, blown-up chart succeeds")
{
    try {
        diagonalize_family(uncontrolled(), 12);
        FAIL("expected NOT_WELL_ORDERED");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_well_ordered);
    }
    MatrixFamily b = uncontrolled().substituted(1, Monomial{1, 1});
    EigenDecomp dec = diagonalize_family(b, 12);
    CHECK(dec.check.ok());
    CHECK(dec.precision() >= 12);
    REQUIRE(dec.branches.size() == 2);
    std::vector<Series> values{dec.branches[0].value, dec.branches[1].value};
    std::vector<Series> expect{(X * X * (k2(1) + Y * Y)).truncated(12), Series(2).truncated(12)};
    std::sort(values.begin(), values.end(), detail::series_less);
    std::sort(expect.begin(), expect.end(), detail::series_less);
    CHECK(values == expect);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    for (int k = 0; k < 25; ++k) {
        const std::vector<double> pt{u(rng), u(rng)};
        Eigen::MatrixXd a = b.evaluate(pt);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        for (const auto &br : dec.branches) {
            const double lam = evaluate(br.value, pt);
            Eigen::Index idx = 0;
            (es.eigenvalues().array() - lam).abs().minCoeff(&idx);
            CHECK(std::fabs(es.eigenvalues()(idx) - lam) < 1e-6);
            Eigen::MatrixXd e(2, 1);
            e.col(0) = eval_vector(br.basis[0], pt);
            Eigen::MatrixXd ref = es.eigenvectors().col(idx);
            if (std::fabs(es.eigenvalues()(1) - es.eigenvalues()(0)) > 1e-8) {
                CHECK(principal_angle(e, ref) < 1e-4);
            }
        }
    }
}

TEST_CASE("diagonal and one-parameter families")
{
    const Series x = Series::variable(1, 0);
    const Series one = Series::constant(1, Rat(1));
    Matrix<Series> d(2, 2, Series(1));
    d(0, 0) = x * x + one;
    d(1, 1) = x;
    EigenDecomp dec = diagonalize_family(MatrixFamily(1, d, symmetry::symmetric), 8);
    CHECK(dec.check.ok());
    for (const auto &b : dec.branches) {
        const bool first = b.value == (x * x + one).truncated(8);
        CHECK(b.basis[0].u == (first ? std::vector<Series>{one.truncated(8), Series(1, 8)}
                                     : std::vector<Series>{Series(1, 8), one.truncated(8)}));
    }

    // A random symmetric pencil with rational eigenvalues: Q diag(p) Q^T
    // with Q a rational rotation.
    Matrix<Series> q(3, 3, Series(1));
    const Rat c = make_rat(3, 5), s = make_rat(4, 5);
    std::vector<std::vector<Rat>> rot{{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
    std::vector<Series> diag{x, x * x - x, x + one};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            Series acc(1);
            for (std::size_t k = 0; k < 3; ++k) {
                acc += diag[k] * (rot[i][k] * rot[j][k]);
            }
            q(i, j) = acc;
        }
    }
    EigenDecomp dq = diagonalize_family(MatrixFamily(1, q, symmetry::symmetric), 10);
    CHECK(dq.check.ok());
    CHECK(dq.branches.size() == 3);

    // Repeated eigenvalue of multiplicity two.
    Matrix<Series> r(3, 3, Series(1));
    r(0, 0) = x;
    r(1, 1) = x;
    r(2, 2) = one;
    EigenDecomp dr = diagonalize_family(MatrixFamily(1, r, symmetry::symmetric), 6);
    CHECK(dr.check.ok());
}

TEST_CASE("antisymmetric canonical form at a point")
{
    Eigen::MatrixXd a(2, 2);
    a << 0, 3, -3, 0;
    auto c = antisym_canonical_point(a);
    REQUIRE(c.lambdas.size() == 1);
    CHECK(c.lambdas[0] == Catch::Approx(3));
    CHECK(c.residual < 1e-12);
    auto z = antisym_canonical_point(Eigen::MatrixXd::Zero(3, 3));
    CHECK(z.zeros == 3);

    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int d : {4, 5, 6}) {
        for (int it = 0; it < 10; ++it) {
            Eigen::MatrixXd m(d, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    m(i, j) = g(rng);
                }
            }
            m = m - m.transpose().eval();
            auto cf = antisym_canonical_point(m);
            CHECK(cf.residual <= 1e-10);
            CHECK((cf.basis.transpose() * cf.basis - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
            auto spec = symmetric_spectrum(-(m * m));
            std::vector<double> sq;
            for (double l : cf.lambdas) {
                sq.push_back(l * l);
                sq.push_back(l * l);
            }
            for (int k = 0; k < cf.zeros; ++k) {
                sq.push_back(0);
            }
            std::sort(sq.begin(), sq.end());
            for (std::size_t k = 0; k < sq.size(); ++k) {
                CHECK(sq[k] == Catch::Approx(spec[k]).margin(1e-9));
            }
        }
    }
}

TEST_CASE("antisymmetric canonical form of families")
{
    const Series x = Series::variable(1, 0);
    MatrixFamily a(1, mat2(Series(1), x, -x, Series(1)), symmetry::antisymmetric);
    auto cf = antisym_canonical_family(a, 8);
    CHECK(cf.orthonormal);
    CHECK(cf.canonical);
    REQUIRE(cf.lambdas.size() == 1);
    CHECK(cf.lambdas[0] == x.truncated(8));

    Series s = X * X + Y * Y;
    MatrixFamily b(2, mat2(Series(2), s, -s, Series(2)), symmetry::antisymmetric);
    auto cb = antisym_canonical_family(b, 12);
    CHECK(cb.orthonormal);
    CHECK(cb.canonical);
    REQUIRE(cb.lambdas.size() == 1);
    CHECK(cb.lambdas[0] == s.truncated(12));
    for (const auto &e : cb.basis) {
        for (const auto &c : e.u) {
            CHECK(c.is_constant());
        }
    }

    Matrix<Series> m3(3, 3, Series(1));
    m3(0, 1) = x;
    m3(1, 0) = -x;
    auto c3 = antisym_canonical_family(MatrixFamily(1, m3, symmetry::antisymmetric), 8);
    CHECK(c3.lambdas.size() == 1);
    CHECK(c3.zeros == 1);
    CHECK(c3.orthonormal);
    CHECK(c3.canonical);
}

TEST_CASE("non-normal families are rejected")
{
    const Series x = Series::variable(1, 0);
    const Series one = Series::constant(1, Rat(1));
    MatrixFamily a(1, mat2(one - x * x, x, Series(1), one + x * x), symmetry::none);
    try {
        reject_non_normal(a);
    } catch (const error &e) {
        CHECK(e.code() == errc::unsupported_family);
    }
    try {
        diagonalize_family(a, 8);
        FAIL();
    } catch (const error &e) {
        CHECK(e.code() == errc::unsupported_family);
    }
}

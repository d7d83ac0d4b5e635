#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <hyperroots/blowup.hpp>

using namespace hyperroots;

namespace
{

const Series X = Series::variable(2, 0);
const Series Y = Series::variable(2, 1);

Series c2(long v)
{
    return Series::constant(2, Rat(v));
}

MonicFamily circle()
{
    return MonicFamily(2, {Series(2), -(X * X + Y * Y)});
}

MonicFamily cubic()
{
    return MonicFamily(2, {Series(2), (X * X + Y * Y) * Rat(-3), X * X * X * Rat(-2)});
}

bool split_residual_zero(const MonicFamily &p, const HornedSplit &hs, int order)
{
    return residual_is_zero(verify_product(horned_pullback(p, hs.region.exponent).truncated(order), hs.roots));
}

} // namespace

TEST_CASE("blowup_substitute examples")
{
    CHECK(blowup_substitute(circle()).family == MonicFamily(2, {Series(2), -(X * X + c2(1))}));
    CHECK(blowup_substitute(cubic()).family ==
          MonicFamily(2, {Series(2), (X * X + c2(1)) * Rat(-3), X * X * X * Rat(-2)}));
    MonicFamily k(2, {Series(2), Series(2), Series(2)});
    CHECK(blowup_substitute(k).family == k);
    try {
        blowup_substitute(MonicFamily(2, {Series(2), -X}));
        FAIL("expected NOT_DIVISIBLE");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_divisible);
    }
}

TEST_CASE("chart log replays")
{
    MonicFamily p(2, {X * Rat(-2), X * X - Y * Y * Y * Y});
    ChartFamily c = chart_tschirnhausen(ChartFamily{p, {}});
    c = blowup_substitute(c);
    c = chart_rescale(blowup_substitute(ChartFamily{MonicFamily(2, {Series(2), -(X * X) * (Y * Y)}), {}}), 1);
    CHECK(c.log.size() == 2);
    CHECK(replay(MonicFamily(2, {Series(2), -(X * X) * (Y * Y)}), c.log) == c.family);
    ChartFamily c2f = blowup_substitute(chart_tschirnhausen(ChartFamily{p, {}}));
    CHECK(replay(p, c2f.log) == c2f.family);
    // Reconstruction: a_i(x y, y) = y^i ~a_i.
    ChartFamily b = blowup_substitute(cubic());
    for (int i = 1; i <= 3; ++i) {
        CHECK(mul_monomial(b.family.a(i), Monomial{0, i}) == series_substitute(cubic().a(i), 0, Monomial{1, 1}));
    }
}

TEST_CASE("horned split of the circle")
{
    HornedSplit hs = horned_split(circle(), 12);
    CHECK(hs.region.exponent == 1);
    REQUIRE(hs.roots.branches.size() == 2);
    CHECK(hs.roots.groups.empty());
    Series w = mul_monomial(series_sqrt((X * X + c2(1)).truncated(12)), Monomial{0, 1});
    CHECK(hs.roots.branches[0] == (-w).truncated(12));
    CHECK(hs.roots.branches[1] == w.truncated(12));
    CHECK(split_residual_zero(circle(), hs, 12));
}

TEST_CASE("horned split of the cubic")
{
    HornedSplit hs = horned_split(cubic(), 12);
    CHECK(hs.region.exponent == 1);
    CHECK(hs.roots.branches.size() == 1);
    REQUIRE(hs.roots.groups.size() == 1);
    CHECK(hs.roots.groups[0].scale == Monomial{0, 1});
    CHECK(split_residual_zero(cubic(), hs, 12));
    // y = 0: (z + x)^2 (z - 2x).
    std::vector<Series> a;
    for (int i = 1; i <= 3; ++i) {
        a.push_back(at_zero(cubic().a(i), 1));
    }
    CHECK(MonicFamily(2, a) == MonicFamily::from_roots(2, {-X, -X, X * Rat(2)}));

    // Numeric cross-check of the branches against ordered roots.
    const double x = 0.07, y = 0.2;
    std::vector<double> roots;
    const double xs = x * y;
    for (const auto &b : hs.roots.branches) {
        roots.push_back(evaluate(b, std::vector<double>{x, y}));
    }
    for (const auto &g : hs.roots.groups) {
        auto pg = g.polynomial().evaluate(std::vector<double>{x, y});
        for (double r : ordered_roots(pg)) {
            roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end());
    auto expect = ordered_roots(cubic().evaluate(std::vector<double>{xs, y}));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(roots[i] == Catch::Approx(expect[i]).margin(1e-9));
    }
}

TEST_CASE("horned split trivial and shifted fixtures")
{
    HornedSplit hs = horned_split(MonicFamily(2, {Series(2), -(Y * Y)}), 8);
    CHECK(hs.region.exponent == 1);
    CHECK(hs.roots.branches == std::vector<Series>{(-Y).truncated(8), Y.truncated(8)});

    MonicFamily p(2, {X * Rat(-2), X * X - Y * Y});
    HornedSplit hp = horned_split(p, 8);
    CHECK(split_residual_zero(p, hp, 8));
    auto bd = boundary_derivative(p, 8);
    for (const auto &b : bd.branches) {
        CHECK(b == Series::constant(1, Rat(1), 8));
    }

    try {
        horned_split(MonicFamily(2, {Series(2), X * X + Y * Y}), 8);
        FAIL("expected HYPERBOLICITY_VIOLATION");
    } catch (const error &e) {
        CHECK(e.code() == errc::hyperbolicity_violation);
    }
}

TEST_CASE("case 1.2 rescaling")
{
    // z^2 - x^2 y^2 (1 + y): a_2(0, y) = 0.
    MonicFamily p(2, {Series(2), -(X * X * Y * Y * (c2(1) + Y))});
    HornedSplit hs = horned_split(p, 10);
    CHECK(split_residual_zero(p, hs, 10));
    REQUIRE(hs.roots.branches.size() == 2);
    CHECK(!hs.roots.chart_log.empty());

    // Eigenvalue polynomial z (z - (x1^2 + x2^2)) after (w1, w1 w2).
    MonicFamily q(2, {-(X * X) * (c2(1) + Y * Y), Series(2)});
    HornedSplit hq = horned_split(q, 10);
    CHECK(split_residual_zero(q, hq, 10));
}

TEST_CASE("boundary derivatives")
{
    auto bc = boundary_derivative(circle(), 10);
    REQUIRE(bc.branches.size() == 2);
    for (const auto &b : bc.branches) {
        CHECK(b.is_zero());
        CHECK(b.num_vars() == 1);
    }
    auto bz = boundary_derivative(MonicFamily(2, {Series(2), Series(2)}), 6);
    for (const auto &b : bz.branches) {
        CHECK(b.is_zero());
    }

    // Cubic: the sum of all boundary derivatives is d/dx of -a_1 = 0, and the
    // rational branch plus the group trace must cancel.
    auto bk = boundary_derivative(cubic(), 10);
    REQUIRE(bk.branches.size() == 1);
    REQUIRE(bk.groups.size() == 1);
    Series total = bk.branches[0] - bk.groups[0].a(1);
    CHECK(total.is_zero());
    for (const auto &g : bk.groups) {
        for (const auto &c : g.coeffs()) {
            for (const auto &[m, v] : c.terms()) {
                CHECK(m.degree() >= 0);
            }
        }
    }
    // Numeric: f(x, y) roots of P(x, y, z) near x = 0, difference quotient.
    const double y = 0.1, h = 1e-6;
    auto lo = ordered_roots(cubic().evaluate(std::vector<double>{-h, y}));
    auto hi = ordered_roots(cubic().evaluate(std::vector<double>{h, y}));
    std::vector<double> fd;
    for (int i = 0; i < 3; ++i) {
        fd.push_back((hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) / (2 * h));
    }
    std::vector<double> ours{evaluate(bk.branches[0], std::vector<double>{y})};
    for (double r : ordered_roots(bk.groups[0].evaluate(std::vector<double>{y}))) {
        ours.push_back(r);
    }
    std::sort(fd.begin(), fd.end());
    std::sort(ours.begin(), ours.end());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ours[i] == Catch::Approx(fd[i]).margin(1e-5));
    }
}

TEST_CASE("strict transform and unsubstitute")
{
    CHECK(strict_transform_root(X) == X);
    CHECK(strict_transform_root(X * X) == X * X * Y);
    CHECK(strict_transform_root(X * Y) == X * Y);
    try {
        strict_transform_root(Y);
        FAIL("expected NOT_DIVISIBLE");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_divisible);
    }
    CHECK(unsubstitute(X * Y + Y, 1) == X + Y);
    try {
        unsubstitute(X, 1);
        FAIL("expected NOT_ANALYTIC_IN_CHART");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_analytic_in_chart);
    }
}

TEST_CASE("horned split on random products of analytic roots")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int it = 0; it < 15; ++it) {
        const int d = 2 + it % 3;
        std::vector<Series> roots;
        for (int i = 0; i < d; ++i) {
            Series s(2);
            for (int a = 0; a <= 2; ++a) {
                for (int b = 0; a + b <= 2; ++b) {
                    s.add_term(Monomial{a, b}, Rat(coef(rng)));
                }
            }
            roots.push_back(s);
        }
        MonicFamily p = MonicFamily::from_roots(2, roots);
        HornedSplit hs = horned_split(p, 8);
        INFO(p.to_string());
        CHECK(split_residual_zero(p, hs, 8));
        CHECK(hs.precision() >= 8);
    }
}

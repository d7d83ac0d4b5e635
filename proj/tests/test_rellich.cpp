#include <catch_amalgamated.hpp>

#include <random>

#include <hyperroots/rellich.hpp>

using namespace hyperroots;

namespace
{

Series var1()
{
    return Series::variable(1, 0);
}

std::vector<Series> sorted(std::vector<Series> v)
{
    std::sort(v.begin(), v.end(), [](const Series &a, const Series &b) { return to_string(a) < to_string(b); });
    return v;
}

} // namespace

TEST_CASE("rellich fixtures")
{
    Series x = var1();
    auto r = analytic_roots_1param(MonicFamily(1, {Series(1), -(x * x)}), 8);
    REQUIRE(r.branches.size() == 2);
    CHECK(r.branches[0] == (-x).truncated(8));
    CHECK(r.branches[1] == x.truncated(8));

    MonicFamily p(1, {x * Rat(-2), x * x - x * x * x * x});
    auto r2 = analytic_roots_1param(p, 8);
    REQUIRE(r2.branches.size() == 2);
    CHECK(sorted(r2.branches) == sorted({(x - x * x).truncated(8), (x + x * x).truncated(8)}));
    CHECK(residual_is_zero(verify_product(p.truncated(8), r2)));

    try {
        analytic_roots_1param(MonicFamily(1, {Series(1), x * x}), 8);
        FAIL("expected a hyperbolicity violation");
    } catch (const error &e) {
        CHECK(e.code() == errc::hyperbolicity_violation);
    }

    // z^3: all branches coincide.
    auto r3 = analytic_roots_1param(MonicFamily(1, {Series(1), Series(1), Series(1)}), 6);
    CHECK(r3.branches.size() == 3);
    for (auto &b : r3.branches) {
        CHECK(b.is_zero());
        CHECK(b.trunc_order() == 6);
    }
}

TEST_CASE("verify_product localizes a dropped term")
{
    Series x = var1();
    MonicFamily p = MonicFamily::from_roots(1, {x + x * x * x, -x});
    RootBranchSet good{1, {x + x * x * x, -x}, {}, {}};
    CHECK(residual_is_zero(verify_product(p, good)));
    RootBranchSet bad{1, {x, -x}, {}, {}};
    auto res = verify_product(p, bad);
    CHECK(!residual_is_zero(res));
    CHECK(res[0].valuation().order == 3);
}

TEST_CASE("irrational simple roots are grouped")
{
    Series x = var1();
    MonicFamily p(1, {Series(1), Series::constant(1, Rat(-2)) - x});
    auto r = analytic_roots_1param(p, 6);
    CHECK(r.branches.empty());
    REQUIRE(r.groups.size() == 1);
    CHECK(residual_is_zero(verify_product(p.truncated(6), r)));

    // z (z^2 - 2 x^2): a rescaled group.
    MonicFamily q = family_product(MonicFamily::from_roots(1, {x * x * x}), MonicFamily(1, {Series(1), Series::constant(1, Rat(-2)) * x * x}));
    auto rq = analytic_roots_1param(q, 6);
    CHECK(rq.branches.size() == 1);
    REQUIRE(rq.groups.size() == 1);
    CHECK(rq.groups[0].scale == Monomial{1});
    CHECK(residual_is_zero(verify_product(q.truncated(6), rq)));
}

TEST_CASE("rellich round trip on random products")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int it = 0; it < 30; ++it) {
        const int d = 1 + it % 5;
        std::vector<Series> roots;
        for (int i = 0; i < d; ++i) {
            Series s(1);
            for (int k = 0; k <= 4; ++k) {
                s.add_term(Monomial{k}, Rat(coef(rng)));
            }
            roots.push_back(s);
        }
        MonicFamily p = MonicFamily::from_roots(1, roots);
        auto r = analytic_roots_1param(p, 12);
        std::vector<Series> expect;
        for (auto &s : roots) {
            expect.push_back(s.truncated(12));
        }
        CHECK(r.groups.empty());
        CHECK(sorted(r.branches) == sorted(expect));
    }
}

TEST_CASE("descent in two parameters")
{
    const Series x = Series::variable(2, 0);
    const Series y = Series::variable(2, 1);
    const Series one = Series::constant(2, Rat(1));

    // z (z - x^2 (1 + y^2)): exact root 0, then a linear factor.
    MonicFamily p(2, {-(x * x) * (one + y * y), Series(2)});
    auto r = analytic_roots(p, 10);
    REQUIRE(r.branches.size() == 2);
    CHECK(residual_is_zero(verify_product(p.truncated(10), r)));

    // z^2 - x^2 (1 + y)^2 y^4: monomial times a unit.
    Series u = one + y;
    MonicFamily q(2, {Series(2), -(x * x * y * y * y * y * u * u)});
    auto rq = analytic_roots(q, 10);
    CHECK(rq.branches.size() == 2);
    CHECK(residual_is_zero(verify_product(q.truncated(10), rq)));

    // z^2 - (x^2 + y^2)^2: polynomial square root of -a_2.
    Series s = x * x + y * y;
    MonicFamily h(2, {Series(2), -(s * s)});
    auto rh = analytic_roots(h, 10);
    REQUIRE(rh.branches.size() == 2);
    CHECK(rh.branches[0] == (-s).truncated(10));
    CHECK(rh.branches[1] == s.truncated(10));

    // z^2 - (x^2 + y^2): no analytic roots in this chart.
    try {
        analytic_roots(MonicFamily(2, {Series(2), -s}), 10);
        FAIL("expected NOT_WELL_ORDERED");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_well_ordered);
    }
}

TEST_CASE("polynomial square roots")
{
    const Series x = Series::variable(2, 0);
    const Series y = Series::variable(2, 1);
    Series h = x * x - x * y * Rat(3) + Series::constant(2, Rat(2));
    auto sq = polynomial_sqrt(h * h * Rat(5));
    REQUIRE(sq);
    CHECK(sq->first == 45);
    CHECK(sq->second == h * make_rat(-1, 3));
    CHECK(!polynomial_sqrt(x * x + y * y));
    CHECK(!polynomial_sqrt(x * y * y));
}

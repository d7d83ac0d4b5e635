#include <catch_amalgamated.hpp>

#include <random>

#include <hyperroots/series.hpp>

using namespace hyperroots;

namespace
{

Series poly(int nvars, std::initializer_list<std::pair<Monomial, long>> terms, int trunc = Series::exact)
{
    Series s(nvars, trunc);
    for (const auto &[m, c] : terms) {
        s.add_term(m, Rat(c));
    }
    return s;
}

Series random_series(std::mt19937 &rng, int nvars, int trunc, int nterms)
{
    std::uniform_int_distribution<int> e(0, 3);
    std::uniform_int_distribution<int> c(-5, 5);
    Series s(nvars, trunc);
    for (int k = 0; k < nterms; ++k) {
        std::vector<int> ex(static_cast<std::size_t>(nvars));
        for (auto &v : ex) {
            v = e(rng);
        }
        s.add_term(Monomial(ex), make_rat(c(rng), 1 + (k % 3)));
    }
    return s;
}

} // namespace

TEST_CASE("monomial packing and order")
{
    Monomial a{1, 2};
    Monomial b{0, 3};
    CHECK(a.degree() == 3);
    CHECK(a[1] == 2);
    CHECK((a * b)[1] == 5);
    CHECK(a < b); // same degree: tie-break on the packed exponents
    CHECK(Monomial{1} < Monomial{0, 2});
    CHECK(Monomial{1, 0, 2}.erase(1) == Monomial{1, 2});
    CHECK(Monomial{1, 2}.insert(1) == Monomial{1, 0, 2});
    CHECK_THROWS_AS(Monomial::unit(0, 200) * Monomial::unit(0, 100), error);
}

TEST_CASE("series arithmetic examples")
{
    Series x = Series::variable(1, 0);
    Series one = Series::constant(1, Rat(1));
    CHECK((one + x) * (one - x) == poly(1, {{Monomial{}, 1}, {Monomial{2}, -1}}));

    Series inv = one / (one + x).truncated(3);
    CHECK(inv == poly(1, {{Monomial{}, 1}, {Monomial{1}, -1}, {Monomial{2}, 1}, {Monomial{3}, -1}}, 3));

    Series x2 = Series::variable(2, 0, 2);
    Series y2 = Series::variable(2, 1, 2);
    Series one2 = Series::constant(2, Rat(1), 2);
    CHECK((one2 + x2) * (one2 + y2) ==
          poly(2, {{Monomial{}, 1}, {Monomial{1, 0}, 1}, {Monomial{0, 1}, 1}, {Monomial{1, 1}, 1}}, 2));

    CHECK_THROWS_MATCHES(one / x.truncated(4), error,
                         Catch::Matchers::Predicate<error>([](const error &e) { return e.code() == errc::div_by_non_unit; }));
    CHECK_THROWS_MATCHES(x + x2, error,
                         Catch::Matchers::Predicate<error>([](const error &e) { return e.code() == errc::var_mismatch; }));
}

TEST_CASE("series sqrt")
{
    Series a = poly(1, {{Monomial{}, 1}, {Monomial{2}, 1}}, 4);
    Series s = series_sqrt(a);
    Series expect(1, 4);
    expect.add_term(Monomial{}, Rat(1));
    expect.add_term(Monomial{2}, make_rat(1, 2));
    expect.add_term(Monomial{4}, make_rat(-1, 8));
    CHECK(s == expect);

    CHECK(series_sqrt(Series::constant(1, Rat(4))) == Series::constant(1, Rat(2)));

    Series b = poly(1, {{Monomial{}, 9}, {Monomial{1}, 6}}, 2);
    Series r = series_sqrt(b);
    CHECK(r * r == b);
    CHECK(r.coeff(Monomial{2}) == make_rat(-1, 6));

    auto code_of = [](auto &&f) {
        try {
            f();
        } catch (const error &e) {
            return e.code();
        }
        return errc::invalid_argument;
    };
    CHECK(code_of([] { series_sqrt(Series::constant(1, Rat(2), 3)); }) == errc::non_square_constant);
    CHECK(code_of([] { series_sqrt(Series::constant(1, Rat(-4), 3)); }) == errc::negative_constant);
}

TEST_CASE("substitution and monomial division")
{
    Series a = poly(2, {{Monomial{2, 0}, 1}, {Monomial{0, 2}, 1}});
    Series b = series_substitute(a, 0, Monomial{1, 1});
    CHECK(b == poly(2, {{Monomial{2, 2}, 1}, {Monomial{0, 2}, 1}}));
    CHECK(series_divide_monomial(b, Monomial{0, 2}) == poly(2, {{Monomial{2, 0}, 1}, {Monomial{}, 1}}));

    Series x = Series::variable(2, 0);
    CHECK(series_substitute(x, 0, Monomial{1, 0}) == x);

    Series x3 = poly(2, {{Monomial{3, 0}, 1}});
    CHECK(series_substitute(x3, 0, Monomial{0, 1}, Rat(2)) == poly(2, {{Monomial{0, 3}, 8}}));
    CHECK_THROWS_AS(series_substitute(x3, 2, Monomial{0, 1}), error);

    CHECK(series_divide_monomial(Series(2), Monomial{0, 3}).is_zero());
    Series c = poly(2, {{Monomial{3, 0}, 1}, {Monomial{2, 1}, 1}});
    CHECK(series_divide_monomial(c, Monomial{2, 0}) == poly(2, {{Monomial{1, 0}, 1}, {Monomial{0, 1}, 1}}));
    try {
        series_divide_monomial(c, Monomial{0, 1});
        FAIL("expected NOT_DIVISIBLE");
    } catch (const error &e) {
        CHECK(e.code() == errc::not_divisible);
        CHECK(std::string(e.what()).find("[3,0]") != std::string::npos);
    }
}

TEST_CASE("ring properties on random series")
{
    std::mt19937 rng(7);
    for (int it = 0; it < 30; ++it) {
        const int t = 6;
        Series a = random_series(rng, 3, t, 6);
        Series b = random_series(rng, 3, t, 6);
        Series c = random_series(rng, 3, t, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        Monomial m{1, 0, 2};
        Series am = mul_monomial(a, m);
        CHECK(series_divide_monomial(am, m) == a);
        auto va = a.valuation();
        auto vb = b.valuation();
        if (!va.is_infinite() && !vb.is_infinite() && va.order + vb.order <= t) {
            CHECK((a * b).valuation().order == va.order + vb.order);
        }
        Series u = a + Series::constant(3, Rat(4), t);
        if (!is_zero(u.constant_term())) {
            Series q = u / (b + Series::constant(3, Rat(1), t));
            CHECK(q * (b + Series::constant(3, Rat(1), t)) == u);
        }
    }
}

TEST_CASE("exact polynomial division")
{
    Series x = Series::variable(2, 0);
    Series y = Series::variable(2, 1);
    Series p = (x + y) * (x - y * y);
    CHECK(exact_divide(p, x + y) == x - y * y);
    CHECK_THROWS_AS(exact_divide(p, x + y + Series::constant(2, Rat(1))), error);
    CHECK(derivative(p, 1) == Series::constant(2, Rat(1)) * (x - y * y) + (x + y) * (Series::constant(2, Rat(-2)) * y));
    Series t = Series::variable(1, 0);
    CHECK(drop_var(p, 0) == Series::constant(1, Rat(-1)) * t * t * t);
}

TEST_CASE("rational products agree with termwise accumulation")
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 12), ex(0, 4);
    for (int it = 0; it < 40; ++it) {
        const int n = 1 + it % 3;
        const int t = it % 2 == 0 ? Series::exact : 6;
        auto draw = [&] {
            Series s(n, t);
            for (int k = 0; k < 8; ++k) {
                std::vector<int> e(static_cast<std::size_t>(n));
                for (auto &v : e) {
                    v = ex(rng);
                }
                s += Series::monomial(n, Monomial(std::span<const int>(e)), make_rat(num(rng), den(rng)), t);
            }
            return s;
        };
        const Series a = draw(), b = draw();
        Series expect(n, t);
        for (const auto &[ma, ca] : a.terms()) {
            for (const auto &[mb, cb] : b.terms()) {
                expect += Series::monomial(n, ma * mb, ca * cb, t);
            }
        }
        CHECK(a * b == expect.truncated(t));
    }
}

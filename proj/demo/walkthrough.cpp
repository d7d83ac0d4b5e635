// Short tour: roots of a one-parameter family, a horned split in two
// parameters, and eigenvectors of a symmetric family before and after a
// blow-up.

#include <iostream>

#include <hyperroots/blowup.hpp>
#include <hyperroots/rellich.hpp>
#include <hyperroots/specfam.hpp>

using namespace hyperroots;

int main()
{
    const Series x = Series::variable(1, 0);
    const Series one = Series::constant(1, Rat(1));

    // (z - x)^2 - x^4: two branches x - x^2 and x + x^2.
    const MonicFamily p(1, {x * Rat(-2), x * x - x * x * x * x});
    std::cout << "family   " << p.to_string() << "\n";
    for (const auto &b : analytic_roots_1param(p, 8).branches) {
        std::cout << "  branch " << to_string(b) << "\n";
    }

    // Roots 1 + x and 1 + x + x^3 stay close; roots near +-sqrt(2) are
    // reported as a group.
    const MonicFamily q = family_product(MonicFamily::from_roots(1, {one + x, one + x + x * x * x}),
                                         MonicFamily(1, {Series(1), Series::constant(1, Rat(-2)) + x}));
    const auto rq = analytic_roots_1param(q, 6);
    std::cout << "family   " << q.to_string() << "\n";
    for (const auto &b : rq.branches) {
        std::cout << "  branch " << to_string(b) << "\n";
    }
    for (const auto &g : rq.groups) {
        std::cout << "  group  " << g.polynomial().to_string() << "\n";
    }

    // z^2 - (x^2 + y^2) on {|x| < y}: roots +-y sqrt(1 + x^2) after x -> x y.
    const Series X = Series::variable(2, 0);
    const Series Y = Series::variable(2, 1);
    const MonicFamily circle(2, {Series(2), -(X * X + Y * Y)});
    const HornedSplit hs = horned_split(circle, 8);
    std::cout << "family   " << circle.to_string() << ", horn exponent " << hs.region.exponent << "\n";
    for (const auto &b : hs.roots.branches) {
        std::cout << "  branch " << to_string(b) << "\n";
    }

    // [[x^2, xy], [xy, y^2]]: the eigenvector minors are not ordered at the
    // origin; after y -> x y they are.
    Matrix<Series> m(2, 2, Series(2));
    m(0, 0) = X * X;
    m(0, 1) = m(1, 0) = X * Y;
    m(1, 1) = Y * Y;
    const MatrixFamily a(2, m, symmetry::symmetric);
    try {
        diagonalize_family(a, 6);
    } catch (const error &e) {
        std::cout << "matrix   direct: " << e.what() << "\n";
    }
    const EigenDecomp dec = diagonalize_family(a.substituted(1, Monomial{1, 1}), 6);
    for (const auto &br : dec.branches) {
        std::cout << "  eigenvalue " << to_string(br.value) << "\n";
        for (const auto &v : br.basis) {
            std::cout << "    vector (";
            for (std::size_t i = 0; i < v.u.size(); ++i) {
                std::cout << (i ? ", " : "") << to_string(v.u[i]);
            }
            std::cout << ") / sqrt(" << to_string(v.c) << ")\n";
        }
    }
    std::cout << "  checks " << (dec.check.ok() ? "ok" : "failed") << "\n";
}

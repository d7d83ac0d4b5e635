#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <hyperroots/error.hpp>
#include <hyperroots/rational.hpp>

namespace hyperroots
{

// Dense univariate polynomial over Q, coefficients in ascending degree.
class RatPoly
{
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : m_c(std::move(coeffs))
    {
        normalize();
    }
    RatPoly(std::initializer_list<long> coeffs)
    {
        for (long c : coeffs) {
            m_c.emplace_back(c);
        }
        normalize();
    }

    static RatPoly constant(const Rat &c)
    {
        return RatPoly(std::vector<Rat>{c});
    }

    // z^d + a_1 z^{d-1} + ... + a_d from the list a_1..a_d.
    static RatPoly monic(std::span<const Rat> a)
    {
        std::vector<Rat> c(a.size() + 1);
        c[a.size()] = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            c[a.size() - 1 - i] = a[i];
        }
        return RatPoly(std::move(c));
    }

    static RatPoly from_roots(std::span<const Rat> roots)
    {
        RatPoly p = constant(Rat(1));
        for (const auto &r : roots) {
            p = p * RatPoly(std::vector<Rat>{-r, Rat(1)});
        }
        return p;
    }

    int degree() const
    {
        return static_cast<int>(m_c.size()) - 1;
    }
    bool is_zero() const
    {
        return m_c.empty();
    }
    const std::vector<Rat> &coeffs() const
    {
        return m_c;
    }
    Rat operator[](int i) const
    {
        return i >= 0 && i <= degree() ? m_c[static_cast<std::size_t>(i)] : Rat(0);
    }
    Rat leading() const
    {
        return m_c.empty() ? Rat(0) : m_c.back();
    }

    // a_1..a_d of the monic normalization.
    std::vector<Rat> monic_coeffs() const
    {
        std::vector<Rat> a;
        const Rat lc = leading();
        for (int i = degree() - 1; i >= 0; --i) {
            a.push_back(m_c[static_cast<std::size_t>(i)] / lc);
        }
        return a;
    }

    Rat operator()(const Rat &x) const
    {
        Rat acc(0);
        for (auto it = m_c.rbegin(); it != m_c.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    RatPoly derivative() const
    {
        std::vector<Rat> d;
        for (std::size_t i = 1; i < m_c.size(); ++i) {
            d.push_back(m_c[i] * static_cast<long>(i));
        }
        return RatPoly(std::move(d));
    }

    RatPoly make_monic() const
    {
        if (is_zero()) {
            return *this;
        }
        RatPoly r = *this;
        const Rat lc = leading();
        for (auto &c : r.m_c) {
            c /= lc;
        }
        return r;
    }

    friend RatPoly operator+(const RatPoly &a, const RatPoly &b)
    {
        std::vector<Rat> c(std::max(a.m_c.size(), b.m_c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        }
        return RatPoly(std::move(c));
    }
    friend RatPoly operator-(const RatPoly &a, const RatPoly &b)
    {
        std::vector<Rat> c(std::max(a.m_c.size(), b.m_c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
        }
        return RatPoly(std::move(c));
    }
    friend RatPoly operator*(const RatPoly &a, const RatPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rat> c(a.m_c.size() + b.m_c.size() - 1);
        for (std::size_t i = 0; i < a.m_c.size(); ++i) {
            for (std::size_t j = 0; j < b.m_c.size(); ++j) {
                c[i + j] += a.m_c[i] * b.m_c[j];
            }
        }
        return RatPoly(std::move(c));
    }
    friend bool operator==(const RatPoly &a, const RatPoly &b)
    {
        return a.m_c == b.m_c;
    }

    // Quotient and remainder, b != 0.
    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly &a, const RatPoly &b)
    {
        if (b.is_zero()) {
            raise(errc::div_by_non_unit, "polynomial division by zero");
        }
        std::vector<Rat> r = a.m_c;
        const int db = b.degree();
        const int dq = a.degree() - db;
        if (dq < 0) {
            return {RatPoly{}, a};
        }
        std::vector<Rat> q(static_cast<std::size_t>(dq + 1));
        const Rat lc = b.leading();
        for (int k = dq; k >= 0; --k) {
            Rat t = r[static_cast<std::size_t>(k + db)] / lc;
            q[static_cast<std::size_t>(k)] = t;
            if (hyperroots::is_zero(t)) {
                continue;
            }
            for (int j = 0; j <= db; ++j) {
                r[static_cast<std::size_t>(k + j)] -= t * b.m_c[static_cast<std::size_t>(j)];
            }
        }
        r.resize(static_cast<std::size_t>(db));
        return {RatPoly(std::move(q)), RatPoly(std::move(r))};
    }

    std::string to_string(const std::string &var = "z") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rat &c = m_c[static_cast<std::size_t>(i)];
            if (hyperroots::is_zero(c)) {
                continue;
            }
            std::string cs = c.get_str();
            bool neg = cs[0] == '-';
            if (neg) {
                cs = cs.substr(1);
            }
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (cs != "1" || i == 0) {
                s += cs;
            }
            if (i > 0) {
                s += (cs != "1" ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
            }
        }
        return s;
    }

private:
    void normalize()
    {
        while (!m_c.empty() && hyperroots::is_zero(m_c.back())) {
            m_c.pop_back();
        }
    }

    std::vector<Rat> m_c;
};

inline RatPoly gcd(RatPoly a, RatPoly b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

// Resultant by the Euclidean recurrence.
inline Rat resultant(const RatPoly &a, const RatPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return Rat(0);
    }
    if (b.degree() == 0) {
        Rat r(1);
        for (int i = 0; i < a.degree(); ++i) {
            r *= b.leading();
        }
        return r;
    }
    if (a.degree() < b.degree()) {
        Rat r = resultant(b, a);
        return (a.degree() * b.degree()) % 2 == 0 ? r : Rat(-r);
    }
    RatPoly rem = divmod(a, b).second;
    if (rem.is_zero()) {
        return Rat(0);
    }
    Rat scale(1);
    for (int i = 0; i < a.degree() - rem.degree(); ++i) {
        scale *= b.leading();
    }
    Rat r = scale * resultant(b, rem);
    return (a.degree() * b.degree()) % 2 == 0 ? r : Rat(-r);
}

// Discriminant of the monic normalization; 1 for linear polynomials.
inline Rat discriminant(const RatPoly &p)
{
    const int d = p.degree();
    if (d <= 1) {
        return Rat(1);
    }
    RatPoly m = p.make_monic();
    Rat r = resultant(m, m.derivative());
    return (d * (d - 1) / 2) % 2 == 0 ? r : Rat(-r);
}

// Yun's square-free decomposition of the monic normalization: pairs
// (factor, multiplicity) with increasing multiplicity, factors monic,
// square-free and pairwise coprime.
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly &p)
{
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() <= 0) {
        return out;
    }
    RatPoly f = p.make_monic();
    RatPoly df = f.derivative();
    RatPoly g = gcd(f, df);
    RatPoly b = divmod(f, g).first;
    RatPoly c = divmod(df, g).first;
    RatPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        RatPoly a = gcd(b, d);
        if (a.degree() > 0) {
            out.emplace_back(a, i);
        }
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
    }
    return out;
}

namespace detail
{

inline int sign_changes(const std::vector<int> &signs)
{
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

} // namespace detail

// Number of distinct real roots, by a Sturm sequence evaluated at +-infinity.
inline int count_distinct_real_roots(const RatPoly &p)
{
    if (p.degree() <= 0) {
        return 0;
    }
    std::vector<RatPoly> seq{p, p.derivative()};
    while (seq.back().degree() > 0) {
        RatPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) {
            break;
        }
        seq.push_back(RatPoly{} - r);
    }
    std::vector<int> at_pos;
    std::vector<int> at_neg;
    for (const auto &q : seq) {
        int s = sgn(q.leading());
        at_pos.push_back(s);
        at_neg.push_back(q.degree() % 2 == 0 ? s : -s);
    }
    return detail::sign_changes(at_neg) - detail::sign_changes(at_pos);
}

// Roots of z^d + a_1 z^{d-1} + ... + a_d as companion-matrix eigenvalues.
inline std::vector<std::complex<double>> companion_roots(std::span<const double> a)
{
    const auto d = static_cast<Eigen::Index>(a.size());
    std::vector<std::complex<double>> roots;
    if (d == 0) {
        return roots;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        comp(0, i) = -a[static_cast<std::size_t>(i)];
        if (i + 1 < d) {
            comp(i + 1, i) = 1.0;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (Eigen::Index i = 0; i < d; ++i) {
        roots.push_back(es.eigenvalues()(i));
    }
    return roots;
}

namespace detail
{

// Candidate rational approximations of x with denominator <= max_den.
inline std::vector<Rat> convergents(long double x, const mpz_class &max_den)
{
    std::vector<Rat> out;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    long double r = x;
    for (int it = 0; it < 40; ++it) {
        long double fl = std::floor(r);
        if (std::fabs(fl) > 1e18L) {
            break;
        }
        mpz_class a(static_cast<double>(fl));
        mpz_class p2 = a * p1 + p0;
        mpz_class q2 = a * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        out.push_back(make_rat(p2, q2));
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        long double frac = r - fl;
        if (frac < 1e-18L) {
            break;
        }
        r = 1.0L / frac;
    }
    return out;
}

} // namespace detail

// All rational roots of p with multiplicities, ascending. Each candidate is
// found numerically on a square-free factor and confirmed exactly.
inline std::vector<std::pair<Rat, int>> rational_roots(const RatPoly &p)
{
    std::vector<std::pair<Rat, int>> out;
    for (const auto &[f, mult] : squarefree_decomposition(p)) {
        // Integer-cleared form: rational roots have denominators dividing
        // its leading coefficient.
        mpz_class lcm_den = 1;
        for (const auto &c : f.coeffs()) {
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
        }
        mpz_class max_den = abs(mpz_class(f.leading() * lcm_den));
        std::vector<Rat> found;
        RatPoly rest = f;
        if (is_zero(f[0])) {
            found.emplace_back(0);
            rest = divmod(f, RatPoly{0, 1}).first;
        }
        std::vector<double> a;
        for (const auto &c : rest.monic_coeffs()) {
            a.push_back(to_double(c));
        }
        for (const auto &z : companion_roots(a)) {
            if (std::fabs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) {
                continue;
            }
            // Newton polish in extended precision on the monic factor.
            long double x = z.real();
            for (int it = 0; it < 8; ++it) {
                long double v = 0, dv = 0;
                for (int i = rest.degree(); i >= 0; --i) {
                    dv = dv * x + v;
                    v = v * x + static_cast<long double>(to_double(rest[i]));
                }
                if (dv == 0) {
                    break;
                }
                x -= v / dv;
            }
            // An early convergent may be a different root; keep every hit.
            for (const auto &cand : detail::convergents(x, max_den)) {
                if (is_zero(rest(cand)) &&
                    std::find(found.begin(), found.end(), cand) == found.end()) {
                    found.push_back(cand);
                }
            }
        }
        for (auto &r : found) {
            out.emplace_back(r, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    return out;
}

} // namespace hyperroots

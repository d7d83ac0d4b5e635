#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include <hyperroots/error.hpp>
#include <hyperroots/rational.hpp>

namespace hyperroots
{

// Exponent vector packed into one machine word: up to eight variables with
// exponents in [0, 255]. The ordering is graded (total degree first) with a
// lexicographic tie-break, which is a monomial order.
class Monomial
{
public:
    static constexpr int max_vars = 8;
    static constexpr int max_exponent = 255;

    constexpr Monomial() = default;

    Monomial(std::initializer_list<int> exps) : Monomial(std::span<const int>(exps.begin(), exps.size())) {}

    explicit Monomial(std::span<const int> exps)
    {
        if (exps.size() > static_cast<std::size_t>(max_vars)) {
            raise(errc::var_out_of_range, "at most 8 variables are supported");
        }
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 || exps[i] > max_exponent) {
                raise(errc::invalid_argument, "exponent out of range [0, 255]");
            }
            m_bits |= static_cast<std::uint64_t>(exps[i]) << (8 * i);
            m_degree += exps[i];
        }
    }

    static Monomial from_bits(std::uint64_t bits)
    {
        Monomial m;
        m.m_bits = bits;
        for (int i = 0; i < max_vars; ++i) {
            m.m_degree += static_cast<int>((bits >> (8 * i)) & 0xffu);
        }
        return m;
    }

    static Monomial unit(int var, int power = 1)
    {
        if (var < 0 || var >= max_vars) {
            raise(errc::var_out_of_range, "variable index " + std::to_string(var));
        }
        if (power < 0 || power > max_exponent) {
            raise(errc::invalid_argument, "exponent out of range [0, 255]");
        }
        Monomial m;
        m.m_bits = static_cast<std::uint64_t>(power) << (8 * var);
        m.m_degree = power;
        return m;
    }

    int operator[](int i) const
    {
        return static_cast<int>((m_bits >> (8 * i)) & 0xffu);
    }
    int degree() const
    {
        return m_degree;
    }
    std::uint64_t bits() const
    {
        return m_bits;
    }
    bool is_one() const
    {
        return m_bits == 0;
    }

    // True if this monomial divides `other`.
    bool divides(const Monomial &other) const
    {
        for (int i = 0; i < max_vars; ++i) {
            if ((*this)[i] > other[i]) {
                return false;
            }
        }
        return true;
    }

    Monomial with(int var, int e) const
    {
        std::uint64_t mask = std::uint64_t{0xff} << (8 * var);
        return from_bits((m_bits & ~mask) | (static_cast<std::uint64_t>(e) << (8 * var)));
    }

    // Removes variable `var`, shifting the higher variables down.
    Monomial erase(int var) const
    {
        std::uint64_t low = var == 0 ? 0 : (m_bits & ((std::uint64_t{1} << (8 * var)) - 1));
        std::uint64_t high = var + 1 >= max_vars ? 0 : (m_bits >> (8 * (var + 1)));
        return from_bits(low | (high << (8 * var)));
    }

    // Inserts a new variable with exponent 0 at position `var`.
    Monomial insert(int var) const
    {
        if ((*this)[max_vars - 1] != 0) {
            raise(errc::var_out_of_range, "too many variables");
        }
        std::uint64_t low = var == 0 ? 0 : (m_bits & ((std::uint64_t{1} << (8 * var)) - 1));
        std::uint64_t high = m_bits >> (8 * var);
        return from_bits(low | (high << (8 * (var + 1))));
    }

    std::vector<int> exponents(int nvars) const
    {
        std::vector<int> out(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) {
            out[static_cast<std::size_t>(i)] = (*this)[i];
        }
        return out;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        if (a.m_degree + b.m_degree > max_exponent) {
            for (int i = 0; i < max_vars; ++i) {
                if (a[i] + b[i] > max_exponent) {
                    raise(errc::invalid_argument, "exponent overflow (> 255)");
                }
            }
        }
        Monomial m;
        m.m_bits = a.m_bits + b.m_bits;
        m.m_degree = a.m_degree + b.m_degree;
        return m;
    }

    friend Monomial operator/(const Monomial &a, const Monomial &b)
    {
        assert(b.divides(a));
        Monomial m;
        m.m_bits = a.m_bits - b.m_bits;
        m.m_degree = a.m_degree - b.m_degree;
        return m;
    }

    friend bool operator==(const Monomial &a, const Monomial &b)
    {
        return a.m_bits == b.m_bits;
    }
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.m_degree <=> b.m_degree; c != 0) {
            return c;
        }
        return a.m_bits <=> b.m_bits;
    }

    Monomial pow(int e) const
    {
        Monomial r;
        for (int i = 0; i < e; ++i) {
            r = r * *this;
        }
        return r;
    }

private:
    std::uint64_t m_bits = 0;
    int m_degree = 0;
};

// Order of a series: the minimal total degree of a nonzero term.
struct Valuation {
    static constexpr int infinite_order = std::numeric_limits<int>::max();
    int order = infinite_order;

    bool is_infinite() const
    {
        return order == infinite_order;
    }
    friend auto operator<=>(const Valuation &, const Valuation &) = default;
};

namespace detail
{

constexpr int exact_order = std::numeric_limits<int>::max();

template <typename C>
bool coeff_is_zero(const C &c)
{
    return is_zero(c);
}

inline int shift_order(int t, int k)
{
    if (t == exact_order) {
        return t;
    }
    return std::max(-1, t + k);
}

} // namespace detail

// Truncated multivariate power series with exact coefficients.
//
// Every term of total degree <= trunc_order() is known; terms above it are
// unknown and never stored. The sentinel `exact` marks a polynomial, i.e. a
// series whose unlisted terms are known to vanish.
template <typename C>
class BasicSeries
{
public:
    using coeff_type = C;
    using term_map = std::map<Monomial, C>;

    static constexpr int exact = detail::exact_order;

    BasicSeries() = default;

    explicit BasicSeries(int nvars, int trunc = exact) : m_nvars(nvars), m_trunc(trunc)
    {
        if (nvars < 0 || nvars > Monomial::max_vars) {
            raise(errc::var_out_of_range, "number of variables must be in [0, 8]");
        }
        if (trunc < -1) {
            m_trunc = -1;
        }
    }

    static BasicSeries constant(int nvars, const C &c, int trunc = exact)
    {
        BasicSeries s(nvars, trunc);
        s.add_term(Monomial{}, c);
        return s;
    }

    static BasicSeries variable(int nvars, int var, int trunc = exact)
    {
        if (var < 0 || var >= nvars) {
            raise(errc::var_out_of_range, "variable index " + std::to_string(var));
        }
        BasicSeries s(nvars, trunc);
        s.add_term(Monomial::unit(var), C(1));
        return s;
    }

    static BasicSeries monomial(int nvars, const Monomial &m, const C &c, int trunc = exact)
    {
        BasicSeries s(nvars, trunc);
        s.add_term(m, c);
        return s;
    }

    int num_vars() const
    {
        return m_nvars;
    }
    int trunc_order() const
    {
        return m_trunc;
    }
    bool is_exact() const
    {
        return m_trunc == exact;
    }
    const term_map &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }

    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1 && m_terms.begin()->first.is_one());
    }

    C coeff(const Monomial &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? C(0) : it->second;
    }

    C constant_term() const
    {
        return coeff(Monomial{});
    }

    Valuation valuation() const
    {
        if (m_terms.empty()) {
            return {};
        }
        return {m_terms.begin()->first.degree()};
    }

    // Highest total degree present, -1 for the zero series.
    int degree() const
    {
        return m_terms.empty() ? -1 : m_terms.rbegin()->first.degree();
    }

    // Accumulates c * m; terms above the truncation order are dropped.
    void add_term(const Monomial &m, const C &c)
    {
        if (m.degree() > m_trunc || detail::coeff_is_zero(c)) {
            return;
        }
        check_vars(m);
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (detail::coeff_is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    BasicSeries truncated(int t) const
    {
        BasicSeries r(m_nvars, std::min(t, m_trunc));
        for (const auto &[m, c] : m_terms) {
            if (m.degree() > r.m_trunc) {
                break;
            }
            r.m_terms.emplace_hint(r.m_terms.end(), m, c);
        }
        return r;
    }

    // Marks a polynomial as exact. Only meaningful when the caller knows the
    // unlisted terms vanish.
    BasicSeries as_exact() const
    {
        BasicSeries r = *this;
        r.m_trunc = exact;
        return r;
    }

    BasicSeries homogeneous(int k) const
    {
        BasicSeries r(m_nvars, m_trunc);
        for (const auto &[m, c] : m_terms) {
            if (m.degree() == k) {
                r.m_terms.emplace_hint(r.m_terms.end(), m, c);
            }
        }
        return r;
    }

    BasicSeries operator-() const
    {
        BasicSeries r = *this;
        for (auto &kv : r.m_terms) {
            kv.second = -kv.second;
        }
        return r;
    }

    BasicSeries &operator+=(const BasicSeries &o)
    {
        check_same_vars(o);
        m_trunc = std::min(m_trunc, o.m_trunc);
        drop_above_trunc();
        for (const auto &[m, c] : o.m_terms) {
            if (m.degree() > m_trunc) {
                break;
            }
            add_term(m, c);
        }
        return *this;
    }

    BasicSeries &operator-=(const BasicSeries &o)
    {
        check_same_vars(o);
        m_trunc = std::min(m_trunc, o.m_trunc);
        drop_above_trunc();
        for (const auto &[m, c] : o.m_terms) {
            if (m.degree() > m_trunc) {
                break;
            }
            add_term(m, -c);
        }
        return *this;
    }

    BasicSeries &operator*=(const C &c)
    {
        if (detail::coeff_is_zero(c)) {
            m_terms.clear();
            return *this;
        }
        for (auto &kv : m_terms) {
            kv.second *= c;
        }
        return *this;
    }

    friend BasicSeries operator+(BasicSeries a, const BasicSeries &b)
    {
        return a += b;
    }
    friend BasicSeries operator-(BasicSeries a, const BasicSeries &b)
    {
        return a -= b;
    }
    friend BasicSeries operator*(BasicSeries a, const C &c)
    {
        return a *= c;
    }
    friend BasicSeries operator*(const C &c, BasicSeries a)
    {
        return a *= c;
    }

    friend BasicSeries operator*(const BasicSeries &a, const BasicSeries &b)
    {
        a.check_same_vars(b);
        const int t = std::min(a.m_trunc, b.m_trunc);
        BasicSeries r(a.m_nvars, t);
        if (a.m_terms.empty() || b.m_terms.empty()) {
            return r;
        }
        if (a.is_constant()) {
            return b.truncated(t) * a.m_terms.begin()->second;
        }
        if (b.is_constant()) {
            return a.truncated(t) * b.m_terms.begin()->second;
        }
        if constexpr (std::is_same_v<C, Rat>) {
            return mul_integral(a, b, t);
        }
        std::unordered_map<std::uint64_t, C> acc;
        acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 16));
        for (const auto &[ma, ca] : a.m_terms) {
            if (ma.degree() > t) {
                break;
            }
            for (const auto &[mb, cb] : b.m_terms) {
                if (t != exact && ma.degree() + mb.degree() > t) {
                    break;
                }
                acc[(ma * mb).bits()] += ca * cb;
            }
        }
        r.assign_from(acc);
        return r;
    }

    BasicSeries &operator*=(const BasicSeries &o)
    {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const BasicSeries &a, const BasicSeries &b)
    {
        return a.m_nvars == b.m_nvars && a.m_trunc == b.m_trunc && a.m_terms == b.m_terms;
    }

    // Equality of the retained terms up to total degree t.
    friend bool equal_to_order(const BasicSeries &a, const BasicSeries &b, int t)
    {
        return (a - b).truncated(t).is_zero();
    }

    void check_same_vars(const BasicSeries &o) const
    {
        if (m_nvars != o.m_nvars) {
            raise(errc::var_mismatch,
                  "series in " + std::to_string(m_nvars) + " and " + std::to_string(o.m_nvars) + " variables");
        }
    }

    // Internal helper for bulk construction from an accumulator keyed by
    // packed exponents.
    template <typename Map>
    void assign_from(const Map &acc)
    {
        std::vector<std::pair<Monomial, C>> items;
        items.reserve(acc.size());
        for (const auto &[bits, c] : acc) {
            if (!detail::coeff_is_zero(c)) {
                Monomial m = Monomial::from_bits(bits);
                if (m.degree() <= m_trunc) {
                    items.emplace_back(m, c);
                }
            }
        }
        std::sort(items.begin(), items.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        m_terms.clear();
        for (auto &it : items) {
            m_terms.emplace_hint(m_terms.end(), it.first, std::move(it.second));
        }
    }

    term_map &mutable_terms()
    {
        return m_terms;
    }

private:
    // Terms of degree <= t as integers over one common denominator.
    static std::vector<std::pair<Monomial, mpz_class>> integral_terms(const BasicSeries &a, int t, mpz_class &den)
    {
        den = 1;
        for (const auto &[m, c] : a.m_terms) {
            if (m.degree() > t) {
                break;
            }
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        }
        std::vector<std::pair<Monomial, mpz_class>> out;
        for (const auto &[m, c] : a.m_terms) {
            if (m.degree() > t) {
                break;
            }
            out.emplace_back(m, c.get_num() * (den / c.get_den()));
        }
        return out;
    }

    // Rational product with integer accumulation; one canonicalization per
    // output term.
    static BasicSeries mul_integral(const BasicSeries &a, const BasicSeries &b, int t)
    {
        mpz_class da, db;
        const auto ia = integral_terms(a, t, da);
        const auto ib = integral_terms(b, t, db);
        std::unordered_map<std::uint64_t, mpz_class> acc;
        acc.reserve(std::min<std::size_t>(ia.size() * ib.size(), 1u << 16));
        for (const auto &[ma, ca] : ia) {
            for (const auto &[mb, cb] : ib) {
                if (t != exact && ma.degree() + mb.degree() > t) {
                    break;
                }
                mpz_addmul(acc[(ma * mb).bits()].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            }
        }
        const mpz_class den = da * db;
        std::unordered_map<std::uint64_t, C> q;
        q.reserve(acc.size());
        for (auto &[bits, num] : acc) {
            if (sgn(num) != 0) {
                q.emplace(bits, make_rat(num, den));
            }
        }
        BasicSeries r(a.m_nvars, t);
        r.assign_from(q);
        return r;
    }

    void check_vars(const Monomial &m) const
    {
        if (m_nvars < Monomial::max_vars && (m.bits() >> (8 * m_nvars)) != 0) {
            raise(errc::var_out_of_range, "monomial uses a variable beyond num_vars");
        }
    }

    void drop_above_trunc()
    {
        if (m_trunc == exact) {
            return;
        }
        while (!m_terms.empty() && m_terms.rbegin()->first.degree() > m_trunc) {
            m_terms.erase(std::prev(m_terms.end()));
        }
    }

    int m_nvars = 0;
    int m_trunc = exact;
    term_map m_terms;
};

using Series = BasicSeries<Rat>;
using CSeries = BasicSeries<GaussRat>;

template <typename C>
BasicSeries<C> zero_like(const BasicSeries<C> &s)
{
    return BasicSeries<C>(s.num_vars(), s.trunc_order());
}

template <typename C>
BasicSeries<C> one_like(const BasicSeries<C> &s)
{
    return BasicSeries<C>::constant(s.num_vars(), C(1), s.trunc_order());
}

// c * m * s, raising the truncation order by deg(m).
template <typename C>
BasicSeries<C> mul_monomial(const BasicSeries<C> &s, const Monomial &m, const C &c = C(1))
{
    BasicSeries<C> r(s.num_vars(), detail::shift_order(s.trunc_order(), m.degree()));
    if (is_zero(c)) {
        return r;
    }
    auto &terms = r.mutable_terms();
    for (const auto &[mm, cc] : s.terms()) {
        terms.emplace_hint(terms.end(), mm * m, cc * c);
    }
    return r;
}

// Exact division by the monomial c * m; every term of `s` must be divisible.
template <typename C>
BasicSeries<C> series_divide_monomial(const BasicSeries<C> &s, const Monomial &m, const C &c = C(1))
{
    if (is_zero(c)) {
        raise(errc::div_by_non_unit, "division by a zero monomial");
    }
    BasicSeries<C> r(s.num_vars(), detail::shift_order(s.trunc_order(), -m.degree()));
    auto &terms = r.mutable_terms();
    for (const auto &[mm, cc] : s.terms()) {
        if (!m.divides(mm)) {
            std::ostringstream os;
            os << "term with exponents [";
            auto e = mm.exponents(s.num_vars());
            for (std::size_t i = 0; i < e.size(); ++i) {
                os << (i ? "," : "") << e[i];
            }
            os << "] is not divisible by the monomial";
            raise(errc::not_divisible, os.str());
        }
        Monomial q = mm / m;
        if (q.degree() <= r.trunc_order()) {
            terms.emplace_hint(terms.end(), q, cc / c);
        }
    }
    return r;
}

namespace detail
{

template <typename C>
std::vector<std::vector<std::pair<Monomial, C>>> homogeneous_parts(const BasicSeries<C> &s, int upto)
{
    std::vector<std::vector<std::pair<Monomial, C>>> parts(static_cast<std::size_t>(upto + 1));
    for (const auto &[m, c] : s.terms()) {
        if (m.degree() > upto) {
            break;
        }
        parts[static_cast<std::size_t>(m.degree())].emplace_back(m, c);
    }
    return parts;
}

template <typename C>
void accumulate_product(std::unordered_map<std::uint64_t, C> &acc, const std::vector<std::pair<Monomial, C>> &a,
                        const std::vector<std::pair<Monomial, C>> &b)
{
    for (const auto &[ma, ca] : a) {
        for (const auto &[mb, cb] : b) {
            acc[(ma * mb).bits()] += ca * cb;
        }
    }
}

} // namespace detail

// Multiplicative inverse of a unit series, computed degree by degree.
template <typename C>
BasicSeries<C> series_inverse(const BasicSeries<C> &b)
{
    const C b0 = b.constant_term();
    if (is_zero(b0)) {
        raise(errc::div_by_non_unit, "constant term is zero");
    }
    const int t = b.trunc_order();
    if (t == BasicSeries<C>::exact) {
        if (!b.is_constant()) {
            raise(errc::invalid_argument, "inverse of a nonconstant polynomial needs a truncation order");
        }
        return BasicSeries<C>::constant(b.num_vars(), C(1) / b0);
    }
    BasicSeries<C> r(b.num_vars(), t);
    if (t < 0) {
        return r;
    }
    auto bparts = detail::homogeneous_parts(b, t);
    std::vector<std::vector<std::pair<Monomial, C>>> rparts(static_cast<std::size_t>(t + 1));
    const C inv0 = C(1) / b0;
    rparts[0].emplace_back(Monomial{}, inv0);
    for (int k = 1; k <= t; ++k) {
        std::unordered_map<std::uint64_t, C> acc;
        for (int j = 1; j <= k; ++j) {
            detail::accumulate_product(acc, bparts[static_cast<std::size_t>(j)], rparts[static_cast<std::size_t>(k - j)]);
        }
        auto &out = rparts[static_cast<std::size_t>(k)];
        for (const auto &[bits, c] : acc) {
            if (!is_zero(c)) {
                out.emplace_back(Monomial::from_bits(bits), -(c * inv0));
            }
        }
    }
    std::unordered_map<std::uint64_t, C> all;
    for (const auto &part : rparts) {
        for (const auto &[m, c] : part) {
            all[m.bits()] += c;
        }
    }
    r.assign_from(all);
    return r;
}

template <typename C>
BasicSeries<C> operator/(const BasicSeries<C> &a, const BasicSeries<C> &b)
{
    a.check_same_vars(b);
    if (is_zero(b.constant_term())) {
        raise(errc::div_by_non_unit, "divisor has zero constant term");
    }
    const int t = std::min(a.trunc_order(), b.trunc_order());
    if (b.is_constant()) {
        return a.truncated(t) * (C(1) / b.constant_term());
    }
    return a.truncated(t) * series_inverse(b.truncated(t));
}

enum class series_op { add, sub, mul, div };

template <typename C>
BasicSeries<C> series_arith(series_op op, const BasicSeries<C> &a, const BasicSeries<C> &b)
{
    switch (op) {
        case series_op::add: return a + b;
        case series_op::sub: return a - b;
        case series_op::mul: return a * b;
        case series_op::div: return a / b;
    }
    return a;
}

// Square root with positive constant term; the constant must be the square
// of a rational.
inline Series series_sqrt(const Series &a)
{
    const Rat a0 = a.constant_term();
    if (sgn(a0) < 0) {
        raise(errc::negative_constant, "constant term " + to_string(a0) + " is negative");
    }
    auto s0 = exact_sqrt(a0);
    if (sgn(a0) == 0 || !s0) {
        raise(errc::non_square_constant, "constant term " + to_string(a0) + " is not a positive rational square");
    }
    const int t = a.trunc_order();
    if (t == Series::exact) {
        if (!a.is_constant()) {
            raise(errc::invalid_argument, "sqrt of a nonconstant polynomial needs a truncation order");
        }
        return Series::constant(a.num_vars(), *s0);
    }
    Series r(a.num_vars(), t);
    if (t < 0) {
        return r;
    }
    auto aparts = detail::homogeneous_parts(a, t);
    std::vector<std::vector<std::pair<Monomial, Rat>>> sparts(static_cast<std::size_t>(t + 1));
    sparts[0].emplace_back(Monomial{}, *s0);
    const Rat inv2s0 = Rat(1) / (2 * *s0);
    for (int k = 1; k <= t; ++k) {
        std::unordered_map<std::uint64_t, Rat> acc;
        for (const auto &[m, c] : aparts[static_cast<std::size_t>(k)]) {
            acc[m.bits()] += c;
        }
        std::unordered_map<std::uint64_t, Rat> sq;
        for (int j = 1; j < k; ++j) {
            detail::accumulate_product(sq, sparts[static_cast<std::size_t>(j)], sparts[static_cast<std::size_t>(k - j)]);
        }
        for (const auto &[bits, c] : sq) {
            acc[bits] -= c;
        }
        auto &out = sparts[static_cast<std::size_t>(k)];
        for (const auto &[bits, c] : acc) {
            if (!is_zero(c)) {
                out.emplace_back(Monomial::from_bits(bits), c * inv2s0);
            }
        }
    }
    std::unordered_map<std::uint64_t, Rat> all;
    for (const auto &part : sparts) {
        for (const auto &[m, c] : part) {
            all[m.bits()] += c;
        }
    }
    r.assign_from(all);
    return r;
}

// Replaces variable `var` by the monomial c * m.
template <typename C>
BasicSeries<C> series_substitute(const BasicSeries<C> &a, int var, const Monomial &m, const C &c = C(1))
{
    if (var < 0 || var >= a.num_vars()) {
        raise(errc::var_out_of_range, "variable index " + std::to_string(var));
    }
    if (m.degree() == 0 && !a.is_exact()) {
        raise(errc::invalid_argument, "substituting a constant into a truncated series loses all precision");
    }
    BasicSeries<C> r(a.num_vars(), a.trunc_order());
    std::unordered_map<std::uint64_t, C> acc;
    for (const auto &[mm, cc] : a.terms()) {
        const int e = mm[var];
        Monomial rest = mm.with(var, 0);
        if (e == 0) {
            acc[rest.bits()] += cc;
            continue;
        }
        if (r.trunc_order() != BasicSeries<C>::exact && rest.degree() + e * m.degree() > r.trunc_order()) {
            continue;
        }
        C ce = cc;
        for (int i = 0; i < e; ++i) {
            ce *= c;
        }
        acc[(rest * m.pow(e)).bits()] += ce;
    }
    r.assign_from(acc);
    return r;
}

template <typename C>
BasicSeries<C> derivative(const BasicSeries<C> &a, int var)
{
    if (var < 0 || var >= a.num_vars()) {
        raise(errc::var_out_of_range, "variable index " + std::to_string(var));
    }
    BasicSeries<C> r(a.num_vars(), detail::shift_order(a.trunc_order(), -1));
    std::unordered_map<std::uint64_t, C> acc;
    for (const auto &[m, c] : a.terms()) {
        const int e = m[var];
        if (e > 0) {
            acc[m.with(var, e - 1).bits()] += c * C(e);
        }
    }
    r.assign_from(acc);
    return r;
}

// Terms not involving `var` (the restriction var = 0), in the same ring.
template <typename C>
BasicSeries<C> at_zero(const BasicSeries<C> &a, int var)
{
    BasicSeries<C> r(a.num_vars(), a.trunc_order());
    auto &terms = r.mutable_terms();
    for (const auto &[m, c] : a.terms()) {
        if (m[var] == 0) {
            terms.emplace_hint(terms.end(), m, c);
        }
    }
    return r;
}

// Restriction var = 0 followed by removal of the variable.
template <typename C>
BasicSeries<C> drop_var(const BasicSeries<C> &a, int var)
{
    if (var < 0 || var >= a.num_vars()) {
        raise(errc::var_out_of_range, "variable index " + std::to_string(var));
    }
    BasicSeries<C> r(a.num_vars() - 1, a.trunc_order());
    std::unordered_map<std::uint64_t, C> acc;
    for (const auto &[m, c] : a.terms()) {
        if (m[var] == 0) {
            acc[m.erase(var).bits()] += c;
        }
    }
    r.assign_from(acc);
    return r;
}

// Embeds a series into a ring with one more variable at position `var`.
template <typename C>
BasicSeries<C> insert_var(const BasicSeries<C> &a, int var)
{
    BasicSeries<C> r(a.num_vars() + 1, a.trunc_order());
    auto &terms = r.mutable_terms();
    std::vector<std::pair<Monomial, C>> items;
    for (const auto &[m, c] : a.terms()) {
        items.emplace_back(m.insert(var), c);
    }
    std::sort(items.begin(), items.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto &it : items) {
        terms.emplace_hint(terms.end(), it.first, it.second);
    }
    return r;
}

// Smallest exponent of `var` over all terms, or -1 for the zero series.
template <typename C>
int min_exponent(const BasicSeries<C> &a, int var)
{
    int best = -1;
    for (const auto &[m, c] : a.terms()) {
        if (best < 0 || m[var] < best) {
            best = m[var];
        }
    }
    return best;
}

// Terms whose `var` exponent equals k, with that exponent removed (kept in
// the same ring).
template <typename C>
BasicSeries<C> coefficient_of(const BasicSeries<C> &a, int var, int k)
{
    BasicSeries<C> r(a.num_vars(), detail::shift_order(a.trunc_order(), -k));
    std::unordered_map<std::uint64_t, C> acc;
    for (const auto &[m, c] : a.terms()) {
        if (m[var] == k) {
            acc[m.with(var, 0).bits()] += c;
        }
    }
    r.assign_from(acc);
    return r;
}

inline double evaluate(const Series &a, std::span<const double> point)
{
    double sum = 0.0;
    for (const auto &[m, c] : a.terms()) {
        double t = to_double(c);
        for (int i = 0; i < a.num_vars(); ++i) {
            for (int k = 0; k < m[i]; ++k) {
                t *= point[static_cast<std::size_t>(i)];
            }
        }
        sum += t;
    }
    return sum;
}

inline std::complex<double> evaluate(const CSeries &a, std::span<const double> point)
{
    std::complex<double> sum = 0.0;
    for (const auto &[m, c] : a.terms()) {
        std::complex<double> t(to_double(c.re), to_double(c.im));
        for (int i = 0; i < a.num_vars(); ++i) {
            for (int k = 0; k < m[i]; ++k) {
                t *= point[static_cast<std::size_t>(i)];
            }
        }
        sum += t;
    }
    return sum;
}

// Value of the retained terms at a rational point.
template <typename C>
C evaluate_exact(const BasicSeries<C> &a, std::span<const Rat> point)
{
    C sum(0);
    for (const auto &[m, c] : a.terms()) {
        C t = c;
        for (int i = 0; i < a.num_vars(); ++i) {
            for (int k = 0; k < m[i]; ++k) {
                t *= C(point[static_cast<std::size_t>(i)]);
            }
        }
        sum += t;
    }
    return sum;
}

template <typename C>
BasicSeries<C> to_complex(const BasicSeries<Rat> &a)
{
    BasicSeries<C> r(a.num_vars(), a.trunc_order());
    auto &terms = r.mutable_terms();
    for (const auto &[m, c] : a.terms()) {
        terms.emplace_hint(terms.end(), m, C(c));
    }
    return r;
}

inline Series real_part(const CSeries &a)
{
    Series r(a.num_vars(), a.trunc_order());
    auto &terms = r.mutable_terms();
    for (const auto &[m, c] : a.terms()) {
        if (!is_zero(c.re)) {
            terms.emplace_hint(terms.end(), m, c.re);
        }
    }
    return r;
}

inline Series imag_part(const CSeries &a)
{
    Series r(a.num_vars(), a.trunc_order());
    auto &terms = r.mutable_terms();
    for (const auto &[m, c] : a.terms()) {
        if (!is_zero(c.im)) {
            terms.emplace_hint(terms.end(), m, c.im);
        }
    }
    return r;
}

inline Series conj(const Series &a)
{
    return a;
}

inline CSeries conj(const CSeries &a)
{
    CSeries r(a.num_vars(), a.trunc_order());
    auto &terms = r.mutable_terms();
    for (const auto &[m, c] : a.terms()) {
        terms.emplace_hint(terms.end(), m, conj(c));
    }
    return r;
}

// Exact quotient a / b of polynomials; b must divide a.
template <typename C>
BasicSeries<C> exact_divide(const BasicSeries<C> &a, const BasicSeries<C> &b)
{
    a.check_same_vars(b);
    if (b.is_zero()) {
        raise(errc::div_by_non_unit, "division by the zero polynomial");
    }
    if (!a.is_exact() || !b.is_exact()) {
        raise(errc::invalid_argument, "exact polynomial division needs exact operands");
    }
    BasicSeries<C> q(a.num_vars());
    BasicSeries<C> r = a;
    const auto &[lm, lc] = *b.terms().rbegin();
    while (!r.is_zero()) {
        const auto &[rm, rc] = *r.terms().rbegin();
        if (!lm.divides(rm)) {
            raise(errc::not_divisible, "polynomial is not divisible");
        }
        BasicSeries<C> t = BasicSeries<C>::monomial(a.num_vars(), rm / lm, rc / lc);
        q += t;
        r -= t * b;
    }
    return q;
}

template <typename C>
bool divides_exactly(const BasicSeries<C> &b, const BasicSeries<C> &a)
{
    try {
        (void)exact_divide(a, b);
        return true;
    } catch (const error &e) {
        if (e.code() == errc::not_divisible) {
            return false;
        }
        throw;
    }
}

// Writes an exact polynomial as k h^2 with h monic in the graded order, if
// possible.
inline std::optional<std::pair<Rat, Series>> polynomial_sqrt(const Series &a)
{
    if (!a.is_exact()) {
        raise(errc::invalid_argument, "polynomial_sqrt needs an exact operand");
    }
    if (a.is_zero()) {
        return std::nullopt;
    }
    const int n = a.num_vars();
    const auto &[tm, tc] = *a.terms().rbegin();
    std::vector<int> half;
    for (int e : tm.exponents(n)) {
        if (e % 2 != 0) {
            return std::nullopt;
        }
        half.push_back(e / 2);
    }
    const Monomial lead{std::span<const int>(half)};
    const Rat k = tc;
    const Series target = a * (Rat(1) / k);
    Series h = Series::monomial(n, lead, Rat(1));
    while (true) {
        const Series r = target - h * h;
        if (r.is_zero()) {
            return std::make_pair(k, h);
        }
        const auto &[rm, rc] = *r.terms().rbegin();
        if (!lead.divides(rm) || !((rm / lead) < lead)) {
            return std::nullopt;
        }
        h += Series::monomial(n, rm / lead, rc / Rat(2));
    }
}

inline std::vector<std::string> default_var_names(int n)
{
    if (n == 1) {
        return {"x"};
    }
    if (n == 2) {
        return {"x", "y"};
    }
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

template <typename C>
std::string to_string(const BasicSeries<C> &a, const std::vector<std::string> &names = {})
{
    const auto vars = names.empty() ? default_var_names(a.num_vars()) : names;
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : a.terms()) {
        std::string cs = to_string(c);
        bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+i", 1) == std::string::npos;
        if (!first) {
            os << (neg ? " - " : " + ");
        } else if (neg) {
            os << "-";
        }
        if (neg) {
            cs = cs.substr(1);
        }
        bool unit = cs == "1";
        if (!unit || m.is_one()) {
            os << (cs.find_first_of("+-", 1) != std::string::npos ? "(" + cs + ")" : cs);
        }
        bool need_star = !unit;
        for (int i = 0; i < a.num_vars(); ++i) {
            if (m[i] > 0) {
                os << (need_star ? "*" : "") << vars[static_cast<std::size_t>(i)];
                if (m[i] > 1) {
                    os << "^" << m[i];
                }
                need_star = true;
            }
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    if (!a.is_exact()) {
        os << " + O(" << a.trunc_order() + 1 << ")";
    }
    return os.str();
}

} // namespace hyperroots

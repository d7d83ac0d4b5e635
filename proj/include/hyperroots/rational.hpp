#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace hyperroots
{

// Exact rationals. mpq_class keeps values canonical (gcd 1, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const mpz_class &num, const mpz_class &den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat &r)
{
    return sgn(r) == 0;
}

inline double to_double(const Rat &r)
{
    return r.get_d();
}

inline std::string to_string(const Rat &r)
{
    return r.get_str();
}

// Square root of a nonnegative rational if it is a perfect square.
inline std::optional<Rat> exact_sqrt(const Rat &r)
{
    if (sgn(r) < 0) {
        return std::nullopt;
    }
    const mpz_class &n = r.get_num();
    const mpz_class &d = r.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return make_rat(sn, sd);
}

inline Rat conj(const Rat &r)
{
    return r;
}

inline Rat real_part(const Rat &r)
{
    return r;
}

// Gaussian rationals a + b i, used for the complex eigenvectors of
// antisymmetric families.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(const Rat &r) : re(r), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(const Rat &r, const Rat &i) : re(r), im(i) {}

    static GaussRat i_unit()
    {
        return GaussRat(Rat(0), Rat(1));
    }

    GaussRat &operator+=(const GaussRat &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat &operator-=(const GaussRat &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat &operator*=(const GaussRat &o)
    {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRat &operator/=(const GaussRat &o)
    {
        Rat n = o.re * o.re + o.im * o.im;
        Rat r = (re * o.re + im * o.im) / n;
        Rat i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat &b)
    {
        return a += b;
    }
    friend GaussRat operator-(GaussRat a, const GaussRat &b)
    {
        return a -= b;
    }
    friend GaussRat operator*(GaussRat a, const GaussRat &b)
    {
        return a *= b;
    }
    friend GaussRat operator/(GaussRat a, const GaussRat &b)
    {
        return a /= b;
    }
    friend GaussRat operator-(const GaussRat &a)
    {
        return GaussRat(-a.re, -a.im);
    }
    friend bool operator==(const GaussRat &a, const GaussRat &b)
    {
        return a.re == b.re && a.im == b.im;
    }
    friend std::ostream &operator<<(std::ostream &os, const GaussRat &g)
    {
        return os << "(" << g.re << (sgn(g.im) < 0 ? "" : "+") << g.im << "i)";
    }
};

inline bool is_zero(const GaussRat &g)
{
    return sgn(g.re) == 0 && sgn(g.im) == 0;
}

inline GaussRat conj(const GaussRat &g)
{
    return GaussRat(g.re, -g.im);
}

inline Rat real_part(const GaussRat &g)
{
    return g.re;
}

inline std::string to_string(const GaussRat &g)
{
    if (sgn(g.im) == 0) {
        return g.re.get_str();
    }
    return g.re.get_str() + (sgn(g.im) < 0 ? "" : "+") + g.im.get_str() + "i";
}

} // namespace hyperroots

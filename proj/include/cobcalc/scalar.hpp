#pragma once

// Exact rational scalars (GMP) and the handful of number-theoretic helpers
// the engine needs: p-adic valuation, residues mod p, binomials.

#include <gmpxx.h>

#include <climits>
#include <stdexcept>
#include <string>

namespace cobcalc {

using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1)
{
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline Scalar parse_scalar(const std::string& num, const std::string& den = "1")
{
    Scalar q{Integer(num), Integer(den)};
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator");
    }
    q.canonicalize();
    return q;
}

inline bool is_integer(const Scalar& q) { return q.get_den() == 1; }

// Exponent of p in an integer; INT_MAX for zero.
inline int p_valuation(const Integer& n, unsigned long p)
{
    if (n == 0) {
        return INT_MAX;
    }
    Integer m = abs(n);
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline int p_valuation(const Scalar& q, unsigned long p)
{
    if (q == 0) {
        return INT_MAX;
    }
    return p_valuation(q.get_num(), p) - p_valuation(q.get_den(), p);
}

inline bool is_p_integral(const Scalar& q, unsigned long p)
{
    return mpz_divisible_ui_p(q.get_den().get_mpz_t(), p) == 0;
}

// Residue in [0, p) of a p-integral rational.
inline long residue_mod(const Scalar& q, long p)
{
    if (!is_p_integral(q, static_cast<unsigned long>(p))) {
        throw std::domain_error("residue_mod: p divides the denominator");
    }
    Integer mod(p);
    Integer num = q.get_num() % mod;
    Integer den = q.get_den() % mod;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    Integer r = (num * inv) % mod;
    if (r < 0) {
        r += mod;
    }
    return r.get_si();
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

// True when every prime factor of the denominator also divides `allowed`.
inline bool denominator_divides_power_of(const Scalar& q, const Integer& allowed)
{
    Integer den = q.get_den();
    Integer g;
    while (den != 1) {
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), allowed.get_mpz_t());
        if (g == 1) {
            return false;
        }
        while (mpz_divisible_p(den.get_mpz_t(), g.get_mpz_t()) != 0) {
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
    }
    return true;
}

} // namespace cobcalc

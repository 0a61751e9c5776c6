#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pcheb {

using Int = mpz_class;
using Rat = mpq_class;

// "num/den" always, even for integers
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

Int ipow(const Int& b, unsigned long e);
long lpow(long b, int e);
bool is_prime(long n);
std::vector<long> prime_factors(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

// valuation of a nonzero integer; -1 for zero
int int_valuation(const Int& a, long p);

// Dense polynomials over Q, low degree first, trimmed (zero poly is empty)
using QPoly = std::vector<Rat>;

namespace qpoly {
void trim(QPoly& a);
int deg(const QPoly& a);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rat& c);
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly mod(const QPoly& a, const QPoly& b);
// returns g = gcd (monic); s,t with s a + t b = g
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
Rat eval(const QPoly& a, const Rat& x);
}  // namespace qpoly

}  // namespace pcheb

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace pcheb {

// F_Q with Q = p^f, elements encoded as 0..Q-1 read as base-p digits
// (digit i = coefficient of x^i modulo the defining polynomial).
class FiniteField {
public:
    // modulus: monic, low degree first, size f+1
    FiniteField(long p, const std::vector<long>& modulus);

    long p() const { return p_; }
    int degree() const { return f_; }
    long size() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const;
    int mul(int a, int b) const {
        if (a == 0 || b == 0) return 0;
        int s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= static_cast<int>(q_ - 1);
        return exp_[s];
    }
    int inv(int a) const;
    int div(int a, int b) const { return mul(a, inv(b)); }
    int pow(int a, long long e) const;
    int frob(int a) const { return pow(a, p_); }
    int from_prime(long c) const;  // image of an integer
    int generator() const { return exp_[1]; }
    int exp_of(long k) const { return exp_[static_cast<size_t>(((k % (q_ - 1)) + (q_ - 1)) % (q_ - 1))]; }
    int log_of(int a) const { return log_[a]; }
    std::vector<long> digits(int a) const;
    int from_digits(const std::vector<long>& d) const;

private:
    long p_;
    int f_;
    long q_;
    std::vector<long> modulus_;
    std::vector<int> log_, exp_;
    std::vector<int> add_table_;  // only for small Q
};

// lexicographically smallest monic irreducible of degree f over F_p,
// coefficient of x^{f-1} most significant
std::vector<long> smallest_irreducible(long p, int f);

// Polynomials over F_Q, low degree first, trimmed
using FqPoly = std::vector<int>;

namespace fq {
void trim(FqPoly& a);
int deg(const FqPoly& a);
FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FiniteField& F, const FqPoly& a, int c);
void divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly mod(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly div(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FiniteField& F, const FqPoly& a);
FqPoly gcd(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly derivative(const FiniteField& F, const FqPoly& a);
FqPoly powmod(const FiniteField& F, const FqPoly& a, long long e, const FqPoly& m);
int eval(const FiniteField& F, const FqPoly& a, int x);
bool is_squarefree(const FiniteField& F, const FqPoly& a);
// (squarefree monic factor, multiplicity) pairs, product = monic(a)
std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FiniteField& F, const FqPoly& a);
// degrees of irreducible factors of a squarefree polynomial
std::vector<int> ddf_degrees(const FiniteField& F, const FqPoly& a);
// irreducible factors of a squarefree polynomial with their degrees grouped:
// returns (degree, product of all irreducible factors of that degree)
std::vector<std::pair<int, FqPoly>> ddf(const FiniteField& F, const FqPoly& a);
// (degree, multiplicity) of every irreducible factor, sorted
std::vector<std::pair<int, int>> factor_pattern(const FiniteField& F, const FqPoly& a);
std::vector<int> roots(const FiniteField& F, const FqPoly& a);
bool is_irreducible(const FiniteField& F, const FqPoly& a);
}  // namespace fq

}  // namespace pcheb

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcheb/cyclotomic.hpp"

namespace pcheb {

using KPoly = std::vector<Cyclo>;  // polynomial in x over Q(zeta), low degree first

namespace kpoly {
void trim(KPoly& a);
int deg(const KPoly& a);
KPoly add(const KPoly& a, const KPoly& b);
KPoly sub(const KPoly& a, const KPoly& b);
KPoly mul(const KPoly& a, const KPoly& b);
KPoly scale(const KPoly& a, const Cyclo& c);
KPoly shift(const KPoly& a, int k);  // times x^k
KPoly from_rational(const QPoly& a);
KPoly gcd(KPoly a, KPoly b);  // monic
Cyclo eval(const KPoly& a, const Cyclo& x);
}  // namespace kpoly

// num/den, den monic and coprime to num
struct ClassFunction {
    KPoly num, den;

    static ClassFunction make(KPoly num, KPoly den);
    bool is_zero() const { return num.empty(); }
    bool operator==(const ClassFunction& o) const;
};

// m -> sum over terms of base^m * R_{base, m mod M}(x), x = q^m.
// terms()[0] has base 1; other bases are pairwise inequivalent modulo
// roots of unity and powers of q.
class PalindromicForm {
public:
    struct Term {
        Cyclo base;
        std::vector<ClassFunction> classes;  // one per residue class mod M
    };

    explicit PalindromicForm(long q);
    static PalindromicForm constant(long q, const Cyclo& c);
    static PalindromicForm rational(long q, const KPoly& num, const KPoly& den);
    static PalindromicForm per_class(long q, std::vector<ClassFunction> classes);
    static PalindromicForm exponential(long q, const Cyclo& base, const Cyclo& coeff);

    long q() const { return q_; }
    int modulus() const { return M_; }
    int conductor() const;
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const;

    Cyclo evaluate(long m) const;
    Rat evaluate_rational(long m) const;
    // R_{-r}(1/x) = x^-k R_r(x) per class, with non-rational bases paired by conjugation
    bool is_palindromic(int k) const;

    PalindromicForm operator-() const;
    friend PalindromicForm operator+(const PalindromicForm& a, const PalindromicForm& b);
    friend PalindromicForm operator-(const PalindromicForm& a, const PalindromicForm& b);
    friend PalindromicForm operator*(const PalindromicForm& a, const PalindromicForm& b);
    PalindromicForm scaled(const Cyclo& c) const;
    bool operator==(const PalindromicForm& o) const;

    std::string str() const;

private:
    long q_;
    int M_ = 1;
    std::vector<Term> terms_;

    void lift_modulus(int M2);
    void add_term(const Cyclo& base, std::vector<ClassFunction> classes, int M);
    void normalize();
};

// delta_k(m; q^d) = (q^{dm} - 1)/(q^{dm(k+1)} - 1) and eta_k = delta_k - 1
std::pair<PalindromicForm, PalindromicForm> eta_delta(long q, int k, int d = 1);
PalindromicForm divisibility_indicator(long q, int d);  // I(d | m)
PalindromicForm gcd_indicator(long q, int k, int l);    // I(gcd(m, k) = l)

struct TraceTerm {
    Cyclo coeff;
    Cyclo base;
    int weight = 0;  // base * conj(base) = q^weight
};

struct TraceData {
    long q = 0;
    int dim = 0;                // paired bases multiply to q^dim
    std::vector<TraceTerm> terms;
    std::vector<int> pairing;   // involution on term indices
};

void validate_trace_data(const TraceData& d);
PalindromicForm point_count_form(const TraceData& d);
PalindromicForm projective_space(long q, int n);
PalindromicForm product_P1(long q, int n);
PalindromicForm spec_Fqk(long q, int k);
// sum_j c_j alpha_j^m (lambda_j + lambda_j^-1)
PalindromicForm symmetrized_trace_form(const TraceData& d, const std::vector<Cyclo>& lambda);

}  // namespace pcheb

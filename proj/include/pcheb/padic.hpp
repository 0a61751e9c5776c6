#pragma once

#include <climits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcheb/finite_field.hpp"
#include "pcheb/rational.hpp"

namespace pcheb {

constexpr int kExact = INT_MAX;

// Z_p[x]/(modulus), unramified of degree f over Z_p
struct BaseRing {
    long p = 2;
    int f = 1;
    std::vector<long> modulus;  // monic, low degree first, size f+1
    std::shared_ptr<const FiniteField> residue;

    long q() const { return lpow(p, f); }
    const FiniteField& field() const { return *residue; }
};

BaseRing make_base_ring(long p, int f);

// element of O = Z[x]/(modulus), coefficients of 1, x, ..., x^{f-1}
using OElem = std::vector<Int>;

namespace oring {
OElem zero(const BaseRing& R);
OElem from_int(const BaseRing& R, const Int& c);
bool is_zero(const OElem& a);
OElem add(const OElem& a, const OElem& b);
OElem sub(const OElem& a, const OElem& b);
OElem neg(const OElem& a);
OElem mul(const BaseRing& R, const OElem& a, const OElem& b);
OElem scale(const OElem& a, const Int& c);
OElem reduce(const OElem& a, const Int& modulus);  // coefficients into [0, modulus)
OElem pow(const BaseRing& R, const OElem& a, unsigned e);
// min over coefficients; -1 for zero
int valuation(const BaseRing& R, const OElem& a);
// divide every coefficient by p^k (must be exact)
OElem divide_p(const BaseRing& R, const OElem& a, int k);
int residue(const BaseRing& R, const OElem& a);
OElem lift(const BaseRing& R, int residue_elem);
// inverse of a unit mod p^K
OElem inverse_unit(const BaseRing& R, const OElem& a, int K);
}  // namespace oring

// representative known modulo p^precision (kExact for exact values)
struct PadicElem {
    OElem rep;
    int prec = kExact;
};

struct Valuation {
    int value = 0;
    bool at_least = false;  // true: only "value >= this" is known
    bool determined() const { return !at_least; }
    std::string str() const { return at_least ? ">=" + std::to_string(value) : std::to_string(value); }
};

PadicElem make_elem(const BaseRing& R, const OElem& rep, int prec);
PadicElem make_elem(const BaseRing& R, const Int& c, int prec = kExact);
Valuation valuation(const BaseRing& R, const PadicElem& x);
PadicElem padd(const BaseRing& R, const PadicElem& a, const PadicElem& b);
PadicElem psub(const BaseRing& R, const PadicElem& a, const PadicElem& b);
// precision of the product is the largest one that is provable
PadicElem pmul(const BaseRing& R, const PadicElem& a, const PadicElem& b);

struct PadicPoly {
    std::vector<PadicElem> coeffs;  // index i = coefficient of z^i
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    int precision() const;
};

PadicPoly make_poly(const BaseRing& R, const std::vector<Int>& coeffs, int prec = kExact);
PadicPoly make_poly(const BaseRing& R, const std::vector<long>& coeffs, int prec = kExact);
PadicPoly make_poly(const BaseRing& R, const std::vector<OElem>& coeffs, int prec = kExact);
std::vector<OElem> representatives(const PadicPoly& h);
PadicPoly reverse(const PadicPoly& h);
PadicPoly shift(const BaseRing& R, const PadicPoly& h, const OElem& a);  // h(z + a)

class PrecisionNeeded : public std::runtime_error {
public:
    PrecisionNeeded(int index, const std::string& what)
        : std::runtime_error(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

// exact, in O (an integer when f = 1)
OElem discriminant(const BaseRing& R, const PadicPoly& h);
OElem discriminant(const BaseRing& R, const std::vector<OElem>& h);

struct NewtonSegment {
    Rat slope;  // valuation of the roots on this segment, (v_left - v_right)/length
    int length = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<int, int>> vertices;  // every hull lattice point, left to right
    std::vector<NewtonSegment> segments;       // maximal segments
};

NewtonPolygon newton_polygon(const BaseRing& R, const PadicPoly& h);

// quadratic lifting of a coprime factorization of h mod p to precision K
std::vector<PadicPoly> hensel_split(const BaseRing& R, const PadicPoly& h,
                                    const std::vector<FqPoly>& bar_factors, int K);

FqPoly reduce_mod_p(const BaseRing& R, const PadicPoly& h);

}  // namespace pcheb

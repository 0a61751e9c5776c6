#pragma once

#include <string>
#include <vector>

#include "pcheb/rational.hpp"

namespace pcheb {

// C-th cyclotomic polynomial over Q (cached)
const QPoly& cyclotomic_poly(int C);
int euler_phi(int C);

// element of Q(zeta_C), power basis modulo the C-th cyclotomic polynomial
class Cyclo {
public:
    Cyclo() : Cyclo(1, Rat(0)) {}
    Cyclo(int C, const Rat& r);
    static Cyclo zeta(int C, long j);
    static Cyclo from_coeffs(int C, std::vector<Rat> coeffs);

    int conductor() const { return C_; }
    std::vector<Rat> coeffs() const;  // length phi(C)
    Cyclo embed(int C2) const;        // requires C | C2

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rat to_rational() const;

    Cyclo operator-() const;
    Cyclo inv() const;
    Cyclo conj() const;  // complex conjugation zeta -> zeta^-1
    Cyclo pow(long e) const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend bool operator==(const Cyclo& a, const Cyclo& b);

    std::string str() const;

private:
    int C_;
    QPoly c_;  // reduced and trimmed
    static Cyclo reduce(int C, QPoly p);
};

}  // namespace pcheb

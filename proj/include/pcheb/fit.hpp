#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcheb/rational.hpp"

namespace pcheb {

using IntPoly = std::vector<Int>;  // low degree first, trimmed

// num/den in lowest terms: coprime over Q, integer content 1, den leading coefficient > 0
struct RationalFunction {
    IntPoly num, den;

    static RationalFunction make(IntPoly num, IntPoly den);
    Rat operator()(const Rat& t) const;
    RationalFunction at_inverse() const;  // t -> 1/t
    std::string str(const std::string& var = "t") const;
    bool operator==(const RationalFunction&) const = default;
};

class FitError : public std::runtime_error {
public:
    // q = the point whose removal makes the rest consistent, or 0 if none does
    FitError(const std::string& what, long q) : std::runtime_error(what), q_(q) {}
    long q() const { return q_; }

private:
    long q_;
};

RationalFunction fit_rational(const std::vector<std::pair<long, Rat>>& points, int deg_bound);
bool check_palindromy(const RationalFunction& r);

std::string int_poly_str(const IntPoly& p, const std::string& var = "t");

}  // namespace pcheb

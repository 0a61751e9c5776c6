#pragma once

#include <map>
#include <string>
#include <vector>

#include "pcheb/forms.hpp"
#include "pcheb/pairs.hpp"

namespace pcheb {

struct SncdDivisor {
    int k = 1;   // splitting degree
    int e = 1;   // multiplicity
    Perm frob;   // Frobenius on the k geometric components, transitive
};

// stratum key: for each divisor, the sorted set of its geometric components
// being intersected (0-based)
using StratumKey = std::vector<std::vector<int>>;

struct SncdDatum {
    long q = 0;
    int dim = 0;
    std::vector<SncdDivisor> divisors;
    std::map<StratumKey, PalindromicForm> strata;  // |D_M(F_{q^m})|
    bool closed_world = false;                     // absent strata count as empty
};

struct TwistFixture {
    SncdDatum base;
    std::map<StratumKey, PalindromicForm> symmetrized;  // rho_{D_M, g}
};

void validate(const SncdDatum& d);
std::string stratum_name(const StratumKey& key);

// prod_i prod_{orbits of Frob^{l_i} on M_i} delta_{e_i}(m; q^{k_i/l_i}), l_i = gcd(k_i, m)
Rat local_integral(const std::vector<int>& e, const std::vector<std::vector<int>>& M, const std::vector<Perm>& frob,
                   long m, long q);

PalindromicForm eta_sncd(const SncdDatum& d);
// all k_i = 1: sum_J |D_J| prod_{j in J} eta_{e_j}
PalindromicForm eta_sncd_split(const SncdDatum& d);
PalindromicForm eta_twisted_sum(const TwistFixture& fx);

}  // namespace pcheb

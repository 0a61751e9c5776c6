#pragma once

#include <string>

#include <json.hpp>

#include "pcheb/enumerate.hpp"
#include "pcheb/fit.hpp"
#include "pcheb/forms.hpp"
#include "pcheb/pairs.hpp"
#include "pcheb/sncd.hpp"

namespace pcheb {

using json = nlohmann::ordered_json;

// rationals travel as "num/den" strings; plain JSON integers are accepted on input
json rat_json(const Rat& r);
Rat rat_of(const json& j);

// element of Q(zeta_C) as its power-basis coefficient array (or a bare rational)
json cyclo_json(const Cyclo& c, int C);
Cyclo cyclo_of(const json& j, int C);

json form_to_json(const PalindromicForm& f);
PalindromicForm form_from_json(const json& j, long q);

json density_to_json(const DensityResult& r);
DensityResult density_from_json(const json& j);

json rational_function_json(const RationalFunction& r);

json perm_json(const Perm& p);  // 1-based
Perm perm_of(const json& j);
json poset_to_json(const PairPoset& P);

SncdDatum sncd_from_json(const json& j, long q);
TwistFixture twist_from_json(const json& j, long q);  // needs a "symmetrized" list
bool has_twist(const json& j);

TraceData trace_from_json(const json& j, std::vector<Cyclo>* lambda = nullptr);

json read_json_file(const std::string& path);

}  // namespace pcheb

#include "pcheb/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pcheb {

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_of(const json& j) {
    if (j.is_number_integer()) return Rat(Int(j.dump()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected an exact rational, got " + j.dump());
}

json cyclo_json(const Cyclo& c, int C) {
    json a = json::array();
    for (auto& x : c.embed(C).coeffs()) a.push_back(rat_json(x));
    return a;
}

Cyclo cyclo_of(const json& j, int C) {
    if (!j.is_array()) return Cyclo(C, rat_of(j));
    std::vector<Rat> v;
    for (auto& x : j) v.push_back(rat_of(x));
    if (static_cast<int>(v.size()) > euler_phi(C))
        throw std::invalid_argument("coefficient vector longer than the degree of Q(zeta_" + std::to_string(C) + ")");
    return Cyclo::from_coeffs(C, v);
}

namespace {

json kpoly_json(const KPoly& p, int C) {
    json a = json::array();
    for (auto& c : p) a.push_back(cyclo_json(c, C));
    return a;
}

KPoly kpoly_of(const json& j, int C) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of coefficients");
    KPoly p;
    for (auto& c : j) p.push_back(cyclo_of(c, C));
    kpoly::trim(p);
    return p;
}

json classes_json(const std::vector<PalindromicForm::Term>& terms, size_t t, int C) {
    json a = json::array();
    const auto& cl = terms[t].classes;
    for (size_t r = 0; r < cl.size(); ++r)
        a.push_back({{"r", r}, {"num", kpoly_json(cl[r].num, C)}, {"den", kpoly_json(cl[r].den, C)}});
    return a;
}

std::vector<ClassFunction> classes_of(const json& j, int M, int C) {
    std::vector<ClassFunction> out(M, ClassFunction{{}, {Cyclo(1, Rat(1))}});
    std::vector<char> seen(M, 0);
    for (auto& c : j) {
        int r = c.at("r").get<int>();
        if (r < 0 || r >= M || seen[r]) throw std::invalid_argument("bad or repeated residue class r=" + std::to_string(r));
        seen[r] = 1;
        KPoly den = c.contains("den") ? kpoly_of(c["den"], C) : KPoly{Cyclo(1, Rat(1))};
        out[r] = ClassFunction::make(kpoly_of(c.at("num"), C), den);
    }
    for (int r = 0; r < M; ++r)
        if (!seen[r]) throw std::invalid_argument("missing residue class r=" + std::to_string(r));
    return out;
}

std::vector<int> one_based_set(const json& j, int k) {
    std::vector<int> s;
    for (auto& x : j) {
        int v = x.get<int>();
        if (v < 1 || v > k) throw std::invalid_argument("component index out of range: " + std::to_string(v));
        s.push_back(v - 1);
    }
    std::sort(s.begin(), s.end());
    return s;
}

StratumKey key_of(const json& j, const std::vector<SncdDivisor>& divs) {
    if (!j.is_array() || j.size() != divs.size())
        throw std::invalid_argument("stratum key needs one component list per divisor: " + j.dump());
    StratumKey key;
    for (size_t i = 0; i < divs.size(); ++i) key.push_back(one_based_set(j[i], divs[i].k));
    return key;
}

}  // namespace

json form_to_json(const PalindromicForm& f) {
    int C = f.conductor();
    json j;
    j["modulus"] = f.modulus();
    j["conductor"] = C;
    j["classes"] = classes_json(f.terms(), 0, C);
    if (f.terms().size() > 1) {
        json e = json::array();
        for (size_t t = 1; t < f.terms().size(); ++t)
            e.push_back({{"base", cyclo_json(f.terms()[t].base, C)}, {"classes", classes_json(f.terms(), t, C)}});
        j["exp_terms"] = e;
    }
    return j;
}

PalindromicForm form_from_json(const json& j, long q) {
    // shorthand: a bare array is a polynomial in x
    if (j.is_array()) return PalindromicForm::rational(q, kpoly_of(j, 1), {Cyclo(1, Rat(1))});
    int M = j.value("modulus", 1);
    int C = j.value("conductor", 1);
    if (M < 1 || C < 1) throw std::invalid_argument("form modulus and conductor must be >= 1");
    PalindromicForm f = PalindromicForm::per_class(q, classes_of(j.at("classes"), M, C));
    if (j.contains("exp_terms"))
        for (auto& t : j["exp_terms"]) {
            Cyclo base = cyclo_of(t.at("base"), C);
            auto cl = classes_of(t.at("classes"), M, C);
            // base^m * R_r(x): assemble as exponential(base) times the class form
            f = f + PalindromicForm::exponential(q, base, Cyclo(1, Rat(1))) * PalindromicForm::per_class(q, cl);
        }
    return f;
}

json density_to_json(const DensityResult& r) {
    json j;
    j["schema"] = "density/1";
    j["n"] = r.n;
    j["p"] = r.p;
    j["f"] = r.f;
    j["model"] = model_name(r.model);
    j["max_depth"] = r.max_depth;
    json d = json::object();
    for (auto& [t, v] : r.densities) d[t.str()] = rat_json(v);
    j["densities"] = d;
    j["undecided_mass"] = rat_json(r.undecided_mass);
    j["cells_processed"] = r.cells_processed;
    return j;
}

DensityResult density_from_json(const json& j) {
    if (j.value("schema", "") != "density/1") throw std::invalid_argument("not a density/1 document");
    DensityResult r;
    r.n = j.at("n").get<int>();
    r.p = j.at("p").get<long>();
    r.f = j.at("f").get<int>();
    r.model = parse_model(j.at("model").get<std::string>());
    r.max_depth = j.at("max_depth").get<int>();
    for (auto& [k, v] : j.at("densities").items()) {
        auto t = FactorizationType::parse(k);
        if (t.degree() != r.n) throw std::invalid_argument("type " + k + " has the wrong degree");
        r.densities[t] = rat_of(v);
    }
    r.undecided_mass = rat_of(j.at("undecided_mass"));
    r.cells_processed = j.value("cells_processed", 0L);
    return r;
}

json rational_function_json(const RationalFunction& r) {
    json num = json::array(), den = json::array();
    for (auto& c : r.num) num.push_back(c.get_str());
    for (auto& c : r.den) den.push_back(c.get_str());
    return {{"num", num}, {"den", den}, {"text", r.str()}};
}

json perm_json(const Perm& p) {
    json a = json::array();
    for (int x : p) a.push_back(x + 1);
    return a;
}

Perm perm_of(const json& j) {
    Perm p;
    for (auto& x : j) p.push_back(x.get<int>() - 1);
    if (!perm::valid(p)) throw std::invalid_argument("not a permutation: " + j.dump());
    return p;
}

json poset_to_json(const PairPoset& P) {
    json pairs = json::array(), leq = json::array(), iv = json::array();
    const int S = static_cast<int>(P.size());
    for (int i = 0; i < S; ++i) {
        json H = json::array();
        for (auto& h : P.pair(i).H) H.push_back(perm_json(h));
        pairs.push_back({{"H", H}, {"g", perm_json(P.pair(i).g)}, {"type", s_of_tau(P.pair(i)).str()}});
    }
    for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b)
            if (P.leq(a, b)) {
                leq.push_back({a, b});
                iv.push_back({{"a", a}, {"b", b}, {"alpha", P.alpha(a, b)}, {"beta", P.beta(a, b)}});
            }
    return {{"degree", P.group().n}, {"pairs", pairs}, {"leq", leq}, {"intervals", iv}};
}

SncdDatum sncd_from_json(const json& j, long q) {
    SncdDatum d;
    d.q = q;
    d.dim = j.at("dim").get<int>();
    d.closed_world = j.value("closed_world", false);
    for (auto& v : j.at("divisors")) {
        SncdDivisor div;
        div.k = v.at("k").get<int>();
        div.e = v.at("e").get<int>();
        div.frob = v.contains("frob") ? perm_of(v["frob"]) : perm::identity(div.k);
        d.divisors.push_back(div);
    }
    for (auto& s : j.at("strata")) {
        auto key = key_of(s.at("lambda"), d.divisors);
        if (d.strata.count(key)) throw std::invalid_argument("duplicate stratum " + stratum_name(key));
        d.strata.emplace(key, form_from_json(s.at("form"), q));
    }
    validate(d);
    return d;
}

bool has_twist(const json& j) { return j.contains("symmetrized"); }

TwistFixture twist_from_json(const json& j, long q) {
    TwistFixture fx;
    fx.base = sncd_from_json(j, q);
    for (auto& s : j.at("symmetrized")) {
        auto key = key_of(s.at("lambda"), fx.base.divisors);
        fx.symmetrized.emplace(key, form_from_json(s.at("form"), q));
    }
    return fx;
}

TraceData trace_from_json(const json& j, std::vector<Cyclo>* lambda) {
    TraceData d;
    d.q = j.at("q").get<long>();
    d.dim = j.at("dim").get<int>();
    int C = j.value("conductor", 1);
    for (auto& t : j.at("terms"))
        d.terms.push_back(TraceTerm{cyclo_of(t.at("coeff"), C), cyclo_of(t.at("base"), C), t.at("weight").get<int>()});
    for (auto& p : j.at("pairing")) d.pairing.push_back(p.get<int>() - 1);
    if (lambda && j.contains("lambda"))
        for (auto& l : j["lambda"]) lambda->push_back(cyclo_of(l, C));
    return d;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace pcheb

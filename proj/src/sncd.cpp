#include "pcheb/sncd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pcheb {

namespace {

Perm perm_power(const Perm& p, long e) {
    Perm r = perm::identity(static_cast<int>(p.size()));
    for (long i = 0; i < e; ++i) r = perm::compose(p, r);
    return r;
}

// orbits of p, each sorted, ordered by smallest element
std::vector<std::vector<int>> orbits(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (seen[i]) continue;
        std::vector<int> o;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            o.push_back(j);
        }
        std::sort(o.begin(), o.end());
        out.push_back(o);
    }
    return out;
}

Rat delta_value(int e, long m, const Int& base) {
    Rat num = Rat(ipow(base, m)) - 1;
    Rat den = Rat(ipow(base, m * (e + 1))) - 1;
    return num / den;
}

// sum over admissible l-tuples and orbit subsets, with `count` giving the stratum form
template <class CountFn>
PalindromicForm orbit_sum(const SncdDatum& d, CountFn count) {
    const long q = d.q;
    const size_t r = d.divisors.size();
    PalindromicForm total(q);
    std::vector<std::vector<int>> divs(r);
    for (size_t i = 0; i < r; ++i)
        for (int l = 1; l <= d.divisors[i].k; ++l)
            if (d.divisors[i].k % l == 0) divs[i].push_back(l);

    std::vector<size_t> li(r, 0);
    for (;;) {
        PalindromicForm ind = PalindromicForm::constant(q, Cyclo(1, Rat(1)));
        std::vector<std::vector<std::vector<int>>> orbs(r);
        std::vector<PalindromicForm> eta;
        for (size_t i = 0; i < r; ++i) {
            int k = d.divisors[i].k, l = divs[i][li[i]];
            ind = ind * gcd_indicator(q, k, l);
            orbs[i] = orbits(perm_power(d.divisors[i].frob, l));
            eta.push_back(eta_delta(q, d.divisors[i].e, k / l).second);
        }
        // subsets of orbits per divisor
        PalindromicForm inner(q);
        std::vector<unsigned> mask(r, 0);
        for (;;) {
            StratumKey key(r);
            PalindromicForm term = PalindromicForm::constant(q, Cyclo(1, Rat(1)));
            for (size_t i = 0; i < r; ++i) {
                for (size_t o = 0; o < orbs[i].size(); ++o)
                    if (mask[i] >> o & 1) {
                        key[i].insert(key[i].end(), orbs[i][o].begin(), orbs[i][o].end());
                        term = term * eta[i];
                    }
                std::sort(key[i].begin(), key[i].end());
            }
            inner = inner + term * count(key);
            size_t i = 0;
            while (i < r && ++mask[i] == (1u << orbs[i].size())) mask[i++] = 0;
            if (i == r) break;
        }
        total = total + ind * inner;
        size_t i = 0;
        while (i < r && ++li[i] == divs[i].size()) li[i++] = 0;
        if (i == r) break;
    }
    return total;
}

const PalindromicForm& lookup(const std::map<StratumKey, PalindromicForm>& strata, const StratumKey& key,
                              bool closed_world, const PalindromicForm& zero, const char* what) {
    auto it = strata.find(key);
    if (it != strata.end()) return it->second;
    if (closed_world) return zero;
    throw std::invalid_argument(std::string("missing ") + what + " for stratum " + stratum_name(key));
}

}  // namespace

std::string stratum_name(const StratumKey& key) {
    std::string s = "(";
    for (size_t i = 0; i < key.size(); ++i) {
        if (i) s += ", ";
        s += "D" + std::to_string(i + 1) + ":{";
        for (size_t j = 0; j < key[i].size(); ++j) s += (j ? "," : "") + std::to_string(key[i][j] + 1);
        s += "}";
    }
    return s + ")";
}

void validate(const SncdDatum& d) {
    if (d.q < 2) throw std::invalid_argument("sncd datum needs q >= 2");
    if (d.dim < 0) throw std::invalid_argument("dimension must be >= 0");
    for (size_t i = 0; i < d.divisors.size(); ++i) {
        const auto& v = d.divisors[i];
        std::string tag = "divisor " + std::to_string(i + 1);
        if (v.k < 1 || v.e < 1) throw std::invalid_argument(tag + ": k and e must be >= 1");
        if (static_cast<int>(v.frob.size()) != v.k || !perm::valid(v.frob))
            throw std::invalid_argument(tag + ": frob must be a permutation of its k components");
        if (orbits(v.frob).size() != 1) throw std::invalid_argument(tag + ": frob must act transitively");
        if (v.k > 16) throw std::invalid_argument(tag + ": splitting degree too large");
    }
    for (auto& [key, form] : d.strata) {
        if (key.size() != d.divisors.size())
            throw std::invalid_argument("stratum key " + stratum_name(key) + " has the wrong number of divisors");
        for (size_t i = 0; i < key.size(); ++i)
            for (int j : key[i])
                if (j < 0 || j >= d.divisors[i].k)
                    throw std::invalid_argument("stratum key " + stratum_name(key) + " names a missing component");
        if (form.q() != d.q) throw std::invalid_argument("stratum form over a different q");
    }
}

Rat local_integral(const std::vector<int>& e, const std::vector<std::vector<int>>& M, const std::vector<Perm>& frob,
                   long m, long q) {
    if (e.size() != M.size() || e.size() != frob.size())
        throw std::invalid_argument("local_integral: e, M and frob lists differ in length");
    if (m < 1 || q < 2) throw std::invalid_argument("local_integral needs m >= 1 and q >= 2");
    Rat value = 1;
    for (size_t i = 0; i < e.size(); ++i) {
        int k = static_cast<int>(frob[i].size());
        if (!perm::valid(frob[i])) throw std::invalid_argument("frob is not a permutation");
        long l = std::gcd(static_cast<long>(k), m);
        Perm f = perm_power(frob[i], l);
        std::vector<char> in(k, 0);
        for (int j : M[i]) {
            if (j < 0 || j >= k) throw std::invalid_argument("M names a missing component");
            in[j] = 1;
        }
        for (int j : M[i])
            if (!in[f[j]]) throw std::invalid_argument("M_" + std::to_string(i + 1) + " is not Frobenius-stable");
        size_t count = 0;
        for (auto& o : orbits(f))
            if (in[o.front()]) ++count;
        Int base = ipow(Int(q), k / l);
        for (size_t c = 0; c < count; ++c) value *= delta_value(e[i], m, base);
    }
    return value;
}

PalindromicForm eta_sncd(const SncdDatum& d) {
    validate(d);
    PalindromicForm zero(d.q);
    return orbit_sum(d, [&](const StratumKey& key) {
        return lookup(d.strata, key, d.closed_world, zero, "point-count form");
    });
}

PalindromicForm eta_sncd_split(const SncdDatum& d) {
    validate(d);
    const size_t r = d.divisors.size();
    for (auto& v : d.divisors)
        if (v.k != 1) throw std::invalid_argument("split formula needs every divisor geometrically irreducible");
    PalindromicForm zero(d.q), total(d.q);
    for (unsigned J = 0; J < (1u << r); ++J) {
        StratumKey key(r);
        for (size_t j = 0; j < r; ++j)
            if (J >> j & 1) key[j] = {0};
        PalindromicForm term = lookup(d.strata, key, d.closed_world, zero, "point-count form");
        for (size_t j = 0; j < r; ++j)
            if (J >> j & 1) term = term * eta_delta(d.q, d.divisors[j].e).second;
        total = total + term;
    }
    return total;
}

PalindromicForm eta_twisted_sum(const TwistFixture& fx) {
    validate(fx.base);
    for (auto& [key, form] : fx.symmetrized)
        if (key.size() != fx.base.divisors.size() || form.q() != fx.base.q)
            throw std::invalid_argument("symmetrized count " + stratum_name(key) + " does not match the datum");
    PalindromicForm zero(fx.base.q);
    return orbit_sum(fx.base, [&](const StratumKey& key) {
        return lookup(fx.symmetrized, key, fx.base.closed_world, zero, "symmetrized count");
    });
}

}  // namespace pcheb

#include "pcheb/pairs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pcheb {

namespace perm {

Perm identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

bool valid(const Perm& a) {
    std::vector<char> seen(a.size(), 0);
    for (int x : a) {
        if (x < 0 || x >= static_cast<int>(a.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

std::string str(const Perm& a) {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i] + 1);
    return s + "]";
}

std::vector<Perm> generate(int n, const std::vector<Perm>& gens) {
    std::set<Perm> seen{identity(n)};
    std::vector<Perm> queue{identity(n)};
    for (size_t k = 0; k < queue.size(); ++k) {
        for (auto& g : gens) {
            if (static_cast<int>(g.size()) != n || !valid(g)) throw std::invalid_argument("bad generator permutation");
            Perm x = compose(queue[k], g);
            if (seen.insert(x).second) queue.push_back(x);
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace perm

PermGroup PermGroup::symmetric(int n) {
    if (n < 1) throw std::invalid_argument("symmetric group degree must be >= 1");
    std::vector<Perm> gens;
    for (int i = 0; i + 1 < n; ++i) {
        Perm t = perm::identity(n);
        std::swap(t[i], t[i + 1]);
        gens.push_back(t);
    }
    return generated(n, gens);
}

PermGroup PermGroup::generated(int n, const std::vector<Perm>& gens) {
    PermGroup G;
    G.n = n;
    G.elements = perm::generate(n, gens);
    return G;
}

bool PermGroup::contains(const Perm& g) const { return std::binary_search(elements.begin(), elements.end(), g); }

namespace {

bool sorted_contains(const std::vector<Perm>& s, const Perm& x) { return std::binary_search(s.begin(), s.end(), x); }

}  // namespace

AdmissiblePair AdmissiblePair::make(std::vector<Perm> H, const Perm& g) {
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    if (H.empty()) throw std::invalid_argument("subgroup must contain the identity");
    int n = static_cast<int>(g.size());
    if (!perm::valid(g)) throw std::invalid_argument("coset representative is not a permutation");
    if (!sorted_contains(H, perm::identity(n))) throw std::invalid_argument("subgroup must contain the identity");
    for (auto& a : H)
        for (auto& b : H)
            if (!sorted_contains(H, perm::compose(a, b))) throw std::invalid_argument("H is not closed under composition");
    Perm best = g;
    for (auto& h : H) {
        Perm l = perm::compose(g, h);
        if (!sorted_contains(H, perm::compose(perm::compose(perm::inverse(g), h), g)))
            throw std::invalid_argument("g does not normalize H (gH != Hg)");
        best = std::min(best, l);
    }
    return AdmissiblePair{std::move(H), best};
}

std::vector<Perm> AdmissiblePair::coset() const {
    std::vector<Perm> c;
    for (auto& h : H) c.push_back(perm::compose(g, h));
    std::sort(c.begin(), c.end());
    return c;
}

AdmissiblePair conjugate(const AdmissiblePair& t, const Perm& lambda) {
    Perm li = perm::inverse(lambda);
    std::vector<Perm> H;
    for (auto& h : t.H) H.push_back(perm::compose(perm::compose(lambda, h), li));
    return AdmissiblePair::make(std::move(H), perm::compose(perm::compose(lambda, t.g), li));
}

AdmissiblePair inverse(const AdmissiblePair& t) { return AdmissiblePair::make(t.H, perm::inverse(t.g)); }

bool pair_leq(const AdmissiblePair& a, const AdmissiblePair& b) {
    for (auto& h : a.H)
        if (!sorted_contains(b.H, h)) return false;
    return sorted_contains(b.H, perm::compose(perm::inverse(b.g), a.g));
}

FactorizationType s_of_tau(const AdmissiblePair& t) {
    int n = static_cast<int>(t.g.size());
    std::vector<int> big(n), small(n);
    std::iota(big.begin(), big.end(), 0);
    std::iota(small.begin(), small.end(), 0);
    std::function<int(std::vector<int>&, int)> find = [&](std::vector<int>& uf, int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](std::vector<int>& uf, int a, int b) { uf[find(uf, a)] = find(uf, b); };
    for (auto& h : t.H)
        for (int i = 0; i < n; ++i) {
            unite(small, i, h[i]);
            unite(big, i, h[i]);
        }
    for (int i = 0; i < n; ++i) unite(big, i, t.g[i]);
    std::map<int, std::map<int, int>> blocks;  // big orbit -> small orbit -> size
    for (int i = 0; i < n; ++i) ++blocks[find(big, i)][find(small, i)];
    std::vector<std::pair<int, int>> parts;
    for (auto& [root, inner] : blocks) {
        int e = inner.begin()->second;
        for (auto& [r, sz] : inner)
            if (sz != e) throw std::logic_error("inertia orbits of unequal size inside one block");
        parts.push_back({static_cast<int>(inner.size()), e});
    }
    return FactorizationType::from_parts(parts);
}

AdmissiblePair tau_of_sigma(const FactorizationType& sigma) {
    int n = 0;
    for (auto& [f, e] : sigma.parts) {
        if (f < 1 || e < 1) throw std::invalid_argument("malformed factorization type");
        n += f * e;
    }
    if (n < 1) throw std::invalid_argument("empty factorization type");
    std::vector<Perm> gens;
    Perm g = perm::identity(n);
    int start = 0;
    for (auto& [f, e] : sigma.parts) {
        for (int j = 0; j < f; ++j) {
            int b = start + j * e;
            for (int k = 0; k + 1 < e; ++k) {
                Perm t = perm::identity(n);
                std::swap(t[b + k], t[b + k + 1]);
                gens.push_back(t);
            }
            int next = start + ((j + 1) % f) * e;
            for (int k = 0; k < e; ++k) g[b + k] = next + k;
        }
        start += f * e;
    }
    return AdmissiblePair::make(perm::generate(n, gens), g);
}

// ---------------------------------------------------------------- poset

PairPoset::PairPoset(const PermGroup& G, int cap) : G_(G) {
    if (G.n > cap) throw std::invalid_argument("permutation degree " + std::to_string(G.n) + " exceeds cap " +
                                               std::to_string(cap));
    const int N = static_cast<int>(G_.elements.size());
    for (int i = 0; i < N; ++i) elem_index_[G_.elements[i]] = i;
    if (!elem_index_.count(perm::identity(G_.n))) throw std::invalid_argument("group lacks the identity");
    mul_.assign(N, std::vector<int>(N));
    elem_inv_.resize(N);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            auto it = elem_index_.find(perm::compose(G_.elements[a], G_.elements[b]));
            if (it == elem_index_.end()) throw std::invalid_argument("element list is not closed");
            mul_[a][b] = it->second;
        }
        elem_inv_[a] = elem(perm::inverse(G_.elements[a]));
    }
    enumerate_subgroups();

    // pairs: cosets of H inside its normalizer
    for (int s = 0; s < static_cast<int>(subgroups_.size()); ++s) {
        std::vector<char> in(N, 0);
        for (int x : subgroups_[s]) in[x] = 1;
        std::set<int> reps;
        for (int g = 0; g < N; ++g) {
            bool normal = true;
            for (int h : subgroups_[s])
                if (!in[mul_[mul_[g][h]][elem_inv_[g]]]) {
                    normal = false;
                    break;
                }
            if (normal) reps.insert(coset_min(g, s));
        }
        for (int r : reps) {
            raw_index_[{s, r}] = static_cast<int>(raw_.size());
            raw_.push_back({s, r});
            std::vector<Perm> H;
            for (int x : subgroups_[s]) H.push_back(G_.elements[x]);
            pairs_.push_back(AdmissiblePair{H, G_.elements[r]});
        }
    }
    const int P = static_cast<int>(raw_.size());

    std::vector<std::vector<char>> member(subgroups_.size(), std::vector<char>(N, 0));
    for (size_t s = 0; s < subgroups_.size(); ++s)
        for (int x : subgroups_[s]) member[s][x] = 1;
    leq_.assign(P, std::vector<char>(P, 0));
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            auto [sa, ra] = raw_[a];
            auto [sb, rb] = raw_[b];
            if (subgroups_[sa].size() > subgroups_[sb].size()) continue;
            if (!member[sb][mul_[elem_inv_[rb]][ra]]) continue;
            bool sub = true;
            for (int x : subgroups_[sa])
                if (!member[sb][x]) {
                    sub = false;
                    break;
                }
            leq_[a][b] = sub;
        }

    auto subgroup_of = [&](std::vector<int> els) {
        std::sort(els.begin(), els.end());
        return subgroup_index_.at(els);
    };
    conj_.assign(N, std::vector<int>(P));
    for (int l = 0; l < N; ++l)
        for (int i = 0; i < P; ++i) {
            auto [s, r] = raw_[i];
            std::vector<int> els;
            for (int x : subgroups_[s]) els.push_back(mul_[mul_[l][x]][elem_inv_[l]]);
            int s2 = subgroup_of(els);
            int g2 = mul_[mul_[l][r]][elem_inv_[l]];
            conj_[l][i] = raw_index_.at({s2, coset_min(g2, s2)});
        }
    inv_.resize(P);
    for (int i = 0; i < P; ++i) {
        auto [s, r] = raw_[i];
        inv_[i] = raw_index_.at({s, coset_min(elem_inv_[r], s)});
    }
    order_.resize(P);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
        return subgroups_[raw_[a].first].size() < subgroups_[raw_[b].first].size();
    });
}

int PairPoset::elem(const Perm& p) const {
    auto it = elem_index_.find(p);
    if (it == elem_index_.end()) throw std::invalid_argument("permutation not in group: " + perm::str(p));
    return it->second;
}

int PairPoset::coset_min(int g, int sub) const {
    int best = g;
    for (int h : subgroups_[sub]) best = std::min(best, mul_[g][h]);
    return best;
}

void PairPoset::enumerate_subgroups() {
    const int N = static_cast<int>(G_.elements.size());
    int id = elem(perm::identity(G_.n));
    std::vector<std::vector<int>> gens;
    auto add = [&](std::vector<int> els, std::vector<int> gs) {
        std::sort(els.begin(), els.end());
        if (subgroup_index_.count(els)) return;
        subgroup_index_[els] = static_cast<int>(subgroups_.size());
        subgroups_.push_back(std::move(els));
        gens.push_back(std::move(gs));
    };
    add({id}, {});
    for (size_t k = 0; k < subgroups_.size(); ++k) {
        std::vector<char> done(N, 0);
        std::vector<char> in(N, 0);
        for (int x : subgroups_[k]) in[x] = 1;
        for (int g = 0; g < N; ++g) {
            if (in[g] || done[g]) continue;
            // H g and H g' give the same closure when g' is in H g
            for (int h : subgroups_[k]) done[mul_[h][g]] = 1;
            std::vector<int> gs = gens[k];
            gs.push_back(g);
            std::vector<char> seen(N, 0);
            std::vector<int> els{id};
            seen[id] = 1;
            for (size_t q = 0; q < els.size(); ++q)
                for (int s : gs) {
                    int y = mul_[els[q]][s];
                    if (!seen[y]) {
                        seen[y] = 1;
                        els.push_back(y);
                    }
                }
            add(std::move(els), std::move(gs));
        }
    }
}

int PairPoset::index_of(const AdmissiblePair& t) const {
    std::vector<int> els;
    for (auto& h : t.H) els.push_back(elem(h));
    std::sort(els.begin(), els.end());
    auto it = subgroup_index_.find(els);
    if (it == subgroup_index_.end()) throw std::invalid_argument("H is not a subgroup of G");
    auto jt = raw_index_.find({it->second, coset_min(elem(t.g), it->second)});
    if (jt == raw_index_.end()) throw std::invalid_argument("pair is not admissible");
    return jt->second;
}

bool PairPoset::lesssim(int a, int b) const {
    for (size_t l = 0; l < G_.elements.size(); ++l)
        if (leq_[a][conj_[l][b]]) return true;
    return false;
}

long PairPoset::alpha(int a, int b) const {
    // lambda and h*lambda (h in H_b) give the same answer; count all, divide
    long hits = 0;
    for (size_t l = 0; l < G_.elements.size(); ++l)
        if (leq_[conj_[l][a]][b]) ++hits;
    return hits / static_cast<long>(subgroups_[raw_[b].first].size());
}

long PairPoset::beta(int a, int b) const {
    std::set<int> below;
    for (size_t l = 0; l < G_.elements.size(); ++l)
        if (leq_[conj_[l][a]][b]) below.insert(conj_[l][a]);
    return static_cast<long>(below.size());
}

Rat PairPoset::gamma(int a, int b) const {
    long be = beta(a, b);
    if (be == 0) return 0;
    Rat r(alpha(a, b), be);
    r.canonicalize();
    return r;
}

std::vector<std::vector<int>> PairPoset::conjugacy_classes() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(pairs_.size(), 0);
    for (int i = 0; i < static_cast<int>(pairs_.size()); ++i) {
        if (seen[i]) continue;
        std::set<int> cls;
        for (size_t l = 0; l < G_.elements.size(); ++l) cls.insert(conj_[l][i]);
        for (int c : cls) seen[c] = 1;
        out.emplace_back(cls.begin(), cls.end());
    }
    return out;
}

// ---------------------------------------------------------------- incidence algebra

Rat IncidenceElement::at(int a, int b) const {
    auto it = values.find({a, b});
    return it == values.end() ? Rat(0) : it->second;
}

IncidenceElement incidence_delta(const PairPoset& P) {
    IncidenceElement d;
    for (int i = 0; i < static_cast<int>(P.size()); ++i) d.values[{i, i}] = 1;
    return d;
}

IncidenceElement incidence_zeta(const PairPoset& P) {
    IncidenceElement z;
    for (int a = 0; a < static_cast<int>(P.size()); ++a)
        for (int b = 0; b < static_cast<int>(P.size()); ++b)
            if (P.leq(a, b)) z.values[{a, b}] = 1;
    return z;
}

IncidenceElement incidence_gamma(const PairPoset& P) {
    IncidenceElement g;
    for (int a = 0; a < static_cast<int>(P.size()); ++a)
        for (int b = 0; b < static_cast<int>(P.size()); ++b)
            if (P.leq(a, b)) g.values[{a, b}] = P.gamma(a, b);
    return g;
}

IncidenceElement incidence_convolve(const PairPoset& P, const IncidenceElement& x, const IncidenceElement& y) {
    const int S = static_cast<int>(P.size());
    IncidenceElement r;
    for (int a = 0; a < S; ++a)
        for (int b = 0; b < S; ++b) {
            if (!P.leq(a, b)) continue;
            Rat s = 0;
            for (int c = 0; c < S; ++c)
                if (P.leq(a, c) && P.leq(c, b)) s += x.at(a, c) * y.at(c, b);
            if (s != 0) r.values[{a, b}] = s;
        }
    return r;
}

IncidenceElement incidence_invert(const PairPoset& P, const IncidenceElement& x) {
    const auto& order = P.linear_extension();
    for (int i = 0; i < static_cast<int>(P.size()); ++i)
        if (x.at(i, i) == 0) throw std::invalid_argument("incidence element has a zero diagonal entry");
    IncidenceElement inv;
    // inv[a,b] = -(sum_{a<=c<b} inv[a,c] x[c,b]) / x[b,b], b in linear-extension order
    for (int a : order) {
        for (int b : order) {
            if (!P.leq(a, b)) continue;
            Rat s = a == b ? Rat(1) : Rat(0);
            for (int c : order) {
                if (c == b) break;
                if (P.leq(a, c) && P.leq(c, b)) s -= inv.at(a, c) * x.at(c, b);
            }
            s /= x.at(b, b);
            if (s != 0) inv.values[{a, b}] = s;
        }
    }
    return inv;
}

namespace {

Rat interval_sum(const PairPoset& P, const std::map<int, Rat>& data, int tau, const IncidenceElement& kernel) {
    Rat s = 0;
    for (int t = 0; t < static_cast<int>(P.size()); ++t) {
        if (!P.leq(t, tau)) continue;
        auto it = data.find(t);
        if (it == data.end()) throw std::invalid_argument("missing value for pair " + std::to_string(t));
        s += it->second * kernel.at(t, tau);
    }
    return s;
}

}  // namespace

Rat eta_from_rho(const PairPoset& P, const std::map<int, Rat>& rho, int tau) {
    return interval_sum(P, rho, tau, incidence_gamma(P));
}

Rat rho_from_eta(const PairPoset& P, const std::map<int, Rat>& eta, int tau) {
    return interval_sum(P, eta, tau, incidence_invert(P, incidence_gamma(P)));
}

SigmaPoset sigma_poset(const PairPoset& P) {
    SigmaPoset S;
    S.n = P.group().n;
    S.types = all_types(S.n);
    std::vector<int> idx;
    for (auto& t : S.types) idx.push_back(P.index_of(tau_of_sigma(t)));
    S.leq.assign(S.types.size(), std::vector<char>(S.types.size(), 0));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) S.leq[i][j] = P.lesssim(idx[i], idx[j]);
    return S;
}

SigmaAlpha sigma_alpha_matrix(const PairPoset& P) {
    SigmaAlpha out;
    out.types = all_types(P.group().n);
    std::vector<int> idx;
    for (auto& t : out.types) idx.push_back(P.index_of(tau_of_sigma(t)));
    size_t k = idx.size();
    out.A.assign(k, std::vector<Rat>(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) out.A[i][j] = P.alpha(idx[i], idx[j]);
    out.A_inv = qmat::inverse(out.A);
    return out;
}

Rat rho_id_from_types(const PairPoset& P, const std::map<int, Rat>& rho, const std::vector<Perm>& H,
                      const std::vector<Perm>& H1) {
    std::vector<Perm> h(H), h1(H1);
    std::sort(h.begin(), h.end());
    std::sort(h1.begin(), h1.end());
    for (auto& x : h)
        if (!std::binary_search(h1.begin(), h1.end(), x)) throw std::invalid_argument("H is not contained in H1");
    if (h1.size() % h.size() != 0) throw std::invalid_argument("H is not a subgroup of H1");
    const long m = static_cast<long>(h1.size() / h.size());
    // cosets of H in H1, each must normalize H
    std::set<std::vector<Perm>> cosets;
    for (auto& t : h1) {
        AdmissiblePair c = AdmissiblePair::make(h, t);  // throws unless tH = Ht
        cosets.insert(c.coset());
    }
    Rat sum = 0;
    bool cyclic = false;
    for (auto& c : cosets) {
        // order of the coset in H1/H
        Perm theta = c.front();
        Perm x = theta;
        long ord = 1;
        while (!std::binary_search(h.begin(), h.end(), x)) {
            x = perm::compose(x, theta);
            ++ord;
        }
        if (ord != m) continue;
        cyclic = true;
        int idx = P.index_of(AdmissiblePair::make(h, theta));
        auto it = rho.find(idx);
        if (it == rho.end()) throw std::invalid_argument("missing value for pair " + std::to_string(idx));
        sum += it->second;
    }
    if (!cyclic) throw std::invalid_argument("H1/H is not cyclic");
    return sum;
}

}  // namespace pcheb

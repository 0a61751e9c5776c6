#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcheb/factor.hpp"
#include "pcheb/linalg.hpp"
#include "pcheb/rational.hpp"

namespace pcheb {

// one-line notation on {0..n-1}; compose(a, b)(i) = a(b(i))
using Perm = std::vector<int>;

namespace perm {
Perm identity(int n);
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool valid(const Perm& a);
std::string str(const Perm& a);  // 1-based, e.g. "[2,1,3]"
// closure of the generators; sorted lexicographically
std::vector<Perm> generate(int n, const std::vector<Perm>& gens);
}  // namespace perm

struct PermGroup {
    int n = 0;
    std::vector<Perm> elements;  // sorted

    static PermGroup symmetric(int n);
    static PermGroup generated(int n, const std::vector<Perm>& gens);
    bool contains(const Perm& g) const;
    size_t order() const { return elements.size(); }
};

// (H, gH) with gH = Hg; g is the lexicographically least element of gH
struct AdmissiblePair {
    std::vector<Perm> H;  // sorted
    Perm g;

    static AdmissiblePair make(std::vector<Perm> H, const Perm& g);
    std::vector<Perm> coset() const;
    auto operator<=>(const AdmissiblePair&) const = default;
};

AdmissiblePair conjugate(const AdmissiblePair& t, const Perm& lambda);  // lambda t lambda^-1
AdmissiblePair inverse(const AdmissiblePair& t);                        // (H, g^-1 H)
bool pair_leq(const AdmissiblePair& a, const AdmissiblePair& b);
FactorizationType s_of_tau(const AdmissiblePair& t);
AdmissiblePair tau_of_sigma(const FactorizationType& sigma);

constexpr int kDefaultPairCap = 6;

// every admissible pair of G with the full partial order
class PairPoset {
public:
    explicit PairPoset(const PermGroup& G, int cap = kDefaultPairCap);

    const PermGroup& group() const { return G_; }
    size_t size() const { return pairs_.size(); }
    const AdmissiblePair& pair(int i) const { return pairs_[i]; }
    int index_of(const AdmissiblePair& t) const;
    bool leq(int a, int b) const { return leq_[a][b]; }
    // a <~ b: a lies below some conjugate of b
    bool lesssim(int a, int b) const;

    int conjugate(int i, int lambda) const { return conj_[lambda][i]; }
    int inverse(int i) const { return inv_[i]; }

    long alpha(int a, int b) const;
    long beta(int a, int b) const;
    Rat gamma(int a, int b) const;

    // pairs ordered so that a <= b implies a comes first
    const std::vector<int>& linear_extension() const { return order_; }
    std::vector<std::vector<int>> conjugacy_classes() const;
    size_t subgroup_count() const { return subgroups_.size(); }

private:
    PermGroup G_;
    std::map<Perm, int> elem_index_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> elem_inv_;
    std::vector<std::vector<int>> subgroups_;  // sorted element indices
    std::map<std::vector<int>, int> subgroup_index_;
    std::vector<std::pair<int, int>> raw_;  // (subgroup, coset rep index)
    std::map<std::pair<int, int>, int> raw_index_;
    std::vector<AdmissiblePair> pairs_;
    std::vector<std::vector<char>> leq_;
    std::vector<std::vector<int>> conj_;
    std::vector<int> inv_;
    std::vector<int> order_;

    int elem(const Perm& p) const;
    int coset_min(int g, int sub) const;
    void enumerate_subgroups();
};

using Interval = std::pair<int, int>;

// function on intervals [a, b], a <= b; absent entries are 0
struct IncidenceElement {
    std::map<Interval, Rat> values;
    Rat at(int a, int b) const;
};

IncidenceElement incidence_delta(const PairPoset& P);
IncidenceElement incidence_zeta(const PairPoset& P);
IncidenceElement incidence_gamma(const PairPoset& P);
IncidenceElement incidence_convolve(const PairPoset& P, const IncidenceElement& x, const IncidenceElement& y);
IncidenceElement incidence_invert(const PairPoset& P, const IncidenceElement& x);

// eta_tau = sum_{t' <= tau} rho_t' gamma[t', tau], and back via gamma^-1
Rat eta_from_rho(const PairPoset& P, const std::map<int, Rat>& rho, int tau);
Rat rho_from_eta(const PairPoset& P, const std::map<int, Rat>& eta, int tau);

struct SigmaPoset {
    int n = 0;
    std::vector<FactorizationType> types;
    std::vector<std::vector<char>> leq;
};

SigmaPoset sigma_poset(const PairPoset& P);

struct SigmaAlpha {
    std::vector<FactorizationType> types;
    QMatrix A, A_inv;  // A[i][j] = alpha(tau_{types[i]}, tau_{types[j]})
};

SigmaAlpha sigma_alpha_matrix(const PairPoset& P);

// sum of rho over (H, theta H) with theta H generating the cyclic group H1/H
Rat rho_id_from_types(const PairPoset& P, const std::map<int, Rat>& rho, const std::vector<Perm>& H,
                      const std::vector<Perm>& H1);

}  // namespace pcheb

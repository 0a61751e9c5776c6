#include "doctest.h"

#include <set>

#include "pcheb/pairs.hpp"

using namespace pcheb;

namespace {

Perm perm1(std::vector<int> one_based) {
    for (auto& x : one_based) --x;
    return one_based;
}

FactorizationType T(const std::string& s) { return FactorizationType::parse(s); }

// subgroups as closed subsets: exhaustive over all subsets of the element list
size_t brute_force_pair_count(int n) {
    auto G = PermGroup::symmetric(n).elements;
    size_t N = G.size();
    std::set<std::pair<std::vector<Perm>, std::vector<Perm>>> seen;
    for (unsigned long mask = 1; mask < (1ul << N); ++mask) {
        std::vector<Perm> H;
        for (size_t i = 0; i < N; ++i)
            if (mask >> i & 1) H.push_back(G[i]);
        bool closed = true;
        for (auto& a : H)
            for (auto& b : H)
                if (std::find(H.begin(), H.end(), perm::compose(a, b)) == H.end()) closed = false;
        if (!closed) continue;
        for (auto& g : G) {
            std::set<Perm> left, right;
            for (auto& h : H) {
                left.insert(perm::compose(g, h));
                right.insert(perm::compose(h, g));
            }
            if (left == right) seen.insert({H, {left.begin(), left.end()}});
        }
    }
    return seen.size();
}

}  // namespace

TEST_CASE("pairs of S1 and S2") {
    PairPoset P1(PermGroup::symmetric(1));
    CHECK(P1.size() == 1);

    PairPoset P(PermGroup::symmetric(2));
    REQUIRE(P.size() == 3);
    int triv = P.index_of(AdmissiblePair::make({perm1({1, 2})}, perm1({1, 2})));
    int swap = P.index_of(AdmissiblePair::make({perm1({1, 2})}, perm1({2, 1})));
    int top = P.index_of(AdmissiblePair::make({perm1({1, 2}), perm1({2, 1})}, perm1({2, 1})));
    CHECK(P.leq(triv, top));
    CHECK(P.leq(swap, top));
    CHECK_FALSE(P.leq(triv, swap));
    CHECK_FALSE(P.leq(swap, triv));

    CHECK(P.alpha(triv, triv) == 2);
    CHECK(P.beta(triv, triv) == 1);
    CHECK(P.gamma(triv, triv) == 2);
    CHECK(P.alpha(swap, top) == 1);
    CHECK(P.beta(swap, top) == 1);
    CHECK(P.gamma(swap, top) == 1);

    CHECK(P.inverse(swap) == swap);
    CHECK(P.conjugate(swap, 1) == swap);
}

TEST_CASE("pair counts match a subset brute force") {
    for (int n = 1; n <= 3; ++n) CHECK(PairPoset(PermGroup::symmetric(n)).size() == brute_force_pair_count(n));
    CHECK(PairPoset(PermGroup::symmetric(3)).size() == 12);
}

TEST_CASE("conjugation and inversion in S3") {
    auto t = AdmissiblePair::make({perm1({1, 2, 3})}, perm1({2, 3, 1}));
    auto c = conjugate(t, perm1({2, 1, 3}));
    CHECK(c == AdmissiblePair::make({perm1({1, 2, 3})}, perm1({3, 1, 2})));
    CHECK(c == inverse(t));

    PairPoset S3(PermGroup::symmetric(3));
    int transp = S3.index_of(AdmissiblePair::make({perm1({1, 2, 3})}, perm1({2, 1, 3})));
    int top = S3.index_of(tau_of_sigma(T("1^3")));
    CHECK(S3.beta(transp, top) == 3);
    CHECK(S3.alpha(transp, top) == 1);
}

TEST_CASE("admissibility is enforced") {
    // <(12)> is not normalized by (123)
    CHECK_THROWS_AS(AdmissiblePair::make({perm1({1, 2, 3}), perm1({2, 1, 3})}, perm1({2, 3, 1})), std::invalid_argument);
    CHECK_THROWS_AS(PairPoset(PermGroup::symmetric(7)), std::invalid_argument);
}

TEST_CASE("incidence inversion") {
    PairPoset P(PermGroup::symmetric(2));
    auto d = incidence_delta(P);
    CHECK(incidence_invert(P, d).values == d.values);

    auto z = incidence_zeta(P);
    auto mu = incidence_invert(P, z);
    int top = P.index_of(tau_of_sigma(T("1^2")));
    int triv = P.index_of(tau_of_sigma(T("1,1")));
    CHECK(mu.at(triv, triv) == 1);
    CHECK(mu.at(top, top) == 1);
    CHECK(mu.at(triv, top) == -1);

    auto g = incidence_gamma(P);
    CHECK(g.values.size() == 5);
    CHECK(incidence_convolve(P, g, incidence_invert(P, g)).values == d.values);
    CHECK(incidence_convolve(P, incidence_invert(P, g), g).values == d.values);

    IncidenceElement bad = z;
    bad.values.erase({top, top});
    CHECK_THROWS_AS(incidence_invert(P, bad), std::invalid_argument);
}

TEST_CASE("s and tau correspondences") {
    CHECK(s_of_tau(AdmissiblePair::make({perm1({1, 2})}, perm1({2, 1}))) == T("2"));
    CHECK(s_of_tau(AdmissiblePair::make({perm1({1, 2}), perm1({2, 1})}, perm1({1, 2}))) == T("1^2"));
    auto h = perm::generate(4, {perm1({2, 1, 3, 4})});
    CHECK(s_of_tau(AdmissiblePair::make(h, perm1({1, 2, 4, 3}))) == T("1^2,2"));

    CHECK(tau_of_sigma(T("1,1")) == AdmissiblePair::make({perm1({1, 2})}, perm1({1, 2})));
    CHECK(tau_of_sigma(T("2")) == AdmissiblePair::make({perm1({1, 2})}, perm1({2, 1})));
    CHECK(tau_of_sigma(T("1^2")) == AdmissiblePair::make({perm1({1, 2}), perm1({2, 1})}, perm1({1, 2})));

    for (int n = 1; n <= 6; ++n)
        for (auto& s : all_types(n)) CHECK(s_of_tau(tau_of_sigma(s)) == s);
}

TEST_CASE("sigma poset and alpha matrix") {
    PairPoset P2(PermGroup::symmetric(2));
    auto S = sigma_poset(P2);
    auto at = [&](const SigmaPoset& sp, const std::string& a, const std::string& b) {
        size_t i = std::find(sp.types.begin(), sp.types.end(), T(a)) - sp.types.begin();
        size_t j = std::find(sp.types.begin(), sp.types.end(), T(b)) - sp.types.begin();
        return static_cast<bool>(sp.leq[i][j]);
    };
    CHECK(at(S, "1,1", "1^2"));
    CHECK(at(S, "2", "1^2"));
    CHECK_FALSE(at(S, "1,1", "2"));
    CHECK_FALSE(at(S, "2", "1,1"));

    auto S1 = sigma_poset(PairPoset(PermGroup::symmetric(1)));
    CHECK(S1.types.size() == 1);
    CHECK(S1.leq[0][0]);

    auto S3 = sigma_poset(PairPoset(PermGroup::symmetric(3)));
    CHECK_FALSE(at(S3, "1,1,1", "1,2"));

    auto A = sigma_alpha_matrix(P2);
    auto pos = [&](const std::string& s) {
        return std::find(A.types.begin(), A.types.end(), T(s)) - A.types.begin();
    };
    CHECK(A.A[pos("1,1")][pos("1,1")] == 2);
    CHECK(A.A[pos("2")][pos("2")] == 2);
    CHECK(qmat::mul(A.A, A.A_inv) == qmat::identity(static_cast<int>(A.types.size())));
    auto A1 = sigma_alpha_matrix(PairPoset(PermGroup::symmetric(1)));
    CHECK(A1.A == QMatrix{{Rat(1)}});
}

TEST_CASE("eta and rho transforms") {
    PairPoset P(PermGroup::symmetric(2));
    int triv = P.index_of(tau_of_sigma(T("1,1")));
    int swap = P.index_of(tau_of_sigma(T("2")));
    for (long q : {2L, 3L, 5L}) {
        Rat P2 = q * q + q + 1;
        Rat r11 = P2 * Rat(1, 2);
        Rat r2 = P2 * Rat(q * q - q + 1, 2 * (q * q + q + 1));
        r2.canonicalize();
        CHECK(eta_from_rho(P, {{triv, r11}}, triv) == q * q + q + 1);
        CHECK(eta_from_rho(P, {{swap, r2}}, swap) == q * q - q + 1);
    }
    int top = P.index_of(tau_of_sigma(T("1^2")));
    CHECK(eta_from_rho(P, {{triv, 0}, {swap, 0}, {top, 0}}, top) == 0);
    CHECK_THROWS_AS(eta_from_rho(P, {{triv, 1}}, top), std::invalid_argument);

    std::map<int, Rat> rho{{triv, Rat(1, 3)}, {swap, Rat(2, 7)}, {top, Rat(5, 11)}};
    std::map<int, Rat> eta;
    for (auto& [k, v] : rho) eta[k] = eta_from_rho(P, rho, k);
    for (auto& [k, v] : rho) CHECK(rho_from_eta(P, eta, k) == v);
}

TEST_CASE("rho_id from cyclic quotients") {
    PairPoset P(PermGroup::symmetric(2));
    int swap = P.index_of(tau_of_sigma(T("2")));
    int top = P.index_of(tau_of_sigma(T("1^2")));
    auto S2 = PermGroup::symmetric(2).elements;
    std::map<int, Rat> rho{{swap, Rat(3, 5)}, {top, Rat(1, 7)}};
    CHECK(rho_id_from_types(P, rho, {perm1({1, 2})}, S2) == Rat(3, 5));
    CHECK(rho_id_from_types(P, rho, S2, S2) == Rat(1, 7));

    PairPoset P4(PermGroup::symmetric(4));
    auto C4 = perm::generate(4, {perm1({2, 3, 4, 1})});
    std::map<int, Rat> r4;
    int a = P4.index_of(AdmissiblePair::make({perm1({1, 2, 3, 4})}, perm1({2, 3, 4, 1})));
    int b = P4.index_of(AdmissiblePair::make({perm1({1, 2, 3, 4})}, perm1({4, 1, 2, 3})));
    r4[a] = 1;
    r4[b] = 10;
    CHECK(rho_id_from_types(P4, r4, {perm1({1, 2, 3, 4})}, C4) == 11);

    auto V4 = perm::generate(4, {perm1({2, 1, 4, 3}), perm1({3, 4, 1, 2})});
    CHECK_THROWS_AS(rho_id_from_types(P4, r4, {perm1({1, 2, 3, 4})}, V4), std::invalid_argument);
}

TEST_CASE("poset properties for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        PairPoset P(PermGroup::symmetric(n));
        const int S = static_cast<int>(P.size());
        const int N = static_cast<int>(P.group().order());
        int fails = 0;
        for (int a = 0; a < S; ++a) {
            fails += !P.leq(a, a);
            fails += P.inverse(P.inverse(a)) != a;
            for (int b = 0; b < S; ++b) {
                fails += a != b && P.leq(a, b) && P.leq(b, a);
                fails += P.leq(a, b) != P.leq(P.inverse(a), P.inverse(b));
                for (int l = 0; l < N; ++l) fails += P.leq(a, b) != P.leq(P.conjugate(a, l), P.conjugate(b, l));
                if (P.leq(a, b)) {
                    fails += P.alpha(a, b) != P.alpha(P.inverse(a), P.inverse(b));
                    fails += P.beta(a, b) != P.beta(P.inverse(a), P.inverse(b));
                    fails += P.gamma(a, b) <= 0;
                }
            }
        }
        for (int a = 0; a < S; ++a)
            for (int b = 0; b < S; ++b)
                if (P.leq(a, b))
                    for (int c = 0; c < S; ++c) fails += P.leq(b, c) && !P.leq(a, c);
        CHECK_MESSAGE(fails == 0, "n=" << n);
        CHECK(P.pair(P.linear_extension().back()).H.size() == P.group().order());
    }
}

TEST_CASE("adjointness and alpha invariance for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        PairPoset P(PermGroup::symmetric(n));
        auto S = sigma_poset(P);
        std::vector<int> tau_idx;
        for (auto& s : S.types) tau_idx.push_back(P.index_of(tau_of_sigma(s)));
        int fails = 0;
        for (int t = 0; t < static_cast<int>(P.size()); ++t) {
            auto st = s_of_tau(P.pair(t));
            size_t si = std::find(S.types.begin(), S.types.end(), st) - S.types.begin();
            REQUIRE(si < S.types.size());
            for (size_t j = 0; j < S.types.size(); ++j) {
                fails += P.lesssim(t, tau_idx[j]) != static_cast<bool>(S.leq[si][j]);
                fails += P.alpha(t, tau_idx[j]) != P.alpha(tau_idx[si], tau_idx[j]);
            }
        }
        CHECK_MESSAGE(fails == 0, "n=" << n);
    }
}

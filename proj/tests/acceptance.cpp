// One line per acceptance criterion; exit status reflects criteria 1-10, criterion 11 is report-only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "pcheb/enumerate.hpp"
#include "pcheb/fit.hpp"
#include "pcheb/serialize.hpp"

using namespace pcheb;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Check = std::function<Outcome()>;

// q -> (p, f)
BaseRing ring_for(long q) {
    for (long p = 2; p <= q; ++p) {
        if (q % p) continue;
        int f = 0;
        long r = q;
        while (r % p == 0) r /= p, ++f;
        if (r != 1) throw std::invalid_argument("not a prime power");
        return make_base_ring(p, f);
    }
    throw std::invalid_argument("q < 2");
}

std::map<std::pair<int, long>, DensityResult> cache;

const DensityResult& haar(int n, long q) {
    auto key = std::make_pair(n, q);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, exact_density(n, ring_for(q), Model::haar, 8)).first;
    return it->second;
}

Rat poly(std::initializer_list<long> c, long q) {
    Rat v = 0, x = 1;
    for (long a : c) {
        v += a * x;
        x *= q;
    }
    return v;
}

// closed forms for the degree 2 and 3 densities
Rat rho2_inert(long q) { return poly({1, -1, 1}, q) / (2 * poly({1, 1, 1}, q)); }
Rat rho3_split(long q) { return poly({1, 0, 2, 0, 1}, q) / (6 * poly({1, 1, 1, 1, 1}, q)); }
Rat rho3_12(long q) { return poly({1, 0, 0, 0, 1}, q) / (2 * poly({1, 1, 1, 1, 1}, q)); }

Rat proj(long q, int n) { return projective_space(q, n).evaluate_rational(1); }

std::string fixture_path(const std::string& name) { return std::string(PCHEB_FIXTURE_DIR) + "/" + name + ".json"; }

const std::vector<long> kFitQ = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25};

Outcome criterion1() {
    Outcome o;
    int checked = 0;
    for (long q : {2L, 3L, 5L, 7L, 9L}) {
        auto& r = haar(2, q);
        bool ok = r.undecided_mass == 0 && r.density("1,1") == Rat(1, 2) && r.density("2") == rho2_inert(q);
        if (!ok) o.pass = false, o.detail += " n=2 q=" + std::to_string(q);
        ++checked;
    }
    for (long q : {2L, 3L, 5L, 7L}) {
        auto& r = haar(3, q);
        bool ok = r.undecided_mass == 0 && r.density("1,1,1") == rho3_split(q) && r.density("1,2") == rho3_12(q);
        if (!ok) o.pass = false, o.detail += " n=3 q=" + std::to_string(q);
        ++checked;
    }
    if (o.pass) o.detail = std::to_string(checked) + " (n,q) runs exact, e.g. rho(3,{1,1,1};7) = " +
                           rat_to_string(haar(3, 7).density("1,1,1"));
    return o;
}

Outcome criterion2() {
    Outcome o;
    int runs = 0;
    for (auto& [key, r] : cache) {
        for (auto model : {Model::haar, Model::monic, Model::eisenstein}) {
            const DensityResult* d = &r;
            DensityResult other;
            if (model != Model::haar) {
                other = exact_density(key.first, ring_for(key.second), model, 8);
                d = &other;
            }
            Rat s = d->undecided_mass;
            for (auto& [t, v] : d->densities) s += v;
            ++runs;
            if (s != 1 || d->undecided_mass != 0) {
                o.pass = false;
                o.detail += " n=" + std::to_string(key.first) + " q=" + std::to_string(key.second) + " " +
                            model_name(model);
            }
        }
    }
    // partial runs still sum to one
    for (int depth = 1; depth <= 3; ++depth) {
        auto r = exact_density(3, make_base_ring(2, 1), Model::haar, depth);
        Rat s = r.undecided_mass;
        for (auto& [t, v] : r.densities) s += v;
        ++runs;
        if (s != 1) o.pass = false, o.detail += " partial depth " + std::to_string(depth);
    }
    if (o.pass) o.detail = std::to_string(runs) + " runs sum to 1 exactly";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::ostringstream fits;
    for (int n = 2; n <= 3; ++n)
        for (auto& t : all_types(n)) {
            std::vector<std::pair<long, Rat>> pts;
            for (long q : kFitQ) pts.emplace_back(q, haar(n, q).densities.at(t));
            try {
                auto rf = fit_rational(pts, 6);
                bool pal = check_palindromy(rf);
                if (!pal) o.pass = false;
                fits << " " << t.str() << "=" << rf.str() << (pal ? "" : "[not palindromic]") << ";";
            } catch (const FitError& e) {
                o.pass = false;
                fits << " " << t.str() << ": " << e.what() << ";";
            }
        }
    o.detail = fits.str();
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto diag = read_json_file(fixture_path("diagonal"));
    auto tw = read_json_file(fixture_path("twisted"));
    for (long q : {2L, 3L, 5L, 7L}) {
        auto& r = haar(2, q);
        Rat eta = eta_sncd(sncd_from_json(diag, q)).evaluate_rational(1);
        Rat twisted = eta_twisted_sum(twist_from_json(tw, q)).evaluate_rational(1);
        // tau is an involution: the twisted sum pairs rho_tau with rho_tau^-1 = rho_tau
        bool ok = eta == 2 * proj(q, 2) * r.density("1,1") && twisted == 2 * proj(q, 2) * 2 * r.density("2");
        if (!ok) o.pass = false;
        o.detail += " q=" + std::to_string(q) + ": " + rat_to_string(eta) + ", " + rat_to_string(twisted) + ";";
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto fx = read_json_file(fixture_path("stretch"));
    for (long q : {2L, 3L, 5L}) {
        Rat eta = eta_sncd(sncd_from_json(fx, q)).evaluate_rational(1);
        bool ok = eta == 6 * proj(q, 3) * rho3_split(q) && eta == 6 * proj(q, 3) * haar(3, q).density("1,1,1");
        if (q == 2) ok = ok && eta == Rat(375, 31);
        if (!ok) o.pass = false;
        o.detail += " q=" + std::to_string(q) + ": " + rat_to_string(eta) + ";";
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    long fails = 0, pairs = 0;
    for (int n = 1; n <= 4; ++n) {
        PairPoset P(PermGroup::symmetric(n));
        const int S = static_cast<int>(P.size());
        const int N = static_cast<int>(P.group().order());
        pairs += S;
        for (int a = 0; a < S; ++a) {
            fails += !P.leq(a, a);
            fails += P.inverse(P.inverse(a)) != a;
            for (int b = 0; b < S; ++b) {
                bool ab = P.leq(a, b);
                fails += a != b && ab && P.leq(b, a);
                fails += ab != P.leq(P.inverse(a), P.inverse(b));
                for (int l = 0; l < N; ++l) fails += ab != P.leq(P.conjugate(a, l), P.conjugate(b, l));
                if (ab) {
                    fails += P.alpha(a, b) != P.alpha(P.inverse(a), P.inverse(b));
                    fails += P.beta(a, b) != P.beta(P.inverse(a), P.inverse(b));
                    for (int c = 0; c < S; ++c) fails += P.leq(b, c) && !P.leq(a, c);
                }
            }
        }
        auto g = incidence_gamma(P);
        auto gi = incidence_invert(P, g);
        fails += incidence_convolve(P, g, gi).values != incidence_delta(P).values;
        fails += incidence_convolve(P, gi, g).values != incidence_delta(P).values;

        auto sp = sigma_poset(P);
        std::vector<int> tau_idx;
        for (auto& s : sp.types) {
            fails += s_of_tau(tau_of_sigma(s)) != s;
            tau_idx.push_back(P.index_of(tau_of_sigma(s)));
        }
        for (int t = 0; t < S; ++t) {
            auto st = s_of_tau(P.pair(t));
            size_t si = std::find(sp.types.begin(), sp.types.end(), st) - sp.types.begin();
            if (si == sp.types.size()) {
                ++fails;
                continue;
            }
            for (size_t j = 0; j < sp.types.size(); ++j) {
                fails += P.lesssim(t, tau_idx[j]) != static_cast<bool>(sp.leq[si][j]);
                fails += P.alpha(t, tau_idx[j]) != P.alpha(tau_idx[si], tau_idx[j]);
            }
        }
    }
    o.pass = fails == 0;
    o.detail = std::to_string(pairs) + " pairs over S_1..S_4, " + std::to_string(fails) + " failures";
    return o;
}

Outcome criterion7() {
    Outcome o;
    long fails = 0, checks = 0;
    for (long q : {2L, 3L, 5L})
        for (int k = 1; k <= 10; ++k) {
            fails += !eta_delta(q, k).second.is_palindromic(1);
            ++checks;
        }
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= k; ++l) {
            if (k % l) continue;
            auto ind = gcd_indicator(3, k, l);
            fails += !ind.is_palindromic(0);
            for (long m = 1; m <= 24; ++m) {
                fails += ind.evaluate_rational(m) != Rat(std::gcd(m, static_cast<long>(k)) == l ? 1 : 0);
                ++checks;
            }
        }
    std::vector<Cyclo> lambda;
    TraceData d = trace_from_json(read_json_file(fixture_path("elliptic_trace")), &lambda);
    TraceData twisted = d;
    for (size_t j = 0; j < d.terms.size(); ++j) twisted.terms[j].coeff = d.terms[j].coeff * lambda[j];
    bool control = !point_count_form(twisted).is_palindromic(1);
    bool sym = symmetrized_trace_form(d, lambda).is_palindromic(1);
    o.pass = fails == 0 && control && sym;
    o.detail = std::to_string(checks) + " kernel/indicator checks, " + std::to_string(fails) +
               " failures; twisted trace palindromic: " + (control ? "no" : "yes") +
               ", symmetrized: " + (sym ? "yes" : "no");
    return o;
}

std::vector<long> random_squarefree(std::mt19937_64& rng, const BaseRing& R, int n, long range) {
    for (;;) {
        std::vector<long> c(n + 1);
        for (auto& x : c) x = static_cast<long>(rng() % (2 * range + 1)) - range;
        if (c[n] == 0) continue;
        if (oring::is_zero(discriminant(R, make_poly(R, c)))) continue;
        return c;
    }
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 rng(20240607);
    long agree = 0, total = 0;
    for (long p : {5L, 7L, 11L}) {
        auto R = make_base_ring(p, 1);
        for (int n = 2; n <= 4; ++n)
            for (int t = 0; t < 1000; ++t) {
                auto c = random_squarefree(rng, R, n, p * p * p);
                // a third of the draws pushed toward ramified shapes
                if (t % 3 == 0)
                    for (int i = 0; i < n; ++i) c[i] *= p;
                auto h = make_poly(R, c);
                if (oring::is_zero(discriminant(R, h))) {
                    --t;
                    continue;
                }
                ++total;
                if (classify(R, h) == tame_oracle_classify(R, h))
                    ++agree;
                else if (o.detail.size() < 200)
                    o.detail += " mismatch p=" + std::to_string(p) + " n=" + std::to_string(n) + ";";
            }
    }
    o.pass = agree == total;
    o.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree" + o.detail;
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (auto [n, p] : {std::pair{2, 3L}, std::pair{3, 5L}}) {
        auto& exact = haar(n, p);
        auto mc = monte_carlo(n, make_base_ring(p, 1), Model::haar, 100000, 314159, 10);
        o.detail += " (" + std::to_string(n) + "," + std::to_string(p) + ") undecided " +
                    std::to_string(mc.undecided) + ":";
        for (auto& [t, target] : exact.densities) {
            double x = target.get_d();
            auto it = mc.frequencies.find(t);
            double lo = it == mc.frequencies.end() ? 0 : it->second.lo;
            double hi = it == mc.frequencies.end() ? 0 : it->second.hi;
            bool in = lo <= x && x <= hi;
            if (!in) o.pass = false;
            char buf[96];
            std::snprintf(buf, sizeof buf, " %s %.4f in [%.4f,%.4f]%s", t.str().c_str(), x, lo, hi, in ? "" : " MISS");
            o.detail += buf;
        }
        o.detail += ";";
    }
    return o;
}

Outcome criterion10() {
    Outcome o;
    // cycle-type proportions in S_3
    std::map<std::string, Rat> cycle = {{"1,1,1", Rat(1, 6)}, {"1,2", Rat(1, 2)}, {"3", Rat(1, 3)}};
    const std::vector<long> qs = {5, 7, 11, 13};
    for (auto& [s, limit] : cycle) {
        std::vector<Rat> gap;
        for (long q : qs) gap.push_back(abs(haar(3, q).density(s) - limit));
        bool mono = true;
        for (size_t i = 1; i < gap.size(); ++i) mono = mono && gap[i] < gap[i - 1];
        bool bound = gap.back() <= Rat(2, 13);
        if (!mono || !bound) o.pass = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s gap@13=%.5f%s%s;", s.c_str(), gap.back().get_d(), mono ? "" : " not monotone",
                      bound ? "" : " above 2/q");
        o.detail += buf;
    }
    return o;
}

Outcome criterion11() {
    Outcome o;
    std::vector<long> qs = {2, 3, 4, 5, 7, 8, 9, 11, 13};
    for (auto& t : all_types(2)) {
        std::vector<std::pair<long, Rat>> a, b;
        for (long q : qs) {
            a.emplace_back(q, exact_density(2, ring_for(q), Model::monic, 8).densities.at(t));
            b.emplace_back(q, exact_density(2, ring_for(q), Model::eisenstein, 8).densities.at(t));
        }
        try {
            auto fa = fit_rational(a, 3), fb = fit_rational(b, 3);
            bool eq = fa.at_inverse() == fb;
            if (!eq) o.pass = false;
            o.detail += " " + t.str() + ": alpha=" + fa.str() + " beta=" + fb.str() + (eq ? " ok;" : " differ;");
        } catch (const FitError& e) {
            o.pass = false;
            o.detail += " " + t.str() + ": " + e.what() + ";";
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Check>> criteria = {
        {"exact densities match closed forms", criterion1},
        {"completeness", criterion2},
        {"fitted rational functions are palindromic", criterion3},
        {"diagonal and twisted fixtures match densities", criterion4},
        {"triple-diagonal fixture", criterion5},
        {"admissible-pair poset properties", criterion6},
        {"forms suite", criterion7},
        {"classifier agrees with the tame oracle", criterion8},
        {"Monte Carlo within 4 sigma", criterion9},
        {"large-q limit toward cycle proportions", criterion10},
        {"monic/eisenstein inversion symmetry", criterion11},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool report_only = i + 1 == criteria.size();
        if (!o.pass && !report_only) ++failed;
        char head[160];
        std::snprintf(head, sizeof head, "criterion %2zu %s%s - %s (%.1fs):", i + 1, o.pass ? "PASS" : "FAIL",
                      report_only ? " [report-only]" : "", criteria[i].first.c_str(), secs);
        std::cout << head << o.detail << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " blocking criteria failed" : "all blocking criteria passed")
              << std::endl;
    return failed ? 1 : 0;
}

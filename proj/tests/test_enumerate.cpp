#include <doctest.h>

#include <cstdlib>

#include "pcheb/enumerate.hpp"
#include "pcheb/forms.hpp"

using namespace pcheb;

namespace {

Rat sum_all(const DensityResult& r) {
    Rat s = r.undecided_mass;
    for (auto& [t, v] : r.densities) s += v;
    return s;
}

Rat rho2_inert(long q) { return Rat(q * q - q + 1, 2 * (q * q + q + 1)); }

Rat rho3_split(long q) {
    Int t(q);
    return Rat(t * t * t * t + 2 * t * t + 1) / Rat(6 * (t * t * t * t + t * t * t + t * t + t + 1));
}

Rat rho3_12(long q) {
    Int t(q);
    return Rat(t * t * t * t + 1) / Rat(2 * (t * t * t * t + t * t * t + t * t + t + 1));
}

}  // namespace

TEST_CASE("degree 2 and 3 densities") {
    auto r = exact_density(2, make_base_ring(3, 1), Model::haar, 8);
    REQUIRE(r.undecided_mass == 0);
    CHECK(r.density("1,1") == Rat(1, 2));
    CHECK(r.density("2") == Rat(7, 26));
    CHECK(r.density("1^2") == Rat(3, 13));
    CHECK(r.densities.size() == all_types(2).size());

    for (long q : {2L, 4L, 5L, 7L, 9L}) {
        auto R = q == 4 ? make_base_ring(2, 2) : q == 9 ? make_base_ring(3, 2) : make_base_ring(q, 1);
        auto d2 = exact_density(2, R, Model::haar, 8);
        REQUIRE(d2.undecided_mass == 0);
        CHECK(d2.density("1,1") == Rat(1, 2));
        CHECK(d2.density("2") == rho2_inert(q));
    }
    for (long p : {2L, 3L, 5L}) {
        auto d3 = exact_density(3, make_base_ring(p, 1), Model::haar, 8);
        REQUIRE(d3.undecided_mass == 0);
        CHECK(d3.density("1,1,1") == rho3_split(p));
        CHECK(d3.density("1,2") == rho3_12(p));
        CHECK(sum_all(d3) == 1);
    }
    CHECK_THROWS_AS(exact_density(2, make_base_ring(3, 1), Model::haar, 0), std::invalid_argument);
}

TEST_CASE("completeness and monotone refinement") {
    for (auto model : {Model::haar, Model::monic, Model::eisenstein}) {
        DensityResult prev;
        for (int depth = 1; depth <= 6; ++depth) {
            auto r = exact_density(2, make_base_ring(2, 1), model, depth);
            CHECK(sum_all(r) == 1);
            CHECK(r.undecided_mass >= 0);
            if (depth > 1) {
                CHECK(r.undecided_mass <= prev.undecided_mass);
                for (auto& [t, v] : r.densities) CHECK(v >= prev.densities.at(t));
            }
            prev = r;
        }
    }
    auto shallow = exact_density(3, make_base_ring(2, 1), Model::haar, 1);
    CHECK(sum_all(shallow) == 1);
}

TEST_CASE("models") {
    auto R = make_base_ring(3, 1);
    auto haar = exact_density(2, R, Model::haar, 8);
    auto proj = exact_density(2, R, Model::projective, 8);
    Rat pn = projective_space(3, 2).evaluate_rational(1);
    for (auto& [t, v] : haar.densities) CHECK(proj.densities.at(t) == v * pn);

    auto eis = exact_density(3, make_base_ring(5, 1), Model::eisenstein, 8);
    CHECK(eis.undecided_mass == 0);
    CHECK(sum_all(eis) == 1);
    auto monic = exact_density(2, R, Model::monic, 8);
    CHECK(monic.undecided_mass == 0);
    CHECK(sum_all(monic) == 1);

    CHECK(parse_model("haar") == Model::haar);
    CHECK(parse_model(model_name(Model::eisenstein)) == Model::eisenstein);
    CHECK_THROWS_AS(parse_model("uniform"), std::invalid_argument);
    CHECK_THROWS_AS(haar.density("1,2"), std::invalid_argument);
}

TEST_CASE("determinism across worker counts") {
    auto R = make_base_ring(3, 1);
    for (auto model : {Model::haar, Model::monic}) {
        EnumerateOptions one, four;
        one.threads = 1;
        four.threads = 4;
        auto a = exact_density(3, R, model, 3, one);
        auto b = exact_density(3, R, model, 3, four);
        CHECK(a.densities == b.densities);
        CHECK(a.undecided_mass == b.undecided_mass);
        CHECK(a.cells_processed == b.cells_processed);
    }
    auto m1 = monte_carlo(2, R, Model::haar, 5000, 42, 6, 1);
    auto m4 = monte_carlo(2, R, Model::haar, 5000, 42, 6, 4);
    CHECK(m1.samples == m4.samples);
    CHECK(m1.undecided == m4.undecided);
    for (auto& [t, e] : m1.frequencies) CHECK(m4.frequencies.at(t).count == e.count);
    CHECK(worker_count(3) == 3);
}

TEST_CASE("checkpoint round trip and resume") {
    auto R = make_base_ring(2, 1);
    Checkpoint ck;
    EnumerateOptions opt;
    opt.frontier_out = &ck;
    auto partial = exact_density(3, R, Model::haar, 2, opt);
    REQUIRE(partial.undecided_mass > 0);
    REQUIRE(!ck.frontier.empty());
    CHECK(ck.depth == 2);
    std::string text = write_checkpoint(ck);
    CHECK(read_checkpoint(text) == ck);
    CHECK(write_checkpoint(read_checkpoint(text)) == text);

    auto resumed = resume_density(read_checkpoint(text), 8);
    auto direct = exact_density(3, R, Model::haar, 8);
    CHECK(resumed.densities == direct.densities);
    CHECK(resumed.undecided_mass == direct.undecided_mass);

    Checkpoint wrong = ck;
    wrong.frontier.begin()->second.pop_back();
    if (wrong.frontier.begin()->second.empty()) wrong.frontier.erase(wrong.frontier.begin());
    CHECK_THROWS_AS(resume_density(wrong, 8), std::invalid_argument);
    CHECK_THROWS_AS(read_checkpoint("garbage"), std::invalid_argument);
    CHECK_THROWS_AS(read_checkpoint("3 2 1 haar 2\n1:1:zz\n"), std::invalid_argument);
}

TEST_CASE("Monte Carlo") {
    auto R = make_base_ring(3, 1);
    auto empty = monte_carlo(2, R, Model::haar, 0, 1, 6);
    CHECK(empty.frequencies.empty());
    CHECK(empty.undecided == 0);

    auto exact = exact_density(2, R, Model::haar, 8);
    auto mc = monte_carlo(2, R, Model::haar, 20000, 7, 8);
    CHECK(mc.samples == 20000);
    std::int64_t total = mc.undecided;
    for (auto& [t, e] : mc.frequencies) {
        total += e.count;
        double target = exact.densities.at(t).get_d();
        CHECK(e.lo <= target);
        CHECK(target <= e.hi);
    }
    CHECK(total == 20000);
    auto again = monte_carlo(2, R, Model::haar, 20000, 7, 8);
    for (auto& [t, e] : mc.frequencies) CHECK(again.frequencies.at(t).count == e.count);

    auto eis_exact = exact_density(2, R, Model::eisenstein, 8);
    auto eis = monte_carlo(2, R, Model::eisenstein, 20000, 3, 8);
    for (auto& [t, e] : eis.frequencies) {
        double target = eis_exact.densities.at(t).get_d();
        CHECK(e.lo <= target);
        CHECK(target <= e.hi);
    }
}

#include <doctest.h>

#include "pcheb/enumerate.hpp"
#include "pcheb/fit.hpp"

using namespace pcheb;

namespace {

IntPoly ip(std::initializer_list<long> c) {
    IntPoly p;
    for (long x : c) p.push_back(Int(x));
    return p;
}

std::vector<std::pair<long, Rat>> sample(const RationalFunction& r, std::initializer_list<long> qs) {
    std::vector<std::pair<long, Rat>> pts;
    for (long q : qs) pts.emplace_back(q, r(Rat(q)));
    return pts;
}

}  // namespace

TEST_CASE("constant data") {
    std::vector<std::pair<long, Rat>> pts = {{2, Rat(1, 2)}, {3, Rat(1, 2)}, {5, Rat(1, 2)}};
    auto c = fit_rational(pts, 0);
    CHECK(c == RationalFunction::make(ip({1}), ip({2})));
    CHECK(c.str() == "(1)/(2)");
    CHECK_THROWS_AS(fit_rational(pts, 1), std::invalid_argument);
    pts.emplace_back(7, Rat(1, 2));
    CHECK(fit_rational(pts, 1) == c);
    CHECK(check_palindromy(c));
}

TEST_CASE("inert quadratic density") {
    auto target = RationalFunction::make(ip({1, -1, 1}), ip({2, 2, 2}));
    std::vector<std::pair<long, Rat>> pts;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        auto r = exact_density(2, make_base_ring(p, 1), Model::haar, 8);
        REQUIRE(r.undecided_mass == 0);
        pts.emplace_back(p, r.density("2"));
    }
    auto fit = fit_rational(pts, 2);
    CHECK(fit == target);
    CHECK(check_palindromy(fit));
    CHECK(fit(Rat(3)) == Rat(7, 26));
}

TEST_CASE("split cubic density, higher degree bound") {
    auto target = RationalFunction::make(ip({1, 0, 2, 0, 1}), ip({6, 6, 6, 6, 6}));
    auto pts = sample(target, {2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(fit_rational(pts, 4) == target);
    auto more = sample(target, {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25});
    CHECK(fit_rational(more, 6) == target);
}

TEST_CASE("inconsistent data names the bad point") {
    auto target = RationalFunction::make(ip({1, -1, 1}), ip({2, 2, 2}));
    auto pts = sample(target, {2, 3, 5, 7, 11, 13, 17, 19});
    pts[3].second += Rat(1, 1000);
    try {
        (void)fit_rational(pts, 2);
        FAIL("expected a fit error");
    } catch (const FitError& e) {
        CHECK(e.q() == 7);
    }
    std::vector<std::pair<long, Rat>> dup = {{2, 1}, {2, 1}, {3, 1}, {5, 1}};
    CHECK_THROWS_AS(fit_rational(dup, 1), std::invalid_argument);
    // 2^t is not rational of low degree
    std::vector<std::pair<long, Rat>> expo;
    for (long q : {2L, 3L, 4L, 5L, 6L, 7L, 8L}) expo.emplace_back(q, Rat(Int(1) << q));
    CHECK_THROWS_AS(fit_rational(expo, 2), FitError);
}

TEST_CASE("palindromy") {
    CHECK(check_palindromy(RationalFunction::make(ip({1, -1, 1}), ip({2, 2, 2}))));
    CHECK_FALSE(check_palindromy(RationalFunction::make(ip({0, 1}), ip({1}))));
    CHECK(check_palindromy(RationalFunction::make(ip({1}), ip({2}))));
    CHECK(check_palindromy(RationalFunction::make(ip({0, 1}), ip({1, 1, 1}))));
    CHECK_FALSE(check_palindromy(RationalFunction::make(ip({1, 2}), ip({1, 1, 1}))));
    auto r = RationalFunction::make(ip({3, 0, 1}), ip({1, 5}));
    CHECK(r.at_inverse().at_inverse() == r);
    CHECK(r(Rat(2)) == Rat(7, 11));
    CHECK(RationalFunction::make(ip({2, 2}), ip({4, 4})) == RationalFunction::make(ip({1}), ip({2})));
    CHECK_THROWS_AS(RationalFunction::make(ip({1}), ip({})), std::invalid_argument);
}

#include "doctest.h"

#include <random>

#include "pcheb/factor.hpp"

using namespace pcheb;

namespace {

FactorizationType T(const std::string& s) { return FactorizationType::parse(s); }

FactorizationType cls(long p, const std::vector<long>& c) {
    auto R = make_base_ring(p, 1);
    return classify(R, make_poly(R, c));
}

std::vector<long> polymul(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<long> random_squarefree(std::mt19937_64& rng, const BaseRing& R, int n, long range, bool monic) {
    for (;;) {
        std::vector<long> c(n + 1);
        for (auto& x : c) x = static_cast<long>(rng() % (2 * range + 1)) - range;
        if (monic) c[n] = 1;
        if (c[n] == 0) continue;
        if (oring::is_zero(discriminant(R, make_poly(R, c)))) continue;
        return c;
    }
}

}  // namespace

TEST_CASE("type text form") {
    auto t = FactorizationType::from_parts({{2, 1}, {1, 1}, {1, 2}});
    CHECK(t.str() == "1^2,1,2");
    CHECK(T("1^2,1,2") == t);
    CHECK(T("2,1^2,1") == t);
    CHECK(t.degree() == 5);
    CHECK_FALSE(t.unramified());
    CHECK(T("1,1,2").unramified());
    CHECK_THROWS_AS(T(""), std::invalid_argument);
    CHECK_THROWS_AS(T("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(T("0"), std::invalid_argument);
    CHECK_THROWS_AS(T("1^x"), std::invalid_argument);
    CHECK_THROWS_AS(T("1,"), std::invalid_argument);
    CHECK(all_types(2).size() == 3);
    CHECK(all_types(3).size() == 5);
    for (int n = 1; n <= 5; ++n)
        for (auto& s : all_types(n)) CHECK(s.degree() == n);
}

TEST_CASE("classify examples") {
    for (long p : {3L, 5L, 7L, 11L}) {
        long c = 2;
        while (true) {
            bool square = false;
            for (long x = 1; x < p; ++x) square = square || (x * x - c) % p == 0;
            if (!square) break;
            ++c;
        }
        CHECK(cls(p, {-c, 0, 1}) == T("2"));
        CHECK(cls(p, {-p, 0, 1}) == T("1^2"));
    }
    CHECK(cls(2, {-2, 0, 1}) == T("1^2"));
    CHECK(cls(2, {-5, 0, 1}) == T("2"));
    CHECK(cls(2, {-3, 0, 1}) == T("1^2"));
    CHECK(cls(2, {1, 0, 1}) == T("1^2"));
    CHECK(cls(2, {-17, 0, 1}) == T("1,1"));
    CHECK(cls(3, {-2, 0, 0, 1}) == T("1^3"));
    CHECK(cls(3, {-10, 0, 0, 1}) == T("1^2,1"));
    auto h = polymul(polymul({-5, 0, 1}, {-1, 1}), {1, 1, 1});
    CHECK(cls(5, h) == T("1^2,1,2"));
    CHECK_THROWS_AS(cls(3, {1, 2, 1}), NotSquarefree);
}

TEST_CASE("tame oracle examples") {
    auto R5 = make_base_ring(5, 1);
    CHECK(tame_oracle_classify(R5, make_poly(R5, std::vector<long>{-7, 0, 0, 1})) == T("1,2"));
    auto R7 = make_base_ring(7, 1);
    CHECK(tame_oracle_classify(R7, make_poly(R7, std::vector<long>{-1, 0, 1})) == T("1,1"));
    CHECK(tame_oracle_classify(R7, make_poly(R7, std::vector<long>{-7, 0, 1})) == T("1^2"));
    auto R3 = make_base_ring(3, 1);
    CHECK_THROWS_AS(tame_oracle_classify(R3, make_poly(R3, std::vector<long>{-7, 0, 0, 1})), std::invalid_argument);
}

TEST_CASE("classify agrees with the tame oracle on random input") {
    std::mt19937_64 rng(2024);
    for (long p : {5L, 7L}) {
        auto R = make_base_ring(p, 1);
        for (int n = 2; n <= 4; ++n) {
            if (p <= n) continue;
            for (int t = 0; t < 40; ++t) {
                auto c = random_squarefree(rng, R, n, p * p * p, false);
                // bias toward ramified shapes
                if (t % 3 == 0)
                    for (int i = 0; i < n; ++i) c[i] *= p;
                auto h = make_poly(R, c);
                if (oring::is_zero(discriminant(R, h))) continue;
                CHECK_MESSAGE(classify(R, h) == tame_oracle_classify(R, h), "p=", p, " poly ", t);
            }
        }
    }
}

TEST_CASE("oracle over an unramified base") {
    auto R = make_base_ring(5, 2);
    std::mt19937_64 rng(77);
    for (int t = 0; t < 15; ++t) {
        std::vector<OElem> c(4);
        for (auto& e : c) e = OElem{Int(static_cast<long>(rng() % 250)), Int(static_cast<long>(rng() % 250))};
        if (t % 2) {
            c[0] = oring::scale(c[0], 5);
            c[1] = oring::scale(c[1], 5);
        }
        c[3] = OElem{1, 0};
        auto h = make_poly(R, c);
        if (oring::is_zero(discriminant(R, h))) continue;
        CHECK(classify(R, h) == tame_oracle_classify(R, h));
    }
}

TEST_CASE("base change to the quadratic unramified extension") {
    std::mt19937_64 rng(99);
    for (long p : {2L, 3L}) {
        auto R1 = make_base_ring(p, 1);
        auto R2 = make_base_ring(p, 2);
        for (int t = 0; t < 60; ++t) {
            int n = 2 + t % 3;
            auto c = random_squarefree(rng, R1, n, 40, t % 2 == 0);
            if (t % 4 == 1)
                for (int i = 0; i < n; ++i) c[i] *= p;
            auto down = classify(R1, make_poly(R1, c));
            std::vector<std::pair<int, int>> expect;
            for (auto [f, e] : down.parts) {
                if (f % 2 == 0) {
                    expect.push_back({f / 2, e});
                    expect.push_back({f / 2, e});
                } else {
                    expect.push_back({f, e});
                }
            }
            CHECK(classify(R2, make_poly(R2, c)) == FactorizationType::from_parts(expect));
        }
    }
}

TEST_CASE("classify invariances") {
    std::mt19937_64 rng(5);
    for (long p : {2L, 3L, 5L}) {
        auto R = make_base_ring(p, 1);
        for (int t = 0; t < 60; ++t) {
            int n = 2 + t % 3;
            auto c = random_squarefree(rng, R, n, 60, false);
            if (t % 3 == 0)
                for (int i = 0; i < n; ++i) c[i] *= p;
            auto base = classify(R, make_poly(R, c));
            CHECK(base.degree() == n);
            // unit scaling
            long u = 1 + p * (1 + static_cast<long>(rng() % 5));
            std::vector<long> cu(c);
            for (auto& x : cu) x *= u;
            CHECK(classify(R, make_poly(R, cu)) == base);
            // translation z -> z + a
            long a = static_cast<long>(rng() % 7) - 3;
            std::vector<long> sh(n + 1, 0), pw{1};
            for (int i = 0; i <= n; ++i) {
                for (size_t j = 0; j < pw.size(); ++j) sh[j] += c[i] * pw[j];
                pw = polymul(pw, {a, 1});
            }
            CHECK(classify(R, make_poly(R, sh)) == base);
            // reversal
            if (c[0] % p != 0) {
                std::vector<long> rv(c.rbegin(), c.rend());
                CHECK(classify(R, make_poly(R, rv)) == base);
            }
        }
    }
}

TEST_CASE("cell_decided examples") {
    auto R = make_base_ring(3, 1);
    Cell c1{2, CellModel::haar, {OElem{1}, OElem{0}, OElem{1}}, 1};
    auto d1 = cell_decided(R, c1);
    REQUIRE(d1.decided);
    CHECK(d1.type == T("2"));
    Cell c2{2, CellModel::haar, {OElem{0}, OElem{0}, OElem{1}}, 1};
    auto d2 = cell_decided(R, c2);
    CHECK_FALSE(d2.decided);
    CHECK(d2.needs_depth >= 2);
    Cell c3{2, CellModel::haar, {OElem{6}, OElem{0}, OElem{1}}, 2};
    auto d3 = cell_decided(R, c3);
    REQUIRE(d3.decided);
    CHECK(d3.type == T("1^2"));
}

TEST_CASE("decided cells are sound") {
    // every Decided cell: random lifts classify to the declared type
    std::mt19937_64 rng(31337);
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}, {5, 3}, {3, 4}}) {
        auto R = make_base_ring(p, 1);
        int checked = 0;
        for (int t = 0; t < 400 && checked < 25; ++t) {
            int k = 1 + static_cast<int>(rng() % 4);
            long pk = lpow(p, k);
            Cell c{n, CellModel::haar, {}, k};
            for (int i = 0; i <= n; ++i) {
                long r = static_cast<long>(rng() % pk);
                if (rng() % 2) r = (r * p) % pk;
                c.residues.push_back(OElem{Int(r)});
            }
            auto d = cell_decided(R, c);
            if (!d.decided) {
                CHECK(d.needs_depth > k);
                continue;
            }
            ++checked;
            for (int s = 0; s < 100; ++s) {
                std::vector<Int> lift;
                for (int i = 0; i <= n; ++i) lift.push_back(c.residues[i][0] + Int(pk) * Int(static_cast<long>(rng() % 1000)));
                auto h = make_poly(R, lift);
                if (lift[n] == 0 || oring::is_zero(discriminant(R, h))) continue;
                CHECK_MESSAGE(classify(R, h) == d.type, "p=", p, " n=", n, " depth=", k);
            }
        }
        CHECK(checked > 0);
    }
}

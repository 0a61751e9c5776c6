#include "doctest.h"

#include <numeric>
#include <random>

#include "pcheb/forms.hpp"

using namespace pcheb;

namespace {

Cyclo R(long a, long b = 1) {
    Rat r(a, b);
    r.canonicalize();
    return Cyclo(1, r);
}

Cyclo gauss(long re, long im) { return Cyclo::from_coeffs(4, {Rat(re), Rat(im)}); }

Rat delta_direct(long q, int k, long m) {
    Rat qm(ipow(Int(q), m));
    Rat num = qm - 1, den = Rat(ipow(Int(q), m * (k + 1))) - 1;
    return num / den;
}

// elliptic-curve style data at p = 5 with eigenvalues of an order-4 automorphism
TraceData elliptic_data(bool with_lambda_in_coeffs) {
    TraceData d;
    d.q = 5;
    d.dim = 1;
    Cyclo one = R(1), i = gauss(0, 1);
    d.terms = {{one, R(1), 0}, {with_lambda_in_coeffs ? i : one, gauss(1, 2), 1},
               {with_lambda_in_coeffs ? -i : one, gauss(1, -2), 1}, {one, R(5), 2}};
    d.pairing = {3, 2, 1, 0};
    return d;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
    Cyclo i = Cyclo::zeta(4, 1);
    CHECK(i * i == R(-1));
    CHECK(i.conj() == -i);
    CHECK(gauss(1, 2) * gauss(1, -2) == R(5));
    CHECK(gauss(1, 2).inv() * gauss(1, 2) == R(1));
    CHECK(Cyclo::zeta(6, 1).embed(12) == Cyclo::zeta(12, 2));
    Cyclo s;
    for (int a = 0; a < 5; ++a) s = s + Cyclo::zeta(5, a);
    CHECK(s.is_zero());
    CHECK(cyclotomic_poly(12) == QPoly{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)});
}

TEST_CASE("delta and eta kernels") {
    auto [d1, e1] = eta_delta(3, 1);
    CHECK(d1.evaluate_rational(1) == Rat(1, 4));
    CHECK(e1.evaluate_rational(1) == Rat(-3, 4));
    auto [d0, e0] = eta_delta(7, 0);
    CHECK(d0.evaluate_rational(3) == 1);
    CHECK(e0.is_zero());
    CHECK(eta_delta(5, 2).second.is_palindromic(1));
    CHECK(e1.is_palindromic(1));
    for (long q : {2L, 3L, 5L})
        for (int k = 0; k <= 6; ++k)
            for (long m = 1; m <= 8; ++m) {
                auto [d, e] = eta_delta(q, k, 1);
                CHECK(d.evaluate_rational(m) == delta_direct(q, k, m));
                CHECK(e.evaluate_rational(m) == delta_direct(q, k, m) - 1);
            }
    // base q^2
    auto [d2, e2] = eta_delta(3, 1, 2);
    CHECK(d2.evaluate_rational(1) == Rat(1, 10));
}

TEST_CASE("x^m alone is not weight-1") {
    auto x = PalindromicForm::rational(3, {R(0), R(1)}, {R(1)});
    CHECK_FALSE(x.is_palindromic(1));
    CHECK(x.is_palindromic(2));
    auto px = projective_space(3, 1);
    CHECK(px.is_palindromic(1));
    CHECK((eta_delta(3, 1).second * projective_space(3, 1)).is_palindromic(2));
}

TEST_CASE("gcd indicators") {
    auto even = gcd_indicator(3, 2, 2);
    for (long m = 1; m <= 10; ++m) CHECK(even.evaluate_rational(m) == (m % 2 == 0 ? 1 : 0));
    auto one = gcd_indicator(3, 1, 1);
    CHECK(one.evaluate_rational(5) == 1);
    CHECK(one.modulus() == 1);
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= k; ++l) {
            if (k % l) continue;
            auto f = gcd_indicator(2, k, l);
            CHECK(f.is_palindromic(0));
            for (long m = 1; m <= 24; ++m) CHECK(f.evaluate_rational(m) == (std::gcd(m, static_cast<long>(k)) == l));
        }
    CHECK_THROWS_AS(gcd_indicator(3, 6, 4), std::invalid_argument);
}

TEST_CASE("point count builtins") {
    auto s3 = spec_Fqk(7, 3);
    CHECK(s3.evaluate_rational(1) == 1);
    CHECK(s3.evaluate_rational(2) == 1);
    CHECK(s3.evaluate_rational(3) == 3);
    CHECK(s3.evaluate_rational(6) == 3);
    CHECK(s3.is_palindromic(0));
    CHECK(projective_space(3, 2).evaluate_rational(1) == 13);
    CHECK(product_P1(2, 3).evaluate_rational(2) == 125);
}

TEST_CASE("elliptic negative control and its symmetrization") {
    auto nu = point_count_form(elliptic_data(true));
    CHECK(nu.terms().size() == 3);
    CHECK(nu.evaluate_rational(1) == 1 + 5 + Rat(-4));  // i(1+2i) - i(1-2i) = -4
    CHECK_FALSE(nu.is_palindromic(1));

    auto d = elliptic_data(false);
    Cyclo i = Cyclo::zeta(4, 1);
    auto sym = symmetrized_trace_form(d, {R(1), i, -i, R(1)});
    CHECK(sym == PalindromicForm::rational(5, {R(2), R(2)}, {R(1)}));
    CHECK(sym.is_palindromic(1));

    auto triv = symmetrized_trace_form(d, {R(1), R(1), R(1), R(1)});
    CHECK(triv == point_count_form(d).scaled(R(2)));
    CHECK(point_count_form(d).is_palindromic(1));

    auto bad = d;
    bad.pairing = {3, 1, 2, 0};
    CHECK_THROWS_AS(point_count_form(bad), std::invalid_argument);
    CHECK_THROWS_AS(symmetrized_trace_form(d, {R(1), i, i, R(1)}), std::invalid_argument);

    TraceData empty;
    empty.q = 5;
    empty.dim = 1;
    auto z = symmetrized_trace_form(empty, {});
    CHECK(z.is_zero());
    CHECK(z.is_palindromic(0));
    CHECK(z.is_palindromic(3));
}

TEST_CASE("ring laws and weight additivity on random forms") {
    std::mt19937_64 rng(7);
    auto rnd = [&](long q) {
        int kind = static_cast<int>(rng() % 4);
        int k = static_cast<int>(rng() % 4), d = 1 + static_cast<int>(rng() % 2);
        switch (kind) {
            case 0: return eta_delta(q, k, d).second;
            case 1: return gcd_indicator(q, 2 + static_cast<int>(rng() % 3), 1).scaled(R(1 + rng() % 3));
            case 2: return projective_space(q, static_cast<int>(rng() % 3));
            default: return eta_delta(q, k, d).first;
        }
    };
    for (int it = 0; it < 30; ++it) {
        long q = it % 2 ? 3 : 2;
        auto a = rnd(q), b = rnd(q), c = rnd(q);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        for (long m = 1; m <= 4; ++m) CHECK((a * b + c).evaluate(m) == a.evaluate(m) * b.evaluate(m) + c.evaluate(m));
    }
    // weights add under products and survive sums
    auto e1 = eta_delta(3, 1).second, e2 = eta_delta(3, 2).second;
    auto p1 = projective_space(3, 1);
    CHECK((e1 * e2).is_palindromic(2));
    CHECK((e1 * e2 * p1).is_palindromic(3));
    CHECK((e1 + e2).is_palindromic(1));
    CHECK((e1 * gcd_indicator(3, 4, 2)).is_palindromic(1));
}

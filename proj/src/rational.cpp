#include "pcheb/rational.hpp"

#include <stdexcept>

namespace pcheb {

std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

long lpow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

int int_valuation(const Int& a, long p) {
    if (a == 0) return -1;
    Int t = a;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

namespace qpoly {

void trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly scale(const QPoly& a, const Rat& c) {
    if (c == 0) return {};
    QPoly r(a);
    for (auto& x : r) x *= c;
    return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rat(0));
    Rat lead_inv = 1 / b.back();
    while (r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        Rat c = r.back() * lead_inv;
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
        r.pop_back();
        trim(r);
    }
    trim(q);
}

QPoly mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    divmod(a, b, q, r);
    return r;
}

QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b, s0{Rat(1)}, s1, t0, t1{Rat(1)};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly s2 = sub(s0, mul(q, s1));
        QPoly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rat inv = 1 / r0.back();
    s = scale(s0, inv);
    t = scale(t0, inv);
    return scale(r0, inv);
}

Rat eval(const QPoly& a, const Rat& x) {
    Rat r = 0;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

}  // namespace qpoly
}  // namespace pcheb

#include "pcheb/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pcheb {

const QPoly& cyclotomic_poly(int C) {
    static std::map<int, QPoly> cache;
    static std::mutex mu;
    if (C < 1) throw std::invalid_argument("cyclotomic conductor must be >= 1");
    std::lock_guard<std::mutex> lk(mu);
    // divisors in increasing order, so every proper divisor is ready first
    for (int d = 1; d <= C; ++d) {
        if (C % d || cache.count(d)) continue;
        QPoly p(d + 1, Rat(0));
        p[0] = -1;
        p[d] = 1;
        for (int e = 1; e < d; ++e) {
            if (d % e) continue;
            QPoly quo, rem;
            qpoly::divmod(p, cache.at(e), quo, rem);
            p = quo;
        }
        cache[d] = p;
    }
    return cache.at(C);
}

int euler_phi(int C) {
    int r = C;
    for (long f : prime_factors(C)) r = r / f * (f - 1);
    return r;
}

Cyclo::Cyclo(int C, const Rat& r) : C_(C) {
    if (C < 1) throw std::invalid_argument("cyclotomic conductor must be >= 1");
    if (r != 0) c_ = {r};
}

Cyclo Cyclo::reduce(int C, QPoly p) {
    qpoly::trim(p);
    Cyclo out(C, Rat(0));
    out.c_ = qpoly::mod(p, cyclotomic_poly(C));
    qpoly::trim(out.c_);
    return out;
}

Cyclo Cyclo::zeta(int C, long j) {
    long e = ((j % C) + C) % C;
    QPoly p(e + 1, Rat(0));
    p[e] = 1;
    return reduce(C, p);
}

Cyclo Cyclo::from_coeffs(int C, std::vector<Rat> coeffs) { return reduce(C, std::move(coeffs)); }

std::vector<Rat> Cyclo::coeffs() const {
    std::vector<Rat> v(euler_phi(C_), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    return v;
}

Cyclo Cyclo::embed(int C2) const {
    if (C2 % C_ != 0) throw std::invalid_argument("cannot embed Q(zeta_" + std::to_string(C_) + ") into conductor " +
                                                  std::to_string(C2));
    int t = C2 / C_;
    QPoly p;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (p.size() < i * t + 1) p.resize(i * t + 1, Rat(0));
        p[i * t] = c_[i];
    }
    return reduce(C2, p);
}

Rat Cyclo::to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value " + str() + " is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

namespace {
int join(const Cyclo& a, const Cyclo& b) { return std::lcm(a.conductor(), b.conductor()); }
}  // namespace

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    int C = join(a, b);
    if (a.C_ != C || b.C_ != C) return a.embed(C) + b.embed(C);
    return Cyclo::reduce(C, qpoly::add(a.c_, b.c_));
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    int C = join(a, b);
    if (a.C_ != C || b.C_ != C) return a.embed(C) * b.embed(C);
    return Cyclo::reduce(C, qpoly::mul(a.c_, b.c_));
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    int C = join(a, b);
    if (a.C_ != C || b.C_ != C) return a.embed(C).c_ == b.embed(C).c_;
    return a.c_ == b.c_;
}

Cyclo Cyclo::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero in a cyclotomic field");
    QPoly s, t;
    QPoly g = qpoly::xgcd(c_, cyclotomic_poly(C_), s, t);
    if (qpoly::deg(g) != 0) throw std::logic_error("cyclotomic polynomial is reducible?");
    return reduce(C_, qpoly::scale(s, 1 / g[0]));
}

Cyclo Cyclo::conj() const {
    Cyclo r(C_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r = r + Cyclo::zeta(C_, -static_cast<long>(i)) * Cyclo(C_, c_[i]);
    return r;
}

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclo r(C_, Rat(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += c_[i].get_str();
        if (i) s += "*z" + std::to_string(C_) + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

}  // namespace pcheb

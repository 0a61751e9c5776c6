#include "pcheb/forms.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace pcheb {

namespace kpoly {

void trim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

KPoly add(const KPoly& a, const KPoly& b) {
    KPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] + b[i];
    }
    trim(r);
    return r;
}

KPoly scale(const KPoly& a, const Cyclo& c) {
    KPoly r;
    for (auto& x : a) r.push_back(x * c);
    trim(r);
    return r;
}

KPoly sub(const KPoly& a, const KPoly& b) { return add(a, scale(b, Cyclo(1, Rat(-1)))); }

KPoly mul(const KPoly& a, const KPoly& b) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
}

KPoly shift(const KPoly& a, int k) {
    if (a.empty() || k == 0) return a;
    KPoly r(k);
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

KPoly from_rational(const QPoly& a) {
    KPoly r;
    for (auto& c : a) r.push_back(Cyclo(1, c));
    trim(r);
    return r;
}

namespace {
KPoly rem(KPoly a, const KPoly& b) {
    Cyclo lead_inv = b.back().inv();
    while (!a.empty() && a.size() >= b.size()) {
        Cyclo c = a.back() * lead_inv;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = a[off + i] - c * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}
}  // namespace

KPoly gcd(KPoly a, KPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        KPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return scale(a, a.back().inv());
}

Cyclo eval(const KPoly& a, const Cyclo& x) {
    Cyclo r;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
    return r;
}

}  // namespace kpoly

namespace {

KPoly divide_exact(const KPoly& a, const KPoly& b) {
    KPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    KPoly r = a;
    Cyclo lead_inv = b.back().inv();
    while (!r.empty() && r.size() >= b.size()) {
        Cyclo c = r.back() * lead_inv;
        size_t off = r.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) r[off + i] = r[off + i] - c * b[i];
        r.pop_back();
        kpoly::trim(r);
    }
    if (!r.empty()) throw std::logic_error("inexact polynomial division");
    kpoly::trim(q);
    return q;
}

// x^a * p(1/x), a >= deg p
KPoly reversed(const KPoly& p, int a) {
    KPoly r(a + 1);
    for (size_t i = 0; i < p.size(); ++i) r[a - i] = p[i];
    kpoly::trim(r);
    return r;
}

ClassFunction add_cf(const ClassFunction& a, const ClassFunction& b) {
    if (a.den == b.den) return ClassFunction::make(kpoly::add(a.num, b.num), a.den);
    return ClassFunction::make(kpoly::add(kpoly::mul(a.num, b.den), kpoly::mul(b.num, a.den)),
                               kpoly::mul(a.den, b.den));
}

ClassFunction mul_cf(const ClassFunction& a, const ClassFunction& b) {
    return ClassFunction::make(kpoly::mul(a.num, b.num), kpoly::mul(a.den, b.den));
}

ClassFunction scale_cf(const ClassFunction& a, const Cyclo& c, int xpow) {
    KPoly num = kpoly::scale(a.num, c), den = a.den;
    if (xpow >= 0) num = kpoly::shift(num, xpow);
    else den = kpoly::shift(den, -xpow);
    return ClassFunction::make(num, den);
}

ClassFunction zero_cf() { return ClassFunction{{}, {Cyclo(1, Rat(1))}}; }

// integer s with r = q^s, if any
std::optional<int> q_log(const Rat& r, long q) {
    if (r <= 0) return std::nullopt;
    Int num = r.get_num(), den = r.get_den();
    int s = 0;
    while (num % q == 0) {
        num /= q;
        ++s;
    }
    while (den % q == 0) {
        den /= q;
        --s;
    }
    if (num != 1 || den != 1) return std::nullopt;
    return s;
}

struct Relation {
    int root_order;  // order of the root of unity eps
    Cyclo eps;
    int s;
};

// beta = gamma * eps * q^s with eps a root of unity
std::optional<Relation> relate(const Cyclo& beta, const Cyclo& gamma, long q) {
    Cyclo ratio = beta * gamma.inv();
    int C = std::lcm(2, ratio.conductor());
    for (int j = 0; j < C; ++j) {
        Cyclo eps = Cyclo::zeta(C, j);
        Cyclo t = ratio * eps.inv();
        if (!t.is_rational()) continue;
        if (auto s = q_log(t.to_rational(), q)) return Relation{C / std::gcd(j, C), eps, *s};
    }
    return std::nullopt;
}

}  // namespace

ClassFunction ClassFunction::make(KPoly num, KPoly den) {
    kpoly::trim(num);
    kpoly::trim(den);
    if (den.empty()) throw std::domain_error("class function with zero denominator");
    if (num.empty()) return zero_cf();
    KPoly g = kpoly::gcd(num, den);
    if (kpoly::deg(g) > 0) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
    }
    Cyclo li = den.back().inv();
    return ClassFunction{kpoly::scale(num, li), kpoly::scale(den, li)};
}

bool ClassFunction::operator==(const ClassFunction& o) const { return num == o.num && den == o.den; }

// ---------------------------------------------------------------- form

PalindromicForm::PalindromicForm(long q) : q_(q) {
    if (q < 2) throw std::invalid_argument("form base q must be >= 2");
    terms_.push_back(Term{Cyclo(1, Rat(1)), {zero_cf()}});
}

PalindromicForm PalindromicForm::constant(long q, const Cyclo& c) {
    PalindromicForm f(q);
    f.terms_[0].classes[0] = ClassFunction::make({c}, {Cyclo(1, Rat(1))});
    return f;
}

PalindromicForm PalindromicForm::rational(long q, const KPoly& num, const KPoly& den) {
    PalindromicForm f(q);
    f.terms_[0].classes[0] = ClassFunction::make(num, den);
    return f;
}

PalindromicForm PalindromicForm::per_class(long q, std::vector<ClassFunction> classes) {
    if (classes.empty()) throw std::invalid_argument("form needs at least one residue class");
    PalindromicForm f(q);
    f.M_ = static_cast<int>(classes.size());
    for (auto& c : classes) c = ClassFunction::make(c.num, c.den);
    f.terms_[0].classes = std::move(classes);
    f.normalize();
    return f;
}

PalindromicForm PalindromicForm::exponential(long q, const Cyclo& base, const Cyclo& coeff) {
    if (base.is_zero()) throw std::invalid_argument("exponential base must be nonzero");
    PalindromicForm f(q);
    f.add_term(base, {ClassFunction::make({coeff}, {Cyclo(1, Rat(1))})}, 1);
    f.normalize();
    return f;
}

int PalindromicForm::conductor() const {
    int C = 1;
    auto visit = [&](const KPoly& p) {
        for (auto& c : p) C = std::lcm(C, c.conductor());
    };
    for (auto& t : terms_) {
        C = std::lcm(C, t.base.conductor());
        for (auto& cf : t.classes) {
            visit(cf.num);
            visit(cf.den);
        }
    }
    return C;
}

bool PalindromicForm::is_zero() const {
    for (auto& t : terms_)
        for (auto& c : t.classes)
            if (!c.is_zero()) return false;
    return true;
}

void PalindromicForm::lift_modulus(int M2) {
    if (M2 % M_ != 0) throw std::logic_error("modulus lift must be a multiple");
    for (auto& t : terms_) {
        std::vector<ClassFunction> c(M2);
        for (int r = 0; r < M2; ++r) c[r] = t.classes[r % M_];
        t.classes = std::move(c);
    }
    M_ = M2;
}

void PalindromicForm::add_term(const Cyclo& base, std::vector<ClassFunction> classes, int M) {
    // fold into an equivalent existing base: base^m = gamma^m eps^m x^s
    for (auto& t : terms_) {
        auto rel = relate(base, t.base, q_);
        if (!rel) continue;
        int M2 = std::lcm(std::lcm(M_, M), rel->root_order);
        lift_modulus(M2);
        for (int r = 0; r < M2; ++r)
            t.classes[r] = add_cf(t.classes[r], scale_cf(classes[r % M], rel->eps.pow(r), rel->s));
        return;
    }
    int M2 = std::lcm(M_, M);
    lift_modulus(M2);
    Term t{base, {}};
    for (int r = 0; r < M2; ++r) t.classes.push_back(classes[r % M]);
    terms_.push_back(std::move(t));
}

void PalindromicForm::normalize() {
    // drop empty non-unit terms
    std::vector<Term> kept{terms_[0]};
    for (size_t i = 1; i < terms_.size(); ++i) {
        bool zero = true;
        for (auto& c : terms_[i].classes) zero = zero && c.is_zero();
        if (!zero) kept.push_back(terms_[i]);
    }
    terms_ = std::move(kept);
    // smallest period
    for (int d = 1; d < M_; ++d) {
        if (M_ % d) continue;
        bool ok = true;
        for (auto& t : terms_)
            for (int r = 0; r < M_ && ok; ++r) ok = t.classes[r] == t.classes[r % d];
        if (ok) {
            for (auto& t : terms_) t.classes.resize(d);
            M_ = d;
            break;
        }
    }
}

Cyclo PalindromicForm::evaluate(long m) const {
    if (m < 1) throw std::invalid_argument("forms are evaluated at m >= 1");
    Cyclo x(1, Rat(ipow(Int(q_), m)));
    Cyclo total;
    for (auto& t : terms_) {
        const ClassFunction& cf = t.classes[m % M_];
        if (cf.is_zero()) continue;
        Cyclo d = kpoly::eval(cf.den, x);
        if (d.is_zero()) throw std::domain_error("form has a pole at m=" + std::to_string(m));
        total = total + t.base.pow(m) * kpoly::eval(cf.num, x) * d.inv();
    }
    return total;
}

Rat PalindromicForm::evaluate_rational(long m) const { return evaluate(m).to_rational(); }

bool PalindromicForm::is_palindromic(int k) const {
    for (auto& t : terms_) {
        // beta^-m = conj(beta)^m / N^m, N = q^w
        Cyclo N = t.base * t.base.conj();
        if (!N.is_rational()) return false;
        auto w = q_log(N.to_rational(), q_);
        if (!w) return false;
        const Term* partner = nullptr;
        std::optional<Relation> rel;
        for (auto& u : terms_) {
            rel = relate(t.base.conj(), u.base, q_);
            if (rel) {
                partner = &u;
                break;
            }
        }
        if (!partner) return false;
        int M2 = std::lcm(M_, rel->root_order);
        int e = rel->s - *w + k;
        for (int r = 0; r < M2; ++r) {
            const ClassFunction& b = t.classes[((M2 - r) % M2) % M_];
            const ClassFunction& g = partner->classes[r % M_];
            int a = std::max(kpoly::deg(b.num), kpoly::deg(b.den));
            if (a < 0) a = 0;
            KPoly lhs = kpoly::mul(kpoly::scale(reversed(b.num, a), rel->eps.pow(r)), g.den);
            KPoly rhs = kpoly::mul(g.num, reversed(b.den, a));
            if (e >= 0) lhs = kpoly::shift(lhs, e);
            else rhs = kpoly::shift(rhs, -e);
            if (!(kpoly::sub(lhs, rhs)).empty()) return false;
        }
    }
    return true;
}

PalindromicForm PalindromicForm::scaled(const Cyclo& c) const {
    PalindromicForm r = *this;
    for (auto& t : r.terms_)
        for (auto& cf : t.classes) cf = scale_cf(cf, c, 0);
    r.normalize();
    return r;
}

PalindromicForm PalindromicForm::operator-() const { return scaled(Cyclo(1, Rat(-1))); }

PalindromicForm operator+(const PalindromicForm& a, const PalindromicForm& b) {
    if (a.q_ != b.q_) throw std::invalid_argument("forms over different q cannot be combined");
    PalindromicForm r = a;
    for (auto& t : b.terms_) r.add_term(t.base, t.classes, b.M_);
    r.normalize();
    return r;
}

PalindromicForm operator-(const PalindromicForm& a, const PalindromicForm& b) { return a + (-b); }

PalindromicForm operator*(const PalindromicForm& a, const PalindromicForm& b) {
    if (a.q_ != b.q_) throw std::invalid_argument("forms over different q cannot be combined");
    PalindromicForm r(a.q_);
    int M = std::lcm(a.M_, b.M_);
    for (auto& s : a.terms_)
        for (auto& t : b.terms_) {
            std::vector<ClassFunction> c(M);
            for (int i = 0; i < M; ++i) c[i] = mul_cf(s.classes[i % a.M_], t.classes[i % b.M_]);
            r.add_term(s.base * t.base, c, M);
        }
    r.normalize();
    return r;
}

bool PalindromicForm::operator==(const PalindromicForm& o) const { return q_ == o.q_ && (*this - o).is_zero(); }

std::string PalindromicForm::str() const {
    auto poly = [](const KPoly& p) {
        std::string s;
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
            if (p[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + p[i].str() + ")";
            if (i) s += "x" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s.empty() ? std::string("0") : s;
    };
    std::string out;
    for (auto& t : terms_) {
        for (int r = 0; r < M_; ++r) {
            if (t.classes[r].is_zero()) continue;
            if (!out.empty()) out += "; ";
            if (!(t.base == Cyclo(1, Rat(1)))) out += "[" + t.base.str() + "]^m ";
            if (M_ > 1) out += "m=" + std::to_string(r) + " mod " + std::to_string(M_) + ": ";
            out += "(" + poly(t.classes[r].num) + ")/(" + poly(t.classes[r].den) + ")";
        }
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- builders

std::pair<PalindromicForm, PalindromicForm> eta_delta(long q, int k, int d) {
    if (k < 0 || d < 1) throw std::invalid_argument("eta_delta needs k >= 0 and d >= 1");
    QPoly num(d + 1, Rat(0)), den(d * (k + 1) + 1, Rat(0));
    num[0] = -1;
    num[d] = 1;
    den[0] = -1;
    den[d * (k + 1)] = 1;
    PalindromicForm delta = PalindromicForm::rational(q, kpoly::from_rational(num), kpoly::from_rational(den));
    PalindromicForm eta = delta - PalindromicForm::constant(q, Cyclo(1, Rat(1)));
    return {delta, eta};
}

PalindromicForm divisibility_indicator(long q, int d) {
    if (d < 1) throw std::invalid_argument("divisor must be >= 1");
    // (1/d) sum_a zeta_d^{a m}
    PalindromicForm f(q);
    for (int a = 1; a <= d; ++a) f = f + PalindromicForm::exponential(q, Cyclo::zeta(d, a), Cyclo(1, Rat(1, d)));
    return f;
}

PalindromicForm gcd_indicator(long q, int k, int l) {
    if (k < 1 || l < 1 || k % l) throw std::invalid_argument("gcd_indicator needs l | k");
    // I(l | m) - (1 - prod_{1 < d, dl | k} (1 - I(dl | m)))
    PalindromicForm one = PalindromicForm::constant(q, Cyclo(1, Rat(1)));
    PalindromicForm prod = one;
    for (int d = 2; d * l <= k; ++d)
        if (k % (d * l) == 0) prod = prod * (one - divisibility_indicator(q, d * l));
    return divisibility_indicator(q, l) - (one - prod);
}

void validate_trace_data(const TraceData& d) {
    if (d.q < 2) throw std::invalid_argument("trace data needs q >= 2");
    if (d.pairing.size() != d.terms.size()) throw std::invalid_argument("pairing must list one partner per term");
    for (size_t j = 0; j < d.terms.size(); ++j) {
        int p = d.pairing[j];
        if (p < 0 || p >= static_cast<int>(d.terms.size()) || d.pairing[p] != static_cast<int>(j))
            throw std::invalid_argument("pairing is not an involution at term " + std::to_string(j));
        const auto& t = d.terms[j];
        if (t.base.is_zero()) throw std::invalid_argument("zero trace base at term " + std::to_string(j));
        Cyclo norm = t.base * t.base.conj();
        if (t.weight < 0 || !(norm == Cyclo(1, Rat(ipow(Int(d.q), t.weight)))))
            throw std::invalid_argument("term " + std::to_string(j) + " base does not have absolute value q^(w/2)");
        if (!(t.base * d.terms[p].base == Cyclo(1, Rat(ipow(Int(d.q), d.dim)))))
            throw std::invalid_argument("paired bases of terms " + std::to_string(j) + "," + std::to_string(p) +
                                        " do not multiply to q^dim");
    }
}

PalindromicForm point_count_form(const TraceData& d) {
    validate_trace_data(d);
    PalindromicForm f(d.q);
    for (auto& t : d.terms) f = f + PalindromicForm::exponential(d.q, t.base, t.coeff);
    return f;
}

PalindromicForm projective_space(long q, int n) {
    if (n < 0) throw std::invalid_argument("projective dimension must be >= 0");
    KPoly p(n + 1, Cyclo(1, Rat(1)));
    return PalindromicForm::rational(q, p, {Cyclo(1, Rat(1))});
}

PalindromicForm product_P1(long q, int n) {
    if (n < 0) throw std::invalid_argument("exponent must be >= 0");
    KPoly p{Cyclo(1, Rat(1))};
    for (int i = 0; i < n; ++i) p = kpoly::mul(p, {Cyclo(1, Rat(1)), Cyclo(1, Rat(1))});
    return PalindromicForm::rational(q, p, {Cyclo(1, Rat(1))});
}

PalindromicForm spec_Fqk(long q, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    // m -> gcd(m, k) = sum_{d | k} phi(d) I(d | m)
    PalindromicForm f(q);
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) f = f + divisibility_indicator(q, d).scaled(Cyclo(1, Rat(euler_phi(d))));
    return f;
}

PalindromicForm symmetrized_trace_form(const TraceData& d, const std::vector<Cyclo>& lambda) {
    validate_trace_data(d);
    if (lambda.size() != d.terms.size()) throw std::invalid_argument("one eigenvalue per trace term required");
    for (size_t j = 0; j < lambda.size(); ++j) {
        const Cyclo& l = lambda[j];
        int C = std::lcm(2, l.conductor());
        if (l.is_zero() || !(l.pow(C) == Cyclo(1, Rat(1))))
            throw std::invalid_argument("eigenvalue " + std::to_string(j) + " is not a root of unity");
        if (!(lambda[d.pairing[j]] == l.inv()))
            throw std::invalid_argument("eigenvalues of paired terms " + std::to_string(j) + "," +
                                        std::to_string(d.pairing[j]) + " are not mutually inverse");
    }
    PalindromicForm f(d.q);
    for (size_t j = 0; j < d.terms.size(); ++j)
        f = f + PalindromicForm::exponential(d.q, d.terms[j].base, d.terms[j].coeff * (lambda[j] + lambda[j].inv()));
    return f;
}

}  // namespace pcheb

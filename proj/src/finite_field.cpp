#include "pcheb/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcheb/rational.hpp"

namespace pcheb {

namespace {

// multiply digit vectors modulo the (monic) modulus over F_p
std::vector<long> mul_mod_poly(const std::vector<long>& a, const std::vector<long>& b,
                               const std::vector<long>& m, long p) {
    int f = static_cast<int>(m.size()) - 1;
    std::vector<long> r(2 * f, 0);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * f - 2; k >= f; --k) {
        long c = r[k];
        if (!c) continue;
        r[k] = 0;
        for (int j = 0; j < f; ++j) r[k - f + j] = ((r[k - f + j] - c * m[j]) % p + p) % p;
    }
    r.resize(f);
    return r;
}

}  // namespace

FiniteField::FiniteField(long p, const std::vector<long>& modulus)
    : p_(p), f_(static_cast<int>(modulus.size()) - 1), modulus_(modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (f_ < 1 || modulus.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
    q_ = lpow(p, f_);
    if (q_ > (1L << 22)) throw std::invalid_argument("finite field too large");
    for (auto& c : modulus_) c = ((c % p) + p) % p;
    log_.assign(q_, -1);
    exp_.assign(q_, 0);
    // search for a primitive element
    std::vector<long> pf = prime_factors(q_ - 1);
    for (int g = (f_ == 1 ? 1 : static_cast<int>(p)); g < q_; ++g) {
        std::vector<long> gd = digits(g);
        std::vector<long> cur(f_, 0);
        cur[0] = 1;
        std::vector<int> seq;
        seq.reserve(q_ - 1);
        bool ok = true;
        for (long k = 0; k < q_ - 1; ++k) {
            int v = from_digits(cur);
            if (k > 0 && v == 1) {
                ok = false;
                break;
            }
            seq.push_back(v);
            cur = mul_mod_poly(cur, gd, modulus_, p);
        }
        if (!ok || from_digits(cur) != 1) continue;
        for (long k = 0; k < q_ - 1; ++k) {
            exp_[k] = seq[k];
            log_[seq[k]] = static_cast<int>(k);
        }
        if (std::count(log_.begin() + 1, log_.end(), -1) != 0)
            throw std::invalid_argument("modulus is not irreducible");
        break;
    }
    if (log_[1] != 0) throw std::invalid_argument("modulus is not irreducible");
    if (q_ <= 1024) {
        add_table_.resize(q_ * q_);
        for (int a = 0; a < q_; ++a) {
            auto da = digits(a);
            for (int b = 0; b < q_; ++b) {
                auto db = digits(b);
                for (int i = 0; i < f_; ++i) db[i] = (da[i] + db[i]) % p_;
                add_table_[a * q_ + b] = from_digits(db);
            }
        }
    }
}

int FiniteField::add(int a, int b) const {
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    int r = 0, mulp = 1;
    for (int i = 0; i < f_; ++i) {
        r += static_cast<int>(((a % p_) + (b % p_)) % p_) * mulp;
        a /= static_cast<int>(p_);
        b /= static_cast<int>(p_);
        mulp *= static_cast<int>(p_);
    }
    return r;
}

int FiniteField::neg(int a) const {
    int r = 0, mulp = 1;
    for (int i = 0; i < f_; ++i) {
        int d = static_cast<int>(a % p_);
        r += static_cast<int>((p_ - d) % p_) * mulp;
        a /= static_cast<int>(p_);
        mulp *= static_cast<int>(p_);
    }
    return r;
}

int FiniteField::inv(int a) const {
    if (a == 0) throw std::invalid_argument("inverse of zero in finite field");
    int l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1 - l)];
}

int FiniteField::pow(int a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    long long m = q_ - 1;
    long long k = ((static_cast<long long>(log_[a]) * (e % m)) % m + m) % m;
    return exp_[k];
}

int FiniteField::from_prime(long c) const { return static_cast<int>(((c % p_) + p_) % p_); }

std::vector<long> FiniteField::digits(int a) const {
    std::vector<long> d(f_);
    for (int i = 0; i < f_; ++i) {
        d[i] = a % p_;
        a /= static_cast<int>(p_);
    }
    return d;
}

int FiniteField::from_digits(const std::vector<long>& d) const {
    long r = 0;
    for (int i = f_ - 1; i >= 0; --i) r = r * p_ + ((i < static_cast<int>(d.size()) ? d[i] : 0) % p_ + p_) % p_;
    return static_cast<int>(r);
}

std::vector<long> smallest_irreducible(long p, int f) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (f < 1) throw std::invalid_argument("degree must be >= 1");
    if (f == 1) return {0, 1};
    FiniteField Fp(p, {0, 1});
    long count = lpow(p, f);
    for (long code = 0; code < count; ++code) {
        // code's most significant base-p digit is the x^{f-1} coefficient
        FqPoly g(f + 1);
        long c = code;
        for (int i = 0; i < f; ++i) {
            g[i] = static_cast<int>(c % p);
            c /= p;
        }
        g[f] = 1;
        if (fq::is_irreducible(Fp, g)) {
            std::vector<long> out(g.begin(), g.end());
            return out;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

namespace fq {

void trim(FqPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }

FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

FqPoly scale(const FiniteField& F, const FqPoly& a, int c) {
    if (c == 0) return {};
    FqPoly r(a);
    for (auto& x : r) x = F.mul(x, c);
    return r;
}

void divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    int li = F.inv(b.back());
    while (r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        int c = F.mul(r.back(), li);
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) r[shift + j] = F.sub(r[shift + j], F.mul(c, b[j]));
        r.pop_back();
        trim(r);
    }
    trim(q);
}

FqPoly mod(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    divmod(F, a, b, q, r);
    return r;
}

FqPoly div(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    divmod(F, a, b, q, r);
    return q;
}

FqPoly monic(const FiniteField& F, const FqPoly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

FqPoly gcd(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        FqPoly r = mod(F, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(F, x);
}

FqPoly derivative(const FiniteField& F, const FqPoly& a) {
    if (a.size() <= 1) return {};
    FqPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_prime(static_cast<long>(i)));
    trim(r);
    return r;
}

FqPoly powmod(const FiniteField& F, const FqPoly& a, long long e, const FqPoly& m) {
    FqPoly result{1};
    result = mod(F, result, m);
    FqPoly base = mod(F, a, m);
    while (e > 0) {
        if (e & 1) result = mod(F, mul(F, result, base), m);
        e >>= 1;
        if (e) base = mod(F, mul(F, base, base), m);
    }
    return result;
}

int eval(const FiniteField& F, const FqPoly& a, int x) {
    int r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

bool is_squarefree(const FiniteField& F, const FqPoly& a) {
    FqPoly d = derivative(F, a);
    if (d.empty()) return deg(a) <= 0;
    return deg(gcd(F, a, d)) == 0;
}

namespace {

// c(x) = s(x^p) -> s^{1/p} coefficientwise
FqPoly pth_root(const FiniteField& F, const FqPoly& c) {
    long p = F.p();
    long long root_exp = F.size() / p;  // a^{Q/p} is the p-th root
    FqPoly r;
    for (size_t i = 0; i < c.size(); i += p) r.push_back(F.pow(c[i], root_exp));
    trim(r);
    return r;
}

void sqf_rec(const FiniteField& F, const FqPoly& a, int mult, std::vector<std::pair<FqPoly, int>>& out) {
    FqPoly f = monic(F, a);
    if (deg(f) <= 0) return;
    FqPoly c = gcd(F, f, derivative(F, f));
    FqPoly w = div(F, f, c);
    int i = 1;
    while (deg(w) > 0) {
        FqPoly y = gcd(F, w, c);
        FqPoly fac = div(F, w, y);
        if (deg(fac) > 0) out.push_back({fac, i * mult});
        ++i;
        w = y;
        c = div(F, c, y);
    }
    if (deg(c) > 0) sqf_rec(F, pth_root(F, c), mult * static_cast<int>(F.p()), out);
}

}  // namespace

std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FiniteField& F, const FqPoly& a) {
    std::vector<std::pair<FqPoly, int>> out;
    sqf_rec(F, a, 1, out);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    // merge equal multiplicities (possible after p-th root recursion)
    std::vector<std::pair<FqPoly, int>> merged;
    for (auto& pr : out) {
        if (!merged.empty() && merged.back().second == pr.second)
            merged.back().first = mul(F, merged.back().first, pr.first);
        else
            merged.push_back(pr);
    }
    return merged;
}

std::vector<std::pair<int, FqPoly>> ddf(const FiniteField& F, const FqPoly& a) {
    std::vector<std::pair<int, FqPoly>> out;
    FqPoly g = monic(F, a);
    FqPoly x{0, 1};
    FqPoly h = mod(F, x, g);
    int i = 1;
    while (deg(g) >= 2 * i) {
        h = powmod(F, h, F.size(), g);
        FqPoly d = gcd(F, g, sub(F, h, x));
        if (deg(d) > 0) {
            out.push_back({i, d});
            g = div(F, g, d);
            h = mod(F, h, g);
        }
        ++i;
    }
    if (deg(g) > 0) out.push_back({deg(g), g});
    return out;
}

std::vector<int> ddf_degrees(const FiniteField& F, const FqPoly& a) {
    std::vector<int> out;
    for (auto& [d, g] : ddf(F, a))
        for (int k = 0; k < deg(g) / d; ++k) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> factor_pattern(const FiniteField& F, const FqPoly& a) {
    std::vector<std::pair<int, int>> out;
    for (auto& [g, e] : squarefree_decomposition(F, a))
        for (int d : ddf_degrees(F, g)) out.push_back({d, e});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> roots(const FiniteField& F, const FqPoly& a) {
    std::vector<int> out;
    for (int x = 0; x < F.size(); ++x)
        if (eval(F, a, x) == 0) out.push_back(x);
    return out;
}

bool is_irreducible(const FiniteField& F, const FqPoly& a) {
    int n = deg(a);
    if (n <= 0) return false;
    if (n == 1) return true;
    FqPoly g = monic(F, a);
    FqPoly x{0, 1};
    FqPoly h = mod(F, x, g);
    for (int i = 1; i <= n / 2; ++i) {
        h = powmod(F, h, F.size(), g);
        if (deg(gcd(F, g, sub(F, h, x))) > 0) return false;
    }
    return true;
}

}  // namespace fq
}  // namespace pcheb

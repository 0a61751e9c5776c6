#include "pcheb/padic.hpp"

#include <algorithm>

#include "pcheb/linalg.hpp"

namespace pcheb {

BaseRing make_base_ring(long p, int f) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
    if (f < 1) throw std::invalid_argument("f must be >= 1");
    BaseRing R;
    R.p = p;
    R.f = f;
    R.modulus = smallest_irreducible(p, f);
    R.residue = std::make_shared<FiniteField>(p, R.modulus);
    return R;
}

namespace oring {

OElem zero(const BaseRing& R) { return OElem(R.f, Int(0)); }

OElem from_int(const BaseRing& R, const Int& c) {
    OElem r = zero(R);
    r[0] = c;
    return r;
}

bool is_zero(const OElem& a) {
    for (auto& c : a)
        if (c != 0) return false;
    return true;
}

OElem add(const OElem& a, const OElem& b) {
    OElem r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

OElem sub(const OElem& a, const OElem& b) {
    OElem r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

OElem neg(const OElem& a) {
    OElem r(a);
    for (auto& c : r) c = -c;
    return r;
}

OElem mul(const BaseRing& R, const OElem& a, const OElem& b) {
    int f = R.f;
    if (f == 1) return {a[0] * b[0]};
    std::vector<Int> r(2 * f - 1, Int(0));
    for (int i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f; ++j) r[i + j] += a[i] * b[j];
    }
    for (int k = 2 * f - 2; k >= f; --k) {
        if (r[k] == 0) continue;
        Int c = r[k];
        r[k] = 0;
        for (int j = 0; j < f; ++j) r[k - f + j] -= c * R.modulus[j];
    }
    r.resize(f);
    return r;
}

OElem scale(const OElem& a, const Int& c) {
    OElem r(a);
    for (auto& x : r) x *= c;
    return r;
}

OElem reduce(const OElem& a, const Int& modulus) {
    OElem r(a);
    for (auto& x : r) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    }
    return r;
}

OElem pow(const BaseRing& R, const OElem& a, unsigned e) {
    OElem r = from_int(R, 1), b = a;
    while (e) {
        if (e & 1) r = mul(R, r, b);
        e >>= 1;
        if (e) b = mul(R, b, b);
    }
    return r;
}

int valuation(const BaseRing& R, const OElem& a) {
    int v = -1;
    for (auto& c : a) {
        if (c == 0) continue;
        int w = int_valuation(c, R.p);
        if (v < 0 || w < v) v = w;
    }
    return v;
}

OElem divide_p(const BaseRing& R, const OElem& a, int k) {
    Int pk = ipow(Int(R.p), k);
    OElem r(a);
    for (auto& x : r) {
        if (!mpz_divisible_p(x.get_mpz_t(), pk.get_mpz_t()))
            throw std::logic_error("divide_p: not divisible");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    }
    return r;
}

int residue(const BaseRing& R, const OElem& a) {
    std::vector<long> d(R.f);
    Int t;
    for (int i = 0; i < R.f; ++i) {
        mpz_fdiv_r_ui(t.get_mpz_t(), a[i].get_mpz_t(), R.p);
        d[i] = t.get_si();
    }
    return R.field().from_digits(d);
}

OElem lift(const BaseRing& R, int x) {
    auto d = R.field().digits(x);
    OElem r(R.f);
    for (int i = 0; i < R.f; ++i) r[i] = d[i];
    return r;
}

OElem inverse_unit(const BaseRing& R, const OElem& a, int K) {
    int r = residue(R, a);
    if (r == 0) throw std::invalid_argument("inverse_unit: not a unit");
    OElem x = lift(R, R.field().inv(r));
    Int pK = ipow(Int(R.p), K);
    int prec = 1;
    OElem two = from_int(R, 2);
    while (prec < K) {
        x = reduce(mul(R, x, sub(two, mul(R, a, x))), pK);
        prec *= 2;
    }
    return reduce(x, pK);
}

}  // namespace oring

PadicElem make_elem(const BaseRing& R, const OElem& rep, int prec) {
    PadicElem e;
    e.prec = prec;
    e.rep = rep;
    e.rep.resize(R.f, Int(0));
    if (prec != kExact) e.rep = oring::reduce(e.rep, ipow(Int(R.p), prec));
    return e;
}

PadicElem make_elem(const BaseRing& R, const Int& c, int prec) { return make_elem(R, oring::from_int(R, c), prec); }

Valuation valuation(const BaseRing& R, const PadicElem& x) {
    int v = oring::valuation(R, x.rep);
    if (v < 0 || (x.prec != kExact && v >= x.prec)) return {x.prec, true};
    return {v, false};
}

namespace {

int vlow(const BaseRing& R, const PadicElem& x) {
    Valuation v = valuation(R, x);
    return v.value;
}

int sat_add(int a, int b) {
    if (a == kExact || b == kExact) return kExact;
    long s = static_cast<long>(a) + b;
    return s >= kExact ? kExact : static_cast<int>(s);
}

}  // namespace

PadicElem padd(const BaseRing& R, const PadicElem& a, const PadicElem& b) {
    return make_elem(R, oring::add(a.rep, b.rep), std::min(a.prec, b.prec));
}

PadicElem psub(const BaseRing& R, const PadicElem& a, const PadicElem& b) {
    return make_elem(R, oring::sub(a.rep, b.rep), std::min(a.prec, b.prec));
}

PadicElem pmul(const BaseRing& R, const PadicElem& a, const PadicElem& b) {
    int prec = std::min(sat_add(a.prec, vlow(R, b)), sat_add(b.prec, vlow(R, a)));
    return make_elem(R, oring::mul(R, a.rep, b.rep), prec);
}

int PadicPoly::precision() const {
    int k = kExact;
    for (auto& c : coeffs) k = std::min(k, c.prec);
    return k;
}

PadicPoly make_poly(const BaseRing& R, const std::vector<Int>& coeffs, int prec) {
    PadicPoly h;
    for (auto& c : coeffs) h.coeffs.push_back(make_elem(R, c, prec));
    return h;
}

PadicPoly make_poly(const BaseRing& R, const std::vector<long>& coeffs, int prec) {
    PadicPoly h;
    for (long c : coeffs) h.coeffs.push_back(make_elem(R, Int(c), prec));
    return h;
}

PadicPoly make_poly(const BaseRing& R, const std::vector<OElem>& coeffs, int prec) {
    PadicPoly h;
    for (auto& c : coeffs) h.coeffs.push_back(make_elem(R, c, prec));
    return h;
}

std::vector<OElem> representatives(const PadicPoly& h) {
    std::vector<OElem> out;
    for (auto& c : h.coeffs) out.push_back(c.rep);
    return out;
}

PadicPoly reverse(const PadicPoly& h) {
    PadicPoly r = h;
    std::reverse(r.coeffs.begin(), r.coeffs.end());
    return r;
}

PadicPoly shift(const BaseRing& R, const PadicPoly& h, const OElem& a) {
    // repeated synthetic division keeps precision bookkeeping per coefficient
    PadicPoly r = h;
    int n = h.degree();
    PadicElem ae = make_elem(R, a, kExact);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) r.coeffs[j] = padd(R, r.coeffs[j], pmul(R, ae, r.coeffs[j + 1]));
    return r;
}

namespace {

class NumberField {
public:
    explicit NumberField(const BaseRing& R) {
        for (long c : R.modulus) mod_.push_back(Rat(c));
    }
    QPoly reduce(const QPoly& a) const { return qpoly::mod(a, mod_); }
    QPoly mul(const QPoly& a, const QPoly& b) const { return reduce(qpoly::mul(a, b)); }
    QPoly inv(const QPoly& a) const {
        QPoly s, t;
        QPoly g = qpoly::xgcd(a, mod_, s, t);
        if (qpoly::deg(g) != 0) throw std::logic_error("number field inverse failed");
        return reduce(s);
    }

private:
    QPoly mod_;
};

QPoly to_q(const OElem& a) {
    QPoly r;
    for (auto& c : a) r.push_back(Rat(c));
    qpoly::trim(r);
    return r;
}

}  // namespace

OElem discriminant(const BaseRing& R, const std::vector<OElem>& h) {
    int n = static_cast<int>(h.size()) - 1;
    if (n < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (oring::is_zero(h[n])) throw std::invalid_argument("discriminant: leading coefficient is zero");
    std::vector<OElem> d(n);
    for (int i = 1; i <= n; ++i) d[i - 1] = oring::scale(h[i], Int(i));
    int size = 2 * n - 1;
    Int sign = ((n * (n - 1) / 2) % 2) ? -1 : 1;
    if (R.f == 1) {
        QMatrix S(size, std::vector<Rat>(size, Rat(0)));
        for (int r = 0; r < n - 1; ++r)
            for (int i = 0; i <= n; ++i) S[r][r + i] = Rat(h[n - i][0]);
        for (int r = 0; r < n; ++r)
            for (int i = 0; i <= n - 1; ++i) S[n - 1 + r][r + i] = Rat(d[n - 1 - i][0]);
        Rat res = qmat::det(S);
        Rat disc = res * Rat(sign) / Rat(h[n][0]);
        if (disc.get_den() != 1) throw std::logic_error("discriminant not integral");
        return {disc.get_num()};
    }
    NumberField K(R);
    std::vector<std::vector<QPoly>> S(size, std::vector<QPoly>(size));
    for (int r = 0; r < n - 1; ++r)
        for (int i = 0; i <= n; ++i) S[r][r + i] = to_q(h[n - i]);
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= n - 1; ++i) S[n - 1 + r][r + i] = to_q(d[n - 1 - i]);
    QPoly det{Rat(sign)};
    for (int c = 0; c < size; ++c) {
        int piv = -1;
        for (int i = c; i < size; ++i)
            if (!S[i][c].empty()) {
                piv = i;
                break;
            }
        if (piv < 0) return oring::zero(R);
        if (piv != c) {
            std::swap(S[piv], S[c]);
            det = qpoly::scale(det, Rat(-1));
        }
        det = K.mul(det, S[c][c]);
        QPoly iv = K.inv(S[c][c]);
        for (int i = c + 1; i < size; ++i) {
            if (S[i][c].empty()) continue;
            QPoly fct = K.mul(S[i][c], iv);
            for (int j = c; j < size; ++j) S[i][j] = K.reduce(qpoly::sub(S[i][j], qpoly::mul(fct, S[c][j])));
        }
    }
    det = K.mul(det, K.inv(to_q(h[n])));
    OElem out = oring::zero(R);
    for (size_t i = 0; i < det.size(); ++i) {
        if (det[i].get_den() != 1) throw std::logic_error("discriminant not integral");
        out[i] = det[i].get_num();
    }
    return out;
}

OElem discriminant(const BaseRing& R, const PadicPoly& h) {
    for (auto& c : h.coeffs)
        if (c.prec != kExact) throw std::invalid_argument("discriminant needs exact coefficients");
    return discriminant(R, representatives(h));
}

NewtonPolygon newton_polygon(const BaseRing& R, const PadicPoly& h) {
    int n = h.degree();
    if (n < 1) throw std::invalid_argument("newton_polygon: degree must be >= 1");
    std::vector<std::pair<int, int>> pts;
    std::vector<std::pair<int, int>> uncertain;  // (index, lower bound)
    for (int i = 0; i <= n; ++i) {
        Valuation v = valuation(R, h.coeffs[i]);
        if (v.determined())
            pts.push_back({i, v.value});
        else if (v.value != kExact)
            uncertain.push_back({i, v.value});
        else if (i == 0 || i == n)
            throw std::invalid_argument("newton_polygon: zero end coefficient at index " + std::to_string(i));
    }
    for (auto& [i, k] : uncertain)
        if (i == 0 || i == n)
            throw PrecisionNeeded(i, "precision needed: coefficient " + std::to_string(i) +
                                         " is zero to precision " + std::to_string(k));
    std::vector<std::pair<int, int>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                         static_cast<long>(b.second - a.second) * (pt.first - a.first);
            if (cross < 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    for (auto& [i, k] : uncertain) {
        size_t s = 0;
        while (s + 1 < hull.size() && hull[s + 1].first < i) ++s;
        auto a = hull[s], b = hull[s + 1];
        Rat step(b.second - a.second, b.first - a.first);
        step.canonicalize();
        Rat height = Rat(a.second) + step * (i - a.first);
        if (Rat(k) <= height)
            throw PrecisionNeeded(i, "precision needed: coefficient " + std::to_string(i) + " known only to be >= " +
                                         std::to_string(k) + ", hull height " + rat_to_string(height));
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        Rat slope(hull[s].second - hull[s + 1].second, hull[s + 1].first - hull[s].first);
        slope.canonicalize();
        int len = hull[s + 1].first - hull[s].first;
        if (!np.segments.empty() && np.segments.back().slope == slope)
            np.segments.back().length += len;
        else
            np.segments.push_back({slope, len});
    }
    return np;
}

FqPoly reduce_mod_p(const BaseRing& R, const PadicPoly& h) {
    FqPoly r;
    for (auto& c : h.coeffs) r.push_back(oring::residue(R, c.rep));
    fq::trim(r);
    return r;
}

namespace {

using OPoly = std::vector<OElem>;

struct OPolyRing {
    const BaseRing& R;
    Int mod;

    void trim(OPoly& a) const {
        while (!a.empty() && oring::is_zero(a.back())) a.pop_back();
    }
    OPoly red(OPoly a) const {
        for (auto& c : a) c = oring::reduce(c, mod);
        trim(a);
        return a;
    }
    OPoly add(const OPoly& a, const OPoly& b) const {
        OPoly r(std::max(a.size(), b.size()), oring::zero(R));
        for (size_t i = 0; i < a.size(); ++i) r[i] = oring::add(r[i], a[i]);
        for (size_t i = 0; i < b.size(); ++i) r[i] = oring::add(r[i], b[i]);
        return red(r);
    }
    OPoly sub(const OPoly& a, const OPoly& b) const {
        OPoly r(std::max(a.size(), b.size()), oring::zero(R));
        for (size_t i = 0; i < a.size(); ++i) r[i] = oring::add(r[i], a[i]);
        for (size_t i = 0; i < b.size(); ++i) r[i] = oring::sub(r[i], b[i]);
        return red(r);
    }
    OPoly mul(const OPoly& a, const OPoly& b) const {
        if (a.empty() || b.empty()) return {};
        OPoly r(a.size() + b.size() - 1, oring::zero(R));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = oring::add(r[i + j], oring::mul(R, a[i], b[j]));
        return red(r);
    }
    // b monic
    void divmod(const OPoly& a, const OPoly& b, OPoly& q, OPoly& r) const {
        r = red(a);
        q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, oring::zero(R));
        while (r.size() >= b.size()) {
            size_t shift = r.size() - b.size();
            OElem c = r.back();
            q[shift] = c;
            for (size_t j = 0; j < b.size(); ++j) r[shift + j] = oring::sub(r[shift + j], oring::mul(R, c, b[j]));
            r = red(r);
            // the leading term cancels exactly since b is monic
        }
        q = red(q);
    }
};

OPoly lift_fq(const BaseRing& R, const FqPoly& a) {
    OPoly r;
    for (int c : a) r.push_back(oring::lift(R, c));
    return r;
}

// s a + t b = 1 over F_Q
void fq_bezout(const FiniteField& F, const FqPoly& a, const FqPoly& b, FqPoly& s, FqPoly& t) {
    FqPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        FqPoly q, r;
        fq::divmod(F, r0, r1, q, r);
        FqPoly s2 = fq::sub(F, s0, fq::mul(F, q, s1));
        FqPoly t2 = fq::sub(F, t0, fq::mul(F, q, t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (fq::deg(r0) != 0) throw std::invalid_argument("hensel_split: factors are not coprime mod p");
    int iv = F.inv(r0[0]);
    s = fq::scale(F, s0, iv);
    t = fq::scale(F, t0, iv);
}

// f = g h mod p^K with h monic; returns lifted (g, h)
std::pair<OPoly, OPoly> lift_pair(const BaseRing& R, const OPoly& f, const FqPoly& gbar, const FqPoly& hbar, int K) {
    const FiniteField& F = R.field();
    FqPoly sb, tb;
    fq_bezout(F, gbar, hbar, sb, tb);
    OPoly g = lift_fq(R, gbar), h = lift_fq(R, hbar), s = lift_fq(R, sb), t = lift_fq(R, tb);
    int dg = fq::deg(gbar), dh = fq::deg(hbar);
    int prec = 1;
    while (prec < K) {
        int next = std::min(2 * prec, K);
        OPolyRing P{R, ipow(Int(R.p), next)};
        OPoly e = P.sub(f, P.mul(g, h));
        OPoly q, r;
        P.divmod(P.mul(s, e), h, q, r);
        OPoly g2 = P.add(g, P.add(P.mul(t, e), P.mul(q, g)));
        OPoly h2 = P.add(h, r);
        g2.resize(dg + 1, oring::zero(R));
        h2.resize(dh + 1, oring::zero(R));
        if (next < K) {
            OPoly one{oring::from_int(R, 1)};
            OPoly b = P.sub(P.add(P.mul(s, g2), P.mul(t, h2)), one);
            OPoly c, d;
            P.divmod(P.mul(s, b), h2, c, d);
            s = P.sub(s, d);
            t = P.sub(t, P.add(P.mul(t, b), P.mul(c, g2)));
        }
        g = g2;
        h = h2;
        prec = next;
    }
    return {g, h};
}

}  // namespace

std::vector<PadicPoly> hensel_split(const BaseRing& R, const PadicPoly& h, const std::vector<FqPoly>& bar_factors,
                                    int K) {
    const FiniteField& F = R.field();
    if (K < 1) throw std::invalid_argument("hensel_split: K must be >= 1");
    if (h.precision() < K)
        throw std::invalid_argument("hensel_split: precision exhausted (input known to p^" +
                                    std::to_string(h.precision()) + ", requested p^" + std::to_string(K) + ")");
    int n = h.degree();
    Int pK = ipow(Int(R.p), K);
    if (!oring::is_zero(oring::reduce(oring::sub(h.coeffs[n].rep, oring::from_int(R, 1)), pK)))
        throw std::invalid_argument("hensel_split: polynomial must be monic");
    FqPoly prod{1};
    for (auto& g : bar_factors) {
        if (g.empty() || g.back() != 1) throw std::invalid_argument("hensel_split: bar factors must be monic");
        prod = fq::mul(F, prod, g);
    }
    if (prod != reduce_mod_p(R, h)) throw std::invalid_argument("hensel_split: product of bar factors is not h mod p");
    for (size_t i = 0; i < bar_factors.size(); ++i)
        for (size_t j = i + 1; j < bar_factors.size(); ++j)
            if (fq::deg(fq::gcd(F, bar_factors[i], bar_factors[j])) > 0)
                throw std::invalid_argument("hensel_split: bar factors are not pairwise coprime");
    OPoly cur;
    for (auto& c : h.coeffs) cur.push_back(oring::reduce(c.rep, pK));
    std::vector<PadicPoly> out;
    for (size_t i = 0; i + 1 < bar_factors.size(); ++i) {
        FqPoly rest{1};
        for (size_t j = i + 1; j < bar_factors.size(); ++j) rest = fq::mul(F, rest, bar_factors[j]);
        auto [g, r] = lift_pair(R, cur, bar_factors[i], rest, K);
        out.push_back(make_poly(R, g, K));
        cur = r;
    }
    if (!bar_factors.empty()) out.push_back(make_poly(R, cur, K));
    return out;
}

}  // namespace pcheb

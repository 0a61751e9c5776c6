// Root counting in tame extensions M = K_F(pi), pi^b = p.  Roots are
// expanded in Teichmuller digits; Gal(M/K) is generated by
// c_k -> c_k^q and c_k -> zeta_b^k c_k, and each Galois orbit of roots
// is one irreducible factor.
#include <map>
#include <set>
#include <stdexcept>

#include "pcheb/factor.hpp"

namespace pcheb {

namespace {

struct Ext {
    BaseRing RF;  // O_{K_F}
    int b;
    Int pM;
    int M;

    using Elem = std::vector<OElem>;  // coefficients of pi^0..pi^{b-1}

    Elem zero() const { return Elem(b, oring::zero(RF)); }
    Elem from_base(const OElem& a) const {
        Elem e = zero();
        e[0] = oring::reduce(a, pM);
        return e;
    }
    Elem add(const Elem& x, const Elem& y) const {
        Elem r(b);
        for (int i = 0; i < b; ++i) r[i] = oring::reduce(oring::add(x[i], y[i]), pM);
        return r;
    }
    Elem mul(const Elem& x, const Elem& y) const {
        std::vector<OElem> acc(2 * b - 1, oring::zero(RF));
        for (int i = 0; i < b; ++i) {
            if (oring::is_zero(x[i])) continue;
            for (int j = 0; j < b; ++j) {
                if (oring::is_zero(y[j])) continue;
                acc[i + j] = oring::add(acc[i + j], oring::mul(RF, x[i], y[j]));
            }
        }
        Elem r(b);
        for (int k = 0; k < b; ++k) r[k] = acc[k];
        for (int k = b; k < 2 * b - 1; ++k) r[k - b] = oring::add(r[k - b], oring::scale(acc[k], Int(RF.p)));
        for (auto& c : r) c = oring::reduce(c, pM);
        return r;
    }
    // pi^k times x
    Elem shift_pi(const Elem& x, int k) const {
        Elem r = x;
        for (int s = 0; s < k; ++s) {
            Elem t = zero();
            for (int i = 0; i + 1 < b; ++i) t[i + 1] = r[i];
            t[0] = oring::reduce(oring::scale(r[b - 1], Int(RF.p)), pM);
            r = t;
        }
        return r;
    }
    // pi-adic valuation, -1 if zero mod p^M
    int val(const Elem& x) const {
        int best = -1;
        for (int i = 0; i < b; ++i) {
            int v = oring::valuation(RF, x[i]);
            if (v < 0) continue;
            int w = b * v + i;
            if (best < 0 || w < best) best = w;
        }
        return best;
    }
    // residue of x / pi^w where w = val(x)
    int leading_residue(const Elem& x, int w) const {
        int i = w % b, v = w / b;
        return oring::residue(RF, oring::divide_p(RF, x[i], v));
    }
};

OElem teichmuller(const BaseRing& RF, int c, const Int& pM, int M) {
    OElem x = oring::lift(RF, c);
    long long Q = RF.q();
    for (int k = 0; k < M + 1; ++k) {
        OElem r = oring::from_int(RF, 1), base = x;
        long long e = Q;
        while (e) {
            if (e & 1) r = oring::reduce(oring::mul(RF, r, base), pM);
            e >>= 1;
            if (e) base = oring::reduce(oring::mul(RF, base, base), pM);
        }
        x = r;
    }
    return x;
}

// distinct roots in F_Q of a nonzero polynomial of small degree
std::vector<int> distinct_roots(const FiniteField& F, const FqPoly& g) {
    if (fq::deg(g) <= 0) return {};
    FqPoly x{0, 1};
    FqPoly m = fq::monic(F, g);
    FqPoly xq = fq::powmod(F, x, F.size(), m);
    FqPoly r = fq::gcd(F, m, fq::sub(F, xq, x));
    std::vector<int> out;
    std::vector<FqPoly> work{r};
    long long half = (F.size() - 1) / 2;
    while (!work.empty()) {
        FqPoly w = work.back();
        work.pop_back();
        int d = fq::deg(w);
        if (d <= 0) continue;
        if (d == 1) {
            out.push_back(F.neg(w[0]));
            continue;
        }
        if (F.p() == 2) {
            for (int c : fq::roots(F, w)) out.push_back(c);
            continue;
        }
        for (int delta = 0;; ++delta) {
            FqPoly yd{delta % static_cast<int>(F.size()), 1};
            FqPoly t = fq::sub(F, fq::powmod(F, yd, half, w), FqPoly{1});
            FqPoly s = fq::gcd(F, w, t);
            if (fq::deg(s) > 0 && fq::deg(s) < d) {
                work.push_back(s);
                work.push_back(fq::div(F, w, s));
                break;
            }
            if (delta > 4 * F.size()) throw std::logic_error("oracle: root splitting failed");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct RootSearch {
    const Ext& X;
    const std::vector<Ext::Elem>& h;  // monic, in O_M
    std::map<int, Ext::Elem> teich_cache;
    std::vector<std::vector<int>> roots;
    int max_digits;

    const Ext::Elem& teich(int c) {
        auto it = teich_cache.find(c);
        if (it != teich_cache.end()) return it->second;
        return teich_cache[c] = X.from_base(teichmuller(X.RF, c, X.pM, X.M));
    }

    void search(const Ext::Elem& r, int K, std::vector<int>& digits) {
        if (K > max_digits) throw std::logic_error("oracle: roots not separated within precision budget");
        int n = static_cast<int>(h.size()) - 1;
        // g(y) = h(r + pi^K y) by Horner over polynomials in y
        Ext::Elem piK = X.shift_pi(X.from_base(oring::from_int(X.RF, 1)), K);
        std::vector<Ext::Elem> g{h[n]};
        for (int i = n - 1; i >= 0; --i) {
            std::vector<Ext::Elem> nxt(g.size() + 1, X.zero());
            for (size_t j = 0; j < g.size(); ++j) {
                nxt[j] = X.add(nxt[j], X.mul(g[j], r));
                nxt[j + 1] = X.add(nxt[j + 1], X.mul(g[j], piK));
            }
            nxt[0] = X.add(nxt[0], h[i]);
            g = nxt;
        }
        int w = -1;
        for (auto& c : g) {
            int v = X.val(c);
            if (v >= 0 && (w < 0 || v < w)) w = v;
        }
        if (w < 0 || w >= X.b * X.M - 1) throw std::logic_error("oracle: working precision exhausted");
        FqPoly bar;
        for (auto& c : g) bar.push_back(X.val(c) == w ? X.leading_residue(c, w) : 0);
        fq::trim(bar);
        const FiniteField& F = X.RF.field();
        FqPoly dbar = fq::derivative(F, bar);
        for (int c : distinct_roots(F, bar)) {
            digits.push_back(c);
            if (fq::eval(F, dbar, c) != 0) {
                roots.push_back(digits);
            } else {
                Ext::Elem nr = X.add(r, X.mul(piK, teich(c)));
                search(nr, K + 1, digits);
            }
            digits.pop_back();
        }
    }
};

long long llpow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

FactorizationType tame_oracle_classify(const BaseRing& R, const PadicPoly& h0) {
    int n = h0.degree();
    if (n < 1) throw std::invalid_argument("tame oracle: degree must be >= 1");
    if (R.p <= n) throw std::invalid_argument("tame oracle requires p > n");
    for (auto& c : h0.coeffs)
        if (c.prec != kExact) throw std::invalid_argument("tame oracle needs exact coefficients");
    std::vector<OElem> a = representatives(h0);
    for (auto& c : a) c.resize(R.f, Int(0));
    if (oring::is_zero(a[n])) throw std::invalid_argument("tame oracle: leading coefficient is zero");
    // monicize
    std::vector<OElem> mh(n + 1);
    OElem pw = oring::from_int(R, 1);
    for (int i = n - 1; i >= 0; --i) {
        mh[i] = oring::mul(R, a[i], pw);
        pw = oring::mul(R, pw, a[n]);
    }
    mh[n] = oring::from_int(R, 1);
    OElem disc = discriminant(R, mh);
    int d = oring::valuation(R, disc);
    if (d < 0) throw NotSquarefree("tame oracle: polynomial is not squarefree");

    long long q = llpow(R.p, R.f);
    std::vector<std::pair<int, int>> parts;
    int found = 0;
    for (int A = 1; A <= n; ++A)
        for (int B = 1; A * B <= n; ++B) {
            long long need = B * (llpow(q, A) - 1);
            int F = A;
            while ((llpow(q, F) - 1) % need != 0) {
                F += A;
                if (F > 24) throw std::logic_error("oracle: no suitable unramified degree");
            }
            int N = B * (d + 1) + 1;
            int M = (N * n) / B + n + 4;
            Ext X{make_base_ring(R.p, F * R.f), B, ipow(Int(R.p), M), M};
            // embed O_K into O_{K_F}
            OElem theta = oring::zero(X.RF);
            if (R.f == 1) {
                theta = oring::from_int(X.RF, 0);
            } else {
                const FiniteField& FF = X.RF.field();
                FqPoly mres;
                for (long c : R.modulus) mres.push_back(FF.from_prime(c));
                auto rts = fq::roots(FF, mres);
                if (rts.empty()) throw std::logic_error("oracle: modulus has no root upstairs");
                theta = oring::lift(X.RF, rts.front());
                // Newton on the modulus
                for (int it = 0; it < M + 2; ++it) {
                    OElem val = oring::zero(X.RF), der = oring::zero(X.RF);
                    for (int i = R.f; i >= 0; --i) {
                        der = oring::add(oring::mul(X.RF, der, theta), val);
                        val = oring::add(oring::mul(X.RF, val, theta), oring::from_int(X.RF, R.modulus[i]));
                    }
                    theta = oring::reduce(
                        oring::sub(theta, oring::mul(X.RF, val, oring::inverse_unit(X.RF, der, M))), X.pM);
                }
            }
            std::vector<Ext::Elem> hM;
            for (auto& c : mh) {
                OElem acc = oring::zero(X.RF), tp = oring::from_int(X.RF, 1);
                for (int i = 0; i < R.f; ++i) {
                    acc = oring::add(acc, oring::scale(tp, c[i]));
                    tp = oring::reduce(oring::mul(X.RF, tp, theta), X.pM);
                }
                hM.push_back(X.from_base(acc));
            }
            RootSearch S{X, hM, {}, {}, N + 2};
            std::vector<int> digits;
            S.search(X.zero(), 0, digits);

            const FiniteField& FF = X.RF.field();
            int zeta = FF.exp_of((FF.size() - 1) / B);
            std::map<std::vector<int>, int> index;
            for (size_t i = 0; i < S.roots.size(); ++i) index[S.roots[i]] = static_cast<int>(i);
            auto act_sigma = [&](const std::vector<int>& r) {
                std::vector<int> o(r);
                for (auto& c : o) c = FF.pow(c, q);
                return o;
            };
            auto act_tau = [&](const std::vector<int>& r) {
                std::vector<int> o(r);
                for (size_t k = 0; k < o.size(); ++k) o[k] = FF.mul(o[k], FF.pow(zeta, static_cast<long long>(k)));
                return o;
            };
            auto lookup = [&](const std::vector<int>& r) {
                auto it = index.find(r);
                if (it == index.end()) throw std::logic_error("oracle: Galois image is not a root");
                return it->second;
            };
            std::vector<bool> seen(S.roots.size(), false);
            for (size_t i = 0; i < S.roots.size(); ++i) {
                if (seen[i]) continue;
                std::set<int> orbit{static_cast<int>(i)};
                std::vector<int> stack{static_cast<int>(i)};
                while (!stack.empty()) {
                    int j = stack.back();
                    stack.pop_back();
                    for (int img : {lookup(act_sigma(S.roots[j])), lookup(act_tau(S.roots[j]))})
                        if (orbit.insert(img).second) stack.push_back(img);
                }
                std::set<int> torbit{static_cast<int>(i)};
                int cur = static_cast<int>(i);
                for (;;) {
                    cur = lookup(act_tau(S.roots[cur]));
                    if (!torbit.insert(cur).second) break;
                }
                for (int j : orbit) seen[j] = true;
                if (static_cast<int>(orbit.size()) == A * B && static_cast<int>(torbit.size()) == B) {
                    parts.push_back({A, B});
                    found += A * B;
                }
            }
        }
    if (found != n) throw std::logic_error("oracle: factor degrees do not sum to n");
    return FactorizationType::from_parts(parts);
}

}  // namespace pcheb

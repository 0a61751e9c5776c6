// Round 2 at a single prime: enlarge Z_p[x,y]/(m(x), h(y)) until p-maximal,
// then read residue degrees and ramification off O/pO.
#include <stdexcept>

#include "pcheb/factor.hpp"
#include "pcheb/linalg.hpp"

namespace pcheb {

namespace {

using Vec = std::vector<Rat>;
using ModVec = std::vector<long>;

struct PowerAlgebra {
    int f, n, N;
    QPoly mod;                      // m(x)
    std::vector<QPoly> hcoef;       // h_i(x), i < n, monic in y
    std::vector<std::vector<Vec>> table;  // e_a * e_b in power coordinates

    PowerAlgebra(const BaseRing& R, const std::vector<OElem>& h) : f(R.f), n(static_cast<int>(h.size()) - 1) {
        N = f * n;
        for (long c : R.modulus) mod.push_back(Rat(c));
        for (int i = 0; i < n; ++i) {
            QPoly c;
            for (auto& x : h[i]) c.push_back(Rat(x));
            qpoly::trim(c);
            hcoef.push_back(c);
        }
        table.assign(N, std::vector<Vec>(N));
        for (int a = 0; a < N; ++a)
            for (int b = a; b < N; ++b) {
                table[a][b] = product_basis(a, b);
                table[b][a] = table[a][b];
            }
    }

    // index = yexp * f + xexp
    Vec product_basis(int a, int b) const {
        int ya = a / f, xa = a % f, yb = b / f, xb = b % f;
        std::vector<QPoly> ypoly(ya + yb + 1);
        QPoly mon(xa + xb + 1, Rat(0));
        mon[xa + xb] = 1;
        ypoly[ya + yb] = qpoly::mod(mon, mod);
        for (int k = ya + yb; k >= n; --k) {
            QPoly c = ypoly[k];
            if (c.empty()) continue;
            ypoly[k].clear();
            for (int i = 0; i < n; ++i)
                ypoly[k - n + i] = qpoly::mod(qpoly::sub(ypoly[k - n + i], qpoly::mul(c, hcoef[i])), mod);
        }
        Vec out(N, Rat(0));
        for (int k = 0; k < n && k < static_cast<int>(ypoly.size()); ++k)
            for (int j = 0; j < static_cast<int>(ypoly[k].size()); ++j) out[k * f + j] = ypoly[k][j];
        return out;
    }

    Vec mul(const Vec& u, const Vec& v) const {
        Vec r(N, Rat(0));
        for (int a = 0; a < N; ++a) {
            if (u[a] == 0) continue;
            for (int b = 0; b < N; ++b) {
                if (v[b] == 0) continue;
                Rat c = u[a] * v[b];
                const Vec& t = table[a][b];
                for (int k = 0; k < N; ++k)
                    if (t[k] != 0) r[k] += c * t[k];
            }
        }
        return r;
    }
};

long rat_mod(const Rat& x, long p) {
    Int num = x.get_num(), den = x.get_den();
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), den.get_mpz_t(), p);
    if (r == 0) throw std::logic_error("maximal order: non-integral coordinate");
    long d = r.get_si();
    mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), p);
    return (r.get_si() * modp::inv(d, p)) % p;
}

struct ResidueAlgebra {
    int N;
    long p;
    std::vector<std::vector<ModVec>> T;  // T[i][j] = coords of w_i w_j mod p

    ModVec mul(const ModVec& u, const ModVec& v) const {
        ModVec r(N, 0);
        for (int i = 0; i < N; ++i) {
            if (!u[i]) continue;
            for (int j = 0; j < N; ++j) {
                if (!v[j]) continue;
                long c = u[i] * v[j] % p;
                const ModVec& t = T[i][j];
                for (int k = 0; k < N; ++k) r[k] = (r[k] + c * t[k]) % p;
            }
        }
        return r;
    }
    ModVec pow(ModVec a, long long e, const ModVec& one) const {
        ModVec r = one;
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
};

// rows: rref of gens (mod p) plus p*e_j on non-pivot columns
std::vector<std::vector<Int>> lattice_with_p(std::vector<ModVec> gens, int N, long p) {
    std::vector<std::vector<Int>> rows;
    std::vector<int> piv;
    if (!gens.empty()) piv = modp::rref(gens, p);
    std::vector<bool> is_piv(N, false);
    for (size_t r = 0; r < piv.size(); ++r) {
        is_piv[piv[r]] = true;
        std::vector<Int> row(N);
        for (int j = 0; j < N; ++j) row[j] = gens[r][j];
        rows.push_back(row);
    }
    for (int j = 0; j < N; ++j)
        if (!is_piv[j]) {
            std::vector<Int> row(N, Int(0));
            row[j] = p;
            rows.push_back(row);
        }
    return rows;
}

QMatrix to_qmatrix(const std::vector<std::vector<Int>>& rows) {
    QMatrix m(rows.size(), std::vector<Rat>(rows.empty() ? 0 : rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m[i][j] = Rat(rows[i][j]);
    return m;
}

}  // namespace

std::vector<std::pair<int, int>> maximal_order_type(const BaseRing& R, const std::vector<OElem>& h) {
    int n = static_cast<int>(h.size()) - 1;
    if (n < 1) throw std::invalid_argument("maximal_order_type: degree must be >= 1");
    PowerAlgebra A(R, h);
    const int N = A.N;
    const long p = R.p;
    long long frob_power = p;
    while (frob_power < N) frob_power *= p;

    QMatrix B = qmat::identity(N);  // columns: order basis in power coordinates
    ResidueAlgebra res{N, p, {}};
    std::vector<ModVec> radical;
    Vec one_power(N, Rat(0));
    one_power[0] = 1;
    ModVec one;
    for (int iter = 0;; ++iter) {
        if (iter > 64 * N) throw std::logic_error("maximal order: iteration budget exceeded");
        QMatrix Binv = qmat::inverse(B);
        std::vector<Vec> basis(N, Vec(N));
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) basis[i][k] = B[k][i];
        std::vector<std::vector<Vec>> T(N, std::vector<Vec>(N));
        res.T.assign(N, std::vector<ModVec>(N, ModVec(N)));
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                T[i][j] = qmat::mul_vec(Binv, A.mul(basis[i], basis[j]));
                T[j][i] = T[i][j];
                for (int k = 0; k < N; ++k) res.T[i][j][k] = rat_mod(T[i][j][k], p);
                res.T[j][i] = res.T[i][j];
            }
        Vec one_coords = qmat::mul_vec(Binv, one_power);
        one.assign(N, 0);
        for (int k = 0; k < N; ++k) one[k] = rat_mod(one_coords[k], p);

        // radical of O/pO = kernel of a -> a^(p^j)
        ModMatrix frob(N, ModVec(N, 0));
        for (int i = 0; i < N; ++i) {
            ModVec e(N, 0);
            e[i] = 1;
            ModVec img = res.pow(e, frob_power, one);
            for (int k = 0; k < N; ++k) frob[k][i] = img[k];
        }
        radical = modp::kernel(frob, N, p);
        if (radical.empty()) break;

        auto Irows = lattice_with_p(radical, N, p);
        QMatrix G = to_qmatrix(Irows);
        QMatrix Ginv = qmat::inverse(G);
        // U/pO = kernel of a -> (mult by a on I/pI)
        ModMatrix sys;
        std::vector<std::vector<ModVec>> M(N);  // M[i][j] = I-coords of w_i * gamma_j
        for (int i = 0; i < N; ++i) {
            M[i].resize(N);
            for (int j = 0; j < N; ++j) {
                Vec prod(N, Rat(0));
                for (int l = 0; l < N; ++l) {
                    if (G[j][l] == 0) continue;
                    for (int k = 0; k < N; ++k) prod[k] += G[j][l] * T[i][l][k];
                }
                ModVec coords(N);
                for (int k = 0; k < N; ++k) {
                    Rat c = 0;
                    for (int l = 0; l < N; ++l)
                        if (prod[l] != 0) c += prod[l] * Ginv[l][k];
                    coords[k] = rat_mod(c, p);
                }
                M[i][j] = coords;
            }
        }
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                ModVec row(N);
                for (int i = 0; i < N; ++i) row[i] = M[i][j][k];
                sys.push_back(row);
            }
        auto ker = modp::kernel(sys, N, p);
        if (ker.empty()) break;
        auto Urows = lattice_with_p(ker, N, p);
        QMatrix C(N, std::vector<Rat>(N));
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l) {
                C[l][k] = Rat(Urows[k][l], p);
                C[l][k].canonicalize();
            }
        B = qmat::mul(B, C);
    }

    // components of O/pO via Frobenius-fixed idempotents
    ModMatrix fix(N, ModVec(N, 0));
    for (int i = 0; i < N; ++i) {
        ModVec e(N, 0);
        e[i] = 1;
        ModVec img = res.pow(e, p, one);
        for (int k = 0; k < N; ++k) fix[k][i] = ((img[k] - e[k]) % p + p) % p;
    }
    auto fixed = modp::kernel(fix, N, p);
    std::vector<ModVec> idem{one};
    for (auto& b : fixed) {
        std::vector<ModVec> next;
        for (auto& eps : idem) {
            for (long c = 0; c < p; ++c) {
                ModVec bc = b;
                for (int k = 0; k < N; ++k) bc[k] = ((bc[k] - c * one[k]) % p + p) % p;
                ModVec pw = res.pow(bc, p - 1, one);
                ModVec t(N);
                for (int k = 0; k < N; ++k) t[k] = ((one[k] - pw[k]) % p + p) % p;
                ModVec ec = res.mul(eps, t);
                bool nz = false;
                for (long x : ec) nz = nz || x;
                if (nz) next.push_back(ec);
            }
        }
        idem = next;
    }
    if (idem.size() != fixed.size()) throw std::logic_error("maximal order: idempotent splitting failed");
    std::vector<std::pair<int, int>> parts;
    for (auto& eps : idem) {
        ModMatrix span, rspan;
        for (int i = 0; i < N; ++i) {
            ModVec e(N, 0);
            e[i] = 1;
            span.push_back(res.mul(eps, e));
        }
        for (auto& r : radical) rspan.push_back(res.mul(eps, r));
        int dim = modp::rank(span, p);
        int drad = rspan.empty() ? 0 : modp::rank(rspan, p);
        int D = dim - drad;
        if (D <= 0 || dim % D != 0 || D % R.f != 0) throw std::logic_error("maximal order: inconsistent component");
        parts.push_back({D / R.f, dim / D});
    }
    return parts;
}

}  // namespace pcheb

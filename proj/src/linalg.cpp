#include "pcheb/linalg.hpp"

#include <stdexcept>

namespace pcheb {
namespace modp {

long inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("not invertible mod p");
    return ((t % p) + p) % p;
}

std::vector<int> rref(ModMatrix& a, long p) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (((a[i][c] % p) + p) % p) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        long iv = inv(a[r][c], p);
        for (auto& x : a[r]) x = (((x * iv) % p) + p) % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            long f = ((a[i][c] % p) + p) % p;
            if (!f) continue;
            for (int j = 0; j < cols; ++j) a[i][j] = (((a[i][j] - f * a[r][j]) % p) + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(ModMatrix a, long p) { return static_cast<int>(rref(a, p).size()); }

std::vector<std::vector<long>> kernel(const ModMatrix& a0, int cols, long p) {
    ModMatrix a = a0;
    std::vector<int> piv = rref(a, p);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<long>> out;
    for (int free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<long> v(cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = ((p - a[r][free]) % p + p) % p;
        out.push_back(v);
    }
    return out;
}

}  // namespace modp

namespace qmat {

QMatrix identity(int n) {
    QMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix r(n, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

std::vector<Rat> mul_vec(const QMatrix& a, const std::vector<Rat>& v) {
    std::vector<Rat> r(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) r[i] += a[i][j] * v[j];
    return r;
}

QMatrix inverse(const QMatrix& a0) {
    int n = static_cast<int>(a0.size());
    QMatrix a = a0, inv = identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::invalid_argument("singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        Rat iv = 1 / a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] *= iv;
            inv[c][j] *= iv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

Rat det(QMatrix a) {
    int n = static_cast<int>(a.size());
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

std::vector<std::vector<Rat>> kernel(QMatrix a, int cols) {
    int rows = static_cast<int>(a.size());
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[pr], a[r]);
        Rat iv = 1 / a[r][c];
        for (auto& x : a[r]) x *= iv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Rat>> out;
    for (int free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a[k][free];
        out.push_back(v);
    }
    return out;
}

}  // namespace qmat
}  // namespace pcheb

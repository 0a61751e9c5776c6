#include "pcheb/fit.hpp"

#include <algorithm>
#include <optional>

namespace pcheb {

namespace {

void trim(IntPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly to_q(const IntPoly& a) {
    QPoly r(a.begin(), a.end());
    return r;
}

IntPoly reversed(const IntPoly& a, int d) {
    IntPoly r(d + 1, 0);
    for (size_t i = 0; i < a.size(); ++i) r[d - i] = a[i];
    trim(r);
    return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

IntPoly shifted(const IntPoly& a, int k) {
    if (a.empty()) return a;
    IntPoly r(k, 0);
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

// kernel of an integer matrix by fraction-free elimination; rows kept primitive
std::vector<IntPoly> integer_kernel(std::vector<IntPoly> M, int cols) {
    std::vector<int> pivots;
    size_t row = 0;
    for (int c = 0; c < cols && row < M.size(); ++c) {
        size_t sel = row;
        while (sel < M.size() && M[sel][c] == 0) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[row], M[sel]);
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == row || M[r][c] == 0) continue;
            Int a = M[row][c], b = M[r][c];
            Int g = 0;
            for (int k = 0; k < cols; ++k) {
                M[r][k] = a * M[r][k] - b * M[row][k];
                g = gcd(g, M[r][k]);
            }
            if (g > 1)
                for (auto& x : M[r]) x /= g;
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<IntPoly> basis;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        // x_free = L (lcm of pivots), x_pivot = -L * M[i][free] / M[i][pivot]
        Int L = 1;
        for (size_t i = 0; i < pivots.size(); ++i) L = lcm(L, Int(abs(M[i][pivots[i]])));
        IntPoly v(cols, 0);
        v[free] = L;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -L * M[i][free] / M[i][pivots[i]];
        basis.push_back(v);
    }
    return basis;
}

bool fits_all(const RationalFunction& r, const std::vector<std::pair<long, Rat>>& pts) {
    for (auto& [q, v] : pts) {
        Rat t(q);
        Rat d = 0;
        for (auto it = r.den.rbegin(); it != r.den.rend(); ++it) d = d * t + *it;
        if (d == 0 || r(t) != v) return false;
    }
    return true;
}

std::optional<RationalFunction> try_fit(const std::vector<std::pair<long, Rat>>& pts, int D) {
    int cols = 2 * (D + 1);
    std::vector<IntPoly> M;
    for (auto& [q, v] : pts) {
        // den(v) * P(q) - num(v) * Q(q) = 0
        IntPoly row(cols);
        Int qi = 1;
        for (int i = 0; i <= D; ++i) {
            row[i] = v.get_den() * qi;
            row[D + 1 + i] = -v.get_num() * qi;
            qi *= q;
        }
        M.push_back(row);
    }
    for (auto& k : integer_kernel(M, cols)) {
        IntPoly P(k.begin(), k.begin() + D + 1), Q(k.begin() + D + 1, k.end());
        trim(P);
        trim(Q);
        if (Q.empty()) continue;
        RationalFunction r = RationalFunction::make(P, Q);
        if (fits_all(r, pts)) return r;
    }
    return std::nullopt;
}

}  // namespace

std::string int_poly_str(const IntPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string s;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[i] == 0) continue;
        Int c = p[i];
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        Int a = abs(c);
        if (i == 0 || a != 1) s += a.get_str();
        if (i > 0) {
            if (a != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

RationalFunction RationalFunction::make(IntPoly num, IntPoly den) {
    trim(num);
    trim(den);
    if (den.empty()) throw std::invalid_argument("rational function with zero denominator");
    RationalFunction r;
    if (num.empty()) {
        r.den = {1};
        return r;
    }
    QPoly s, t;
    QPoly g = qpoly::xgcd(to_q(num), to_q(den), s, t);
    QPoly qn, qd, rem;
    qpoly::divmod(to_q(num), g, qn, rem);
    qpoly::divmod(to_q(den), g, qd, rem);
    // common scale: clear both denominators together, then remove joint content
    Int l = 1;
    for (auto& c : qn) l = lcm(l, Int(c.get_den()));
    for (auto& c : qd) l = lcm(l, Int(c.get_den()));
    Int cont = 0;
    for (auto& c : qn) {
        r.num.push_back(Rat(c * l).get_num());
        cont = gcd(cont, r.num.back());
    }
    for (auto& c : qd) {
        r.den.push_back(Rat(c * l).get_num());
        cont = gcd(cont, r.den.back());
    }
    if (r.den.back() < 0) cont = -cont;
    for (auto& c : r.num) c /= cont;
    for (auto& c : r.den) c /= cont;
    trim(r.num);
    trim(r.den);
    return r;
}

Rat RationalFunction::operator()(const Rat& t) const {
    Rat n = 0, d = 0;
    for (auto it = num.rbegin(); it != num.rend(); ++it) n = n * t + *it;
    for (auto it = den.rbegin(); it != den.rend(); ++it) d = d * t + *it;
    if (d == 0) throw std::domain_error("rational function has a pole at " + t.get_str());
    Rat r = n / d;
    return r;
}

RationalFunction RationalFunction::at_inverse() const {
    int d = static_cast<int>(std::max(num.size(), den.size())) - 1;
    return make(reversed(num, d), reversed(den, d));
}

std::string RationalFunction::str(const std::string& var) const {
    if (den.size() == 1 && den[0] == 1) return int_poly_str(num, var);
    return "(" + int_poly_str(num, var) + ")/(" + int_poly_str(den, var) + ")";
}

RationalFunction fit_rational(const std::vector<std::pair<long, Rat>>& points, int deg_bound) {
    if (deg_bound < 0) throw std::invalid_argument("deg_bound must be >= 0");
    size_t need = 2 * static_cast<size_t>(deg_bound) + 2;
    if (points.size() < need)
        throw std::invalid_argument("fit_rational needs at least " + std::to_string(need) + " points, got " +
                                    std::to_string(points.size()));
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("duplicate q=" + std::to_string(points[i].first));
    if (auto r = try_fit(points, deg_bound)) return *r;
    long bad = 0;
    if (points.size() > need) {
        for (size_t i = 0; i < points.size() && !bad; ++i) {
            auto rest = points;
            rest.erase(rest.begin() + static_cast<long>(i));
            if (try_fit(rest, deg_bound)) bad = points[i].first;
        }
    }
    std::string msg = "no rational function of degree <= " + std::to_string(deg_bound) + " fits the data";
    if (bad) msg += "; inconsistent point at q=" + std::to_string(bad);
    throw FitError(msg, bad);
}

bool check_palindromy(const RationalFunction& r) {
    // r(1/t) = r(t)  <=>  t^dq rev(P) Q = t^dp P rev(Q)
    if (r.num.empty()) return true;
    int dp = static_cast<int>(r.num.size()) - 1, dq = static_cast<int>(r.den.size()) - 1;
    IntPoly lhs = shifted(mul(reversed(r.num, dp), r.den), dq);
    IntPoly rhs = shifted(mul(r.num, reversed(r.den, dq)), dp);
    return lhs == rhs;
}

}  // namespace pcheb

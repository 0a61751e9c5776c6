#include "pcheb/factor.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace pcheb {

FactorizationType FactorizationType::from_parts(std::vector<std::pair<int, int>> parts) {
    for (auto& [f, e] : parts)
        if (f < 1 || e < 1) throw std::invalid_argument("factorization type parts must be positive");
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    });
    return FactorizationType{std::move(parts)};
}

FactorizationType FactorizationType::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty factorization type");
    std::vector<std::pair<int, int>> parts;
    std::stringstream ss(text);
    std::string tok;
    auto number = [&](const std::string& s) {
        if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), ::isdigit))
            throw std::invalid_argument("bad factorization type token '" + tok + "' in '" + text + "'");
        int v = std::stoi(s);
        if (v < 1) throw std::invalid_argument("bad factorization type token '" + tok + "' in '" + text + "'");
        return v;
    };
    while (std::getline(ss, tok, ',')) {
        auto caret = tok.find('^');
        if (caret == std::string::npos)
            parts.push_back({number(tok), 1});
        else
            parts.push_back({number(tok.substr(0, caret)), number(tok.substr(caret + 1))});
    }
    if (!text.empty() && text.back() == ',') throw std::invalid_argument("trailing comma in '" + text + "'");
    return from_parts(parts);
}

int FactorizationType::degree() const {
    int n = 0;
    for (auto& [f, e] : parts) n += f * e;
    return n;
}

bool FactorizationType::unramified() const {
    return std::all_of(parts.begin(), parts.end(), [](const auto& x) { return x.second == 1; });
}

std::string FactorizationType::str() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i].first);
        if (parts[i].second != 1) s += '^' + std::to_string(parts[i].second);
    }
    return s;
}

FactorizationType FactorizationType::scaled(int d) const {
    auto ps = parts;
    for (auto& x : ps) x.first *= d;
    return from_parts(ps);
}

FactorizationType FactorizationType::merged(const FactorizationType& other) const {
    auto ps = parts;
    ps.insert(ps.end(), other.parts.begin(), other.parts.end());
    return from_parts(ps);
}

std::vector<FactorizationType> all_types(int n) {
    std::vector<std::pair<int, int>> kinds;
    for (int f = 1; f <= n; ++f)
        for (int e = n; e >= 1; --e)
            if (f * e <= n) kinds.push_back({f, e});
    std::vector<FactorizationType> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(size_t, int)> rec = [&](size_t start, int left) {
        if (left == 0) {
            out.push_back(FactorizationType::from_parts(cur));
            return;
        }
        for (size_t k = start; k < kinds.size(); ++k) {
            int w = kinds[k].first * kinds[k].second;
            if (w > left) continue;
            cur.push_back(kinds[k]);
            rec(k, left - w);
            cur.pop_back();
        }
    };
    rec(0, n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<OElem> monicized(const BaseRing& R, const std::vector<OElem>& h) {
    int n = static_cast<int>(h.size()) - 1;
    std::vector<OElem> out(n + 1);
    OElem pw = oring::from_int(R, 1);
    for (int i = n - 1; i >= 0; --i) {
        out[i] = oring::mul(R, h[i], pw);
        pw = oring::mul(R, pw, h[n]);
    }
    out[n] = oring::from_int(R, 1);
    return out;
}

FqPoly residue_poly(const BaseRing& R, const std::vector<OElem>& h) {
    FqPoly r;
    for (auto& c : h) r.push_back(oring::residue(R, c));
    fq::trim(r);
    return r;
}

}  // namespace

FactorizationType classify(const BaseRing& R, const PadicPoly& h) {
    int n = h.degree();
    if (n < 1) throw std::invalid_argument("classify: degree must be >= 1");
    for (auto& c : h.coeffs)
        if (c.prec != kExact) throw std::invalid_argument("classify needs exact coefficients");
    auto reps = representatives(h);
    for (auto& c : reps) c.resize(R.f, Int(0));
    if (oring::is_zero(reps[n])) throw std::invalid_argument("classify: leading coefficient is zero");
    auto mh = monicized(R, reps);
    FqPoly bar = residue_poly(R, mh);
    const FiniteField& F = R.field();
    if (fq::is_squarefree(F, bar)) {
        std::vector<std::pair<int, int>> parts;
        for (int d : fq::ddf_degrees(F, bar)) parts.push_back({d, 1});
        return FactorizationType::from_parts(parts);
    }
    if (oring::is_zero(discriminant(R, reps))) throw NotSquarefree("classify: polynomial is not squarefree");
    auto t = FactorizationType::from_parts(maximal_order_type(R, mh));
    if (t.degree() != n) throw std::logic_error("classify: degree mismatch in maximal order computation");
    return t;
}

namespace {

using Parts = std::vector<std::pair<int, int>>;

// residual polynomials along each segment; nullopt if some residual is not squarefree
std::optional<Parts> segment_parts(const BaseRing& R, const PadicPoly& g, const NewtonPolygon& np) {
    const FiniteField& F = R.field();
    Parts out;
    int i0 = np.vertices.front().first;
    int v0 = np.vertices.front().second;
    for (auto& seg : np.segments) {
        long a = seg.slope.get_num().get_si();
        int E = static_cast<int>(seg.slope.get_den().get_si());
        int t = seg.length / E;
        FqPoly res(t + 1, 0);
        for (int j = 0; j <= t; ++j) {
            int idx = i0 + j * E;
            int H = v0 - static_cast<int>(j * a);
            Valuation v = valuation(R, g.coeffs[idx]);
            if (v.determined() && v.value == H) res[j] = oring::residue(R, oring::divide_p(R, g.coeffs[idx].rep, H));
        }
        if (t == 1) {
            out.push_back({1, E});
        } else {
            if (!fq::is_squarefree(F, res)) return std::nullopt;
            for (int d : fq::ddf_degrees(F, res)) out.push_back({d, E});
        }
        i0 += seg.length;
        v0 -= static_cast<int>(t * a);
    }
    return out;
}

PadicPoly truncated(const PadicPoly& g, int from, int to) {
    PadicPoly r;
    for (int i = from; i <= to; ++i) r.coeffs.push_back(g.coeffs[i]);
    return r;
}

// g has a block (z)^e at the origin: coefficient e a unit, lower ones in pO
std::optional<Parts> origin_block(const BaseRing& R, const PadicPoly& g, int e, bool open_constant) {
    Valuation v0 = valuation(R, g.coeffs[0]);
    try {
        if (v0.determined()) {
            PadicPoly part = truncated(g, 0, e);
            NewtonPolygon np = newton_polygon(R, part);
            return segment_parts(R, part, np);
        }
        if (!open_constant || e < 2) return std::nullopt;
        Valuation v1 = valuation(R, g.coeffs[1]);
        if (!v1.determined()) return std::nullopt;
        PadicPoly part = truncated(g, 1, e);
        NewtonPolygon np = newton_polygon(R, part);
        if (Rat(v0.value) <= Rat(v1.value) + np.segments.front().slope) return std::nullopt;
        auto rest = segment_parts(R, part, np);
        if (!rest) return std::nullopt;
        rest->push_back({1, 1});
        return rest;
    } catch (const PrecisionNeeded&) {
        return std::nullopt;
    }
}

}  // namespace

Decision decide_box(const BaseRing& R, const PadicPoly& h0, bool open_constant) {
    const FiniteField& F = R.field();
    int n = h0.degree();
    if (n < 1) throw std::invalid_argument("decide_box: degree must be >= 1");
    int kmin = h0.precision();
    if (kmin == kExact) kmin = 0;
    // strip the p-power content
    int content = kExact;
    for (auto& c : h0.coeffs) {
        Valuation v = valuation(R, c);
        if (v.determined()) content = std::min(content, v.value);
    }
    if (content == kExact) return Decision::no(kmin + 1);
    for (auto& c : h0.coeffs) {
        Valuation v = valuation(R, c);
        if (!v.determined() && v.value <= content) return Decision::no(kmin + 1);
    }
    PadicPoly h;
    for (auto& c : h0.coeffs) {
        int prec = c.prec == kExact ? kExact : c.prec - content;
        h.coeffs.push_back(make_elem(R, oring::divide_p(R, c.rep, content), prec));
    }
    int k = h.precision();  // >= 1

    FqPoly bar;
    for (auto& c : h.coeffs) bar.push_back(oring::residue(R, c.rep));
    fq::trim(bar);
    int dbar = fq::deg(bar);
    int inf_mult = n - dbar;

    bool certified = true;
    Parts parts;
    if (inf_mult == 1) {
        parts.push_back({1, 1});
    } else if (inf_mult >= 2) {
        auto blk = origin_block(R, reverse(h), inf_mult, false);
        if (blk)
            parts.insert(parts.end(), blk->begin(), blk->end());
        else
            certified = false;
    }
    if (certified && dbar > 0) {
        for (auto& [g, e] : fq::squarefree_decomposition(F, bar)) {
            if (!certified) break;
            if (e == 1) {
                for (int d : fq::ddf_degrees(F, g)) parts.push_back({d, 1});
                continue;
            }
            for (auto& [d, gd] : fq::ddf(F, g)) {
                if (d != 1) {
                    certified = false;
                    break;
                }
                for (int theta : fq::roots(F, gd)) {
                    PadicPoly s = theta == 0 ? h : shift(R, h, oring::lift(R, theta));
                    auto blk = origin_block(R, s, e, open_constant && theta == 0);
                    if (!blk) {
                        certified = false;
                        break;
                    }
                    parts.insert(parts.end(), blk->begin(), blk->end());
                }
                if (!certified) break;
            }
        }
    }
    if (certified) return Decision::yes(FactorizationType::from_parts(parts));

    // Krasner-type modulus on the monicized polynomial
    Valuation u = valuation(R, h.coeffs[n]);
    if (!u.determined() || u.value >= k) return Decision::no(kmin + 1);
    std::vector<PadicElem> mh(n + 1);
    PadicElem pw = make_elem(R, Int(1));
    for (int i = n - 1; i >= 0; --i) {
        mh[i] = pmul(R, h.coeffs[i], pw);
        pw = pmul(R, pw, h.coeffs[n]);
    }
    int keff = kExact;
    for (int i = 0; i < n; ++i) keff = std::min(keff, mh[i].prec);
    std::vector<OElem> mreps;
    for (int i = 0; i < n; ++i) mreps.push_back(mh[i].rep);
    mreps.push_back(oring::from_int(R, 1));
    int d = oring::valuation(R, discriminant(R, mreps));
    if (d < 0 || d >= keff) return Decision::no(kmin + 1);
    long need = 2L * d + (2L * n - 1) * u.value + 1;
    if (k >= need) return Decision::yes(classify(R, make_poly(R, representatives(h))));
    return Decision::no(static_cast<int>(std::max<long>(kmin + 1, need + content)));
}

Decision cell_decided(const BaseRing& R, const Cell& c) {
    if (c.depth < 1) throw std::invalid_argument("cell depth must be >= 1");
    size_t expect = c.model == CellModel::haar ? c.n + 1 : c.n;
    if (c.n < 1 || c.residues.size() != expect) throw std::invalid_argument("cell residue vector has wrong length");
    std::vector<OElem> coeffs = c.residues;
    for (auto& x : coeffs) x.resize(R.f, Int(0));
    PadicPoly h = make_poly(R, coeffs, c.depth);
    if (c.model == CellModel::monic) h.coeffs.push_back(make_elem(R, Int(1)));
    return decide_box(R, h, false);
}

}  // namespace pcheb

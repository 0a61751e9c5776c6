#include "pcheb/enumerate.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pcheb {

std::string model_name(Model m) {
    switch (m) {
        case Model::haar: return "haar";
        case Model::monic: return "monic";
        case Model::eisenstein: return "eisenstein";
        case Model::projective: return "projective";
    }
    return "?";
}

Model parse_model(const std::string& s) {
    if (s == "haar") return Model::haar;
    if (s == "monic") return Model::monic;
    if (s == "eisenstein" || s == "eisenstein_residue") return Model::eisenstein;
    if (s == "projective") return Model::projective;
    throw std::invalid_argument("unknown coefficient model '" + s + "'");
}

Rat DensityResult::density(const std::string& sigma) const {
    auto it = densities.find(FactorizationType::parse(sigma));
    if (it == densities.end()) throw std::invalid_argument("no density for type " + sigma);
    return it->second;
}

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PCHEB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 256));
        throw std::invalid_argument("PCHEB_THREADS must be a positive integer");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

// ordered parallel map; results land at their input index
template <class In, class Out>
std::vector<Out> parallel_map(const std::vector<In>& in, const std::function<Out(const In&)>& fn, int threads) {
    std::vector<Out> out(in.size());
    if (threads <= 1 || in.size() < 64) {
        for (size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        try {
            for (;;) {
                size_t start = next.fetch_add(32);
                if (start >= in.size()) break;
                size_t stop = std::min(in.size(), start + 32);
                for (size_t i = start; i < stop; ++i) out[i] = fn(in[i]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    int t = std::min<int>(threads, static_cast<int>(in.size() / 32) + 1);
    for (int i = 0; i < t; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

struct Dist {
    std::map<FactorizationType, Rat> mass;
    Rat undecided = 0;

    Rat total() const {
        Rat t = undecided;
        for (auto& [k, v] : mass) t += v;
        return t;
    }
    void add(const Dist& o, const Rat& c) {
        if (c == 0) return;
        for (auto& [k, v] : o.mass) mass[k] += c * v;
        undecided += c * o.undecided;
    }
    Dist scaled_by(const Rat& c) const {
        Dist d;
        d.add(*this, c);
        return d;
    }
    Dist lifted(int d) const {
        if (d == 1) return *this;
        Dist r;
        for (auto& [k, v] : mass) r.mass[k.scaled(d)] += v;
        r.undecided = undecided;
        return r;
    }
    static Dist point(const FactorizationType& t) {
        Dist d;
        d.mass[t] = 1;
        return d;
    }
};

Dist convolve(const Dist& a, const Dist& b) {
    Dist r;
    for (auto& [ka, va] : a.mass)
        for (auto& [kb, vb] : b.mass) r.mass[ka.merged(kb)] += va * vb;
    Rat ta = a.total(), tb = b.total();
    r.undecided = a.undecided * tb + (ta - a.undecided) * b.undecided;
    return r;
}

struct Level {
    Dist haar, monic, eis;
};

using Pattern = std::vector<std::pair<int, int>>;  // (degree, multiplicity) of irreducible factors

struct BoxOutcome {
    enum Kind { self_similar, decided, undecided, split } kind = undecided;
    FactorizationType type;
    int coeff = -1;
};

class Solver {
public:
    Solver(long p, int max_depth, int threads) : p_(p), max_depth_(max_depth), threads_(threads) {}

    const Level& level(int m, int F) {
        auto key = std::make_pair(m, F);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Level L = solve(m, F);
        return memo_[key] = L;
    }

    std::int64_t cells() const { return cells_; }
    std::map<std::string, std::vector<FrontierBox>>& frontier() { return frontier_; }

private:
    long p_;
    int max_depth_;
    int threads_;
    std::map<std::pair<int, int>, Level> memo_;
    std::map<int, BaseRing> rings_;
    std::map<std::string, std::vector<FrontierBox>> frontier_;
    std::int64_t cells_ = 0;

    const BaseRing& ring(int F) {
        auto it = rings_.find(F);
        if (it != rings_.end()) return it->second;
        return rings_[F] = make_base_ring(p_, F);
    }

    Dist block(int d, int e, int F) {
        if (e == 1) return Dist::point(FactorizationType::from_parts({{d, 1}}));
        return level(e, F * d).eis.lifted(d);
    }

    // counts of monic residue polynomials of degree deg by factorization pattern
    std::map<Pattern, std::int64_t> patterns(int deg, int F) {
        const FiniteField& K = ring(F).field();
        long Q = K.size();
        std::map<Pattern, std::int64_t> out;
        std::int64_t total = 1;
        for (int i = 0; i < deg; ++i) total *= Q;
        std::vector<std::int64_t> idx(total);
        for (std::int64_t i = 0; i < total; ++i) idx[i] = i;
        std::function<Pattern(const std::int64_t&)> fn = [&](const std::int64_t& code) {
            FqPoly g(deg + 1);
            std::int64_t c = code;
            for (int i = 0; i < deg; ++i) {
                g[i] = static_cast<int>(c % Q);
                c /= Q;
            }
            g[deg] = 1;
            if (deg == 0) return Pattern{};
            return Pattern(fq::factor_pattern(K, g));
        };
        auto pats = parallel_map<std::int64_t, Pattern>(idx, fn, threads_);
        for (auto& pt : pats) ++out[pt];
        cells_ += total;
        return out;
    }

    BoxOutcome process_box(const BaseRing& R, int m, const FrontierBox& box) {
        BoxOutcome o;
        bool all_zero = true, at_scale = true;
        for (int i = 0; i < m; ++i) {
            all_zero = all_zero && oring::is_zero(box.residues[i]);
            at_scale = at_scale && box.precision[i] == m - i;
        }
        if (all_zero && at_scale) {
            o.kind = BoxOutcome::self_similar;
            return o;
        }
        PadicPoly h;
        for (int i = 0; i < m; ++i) h.coeffs.push_back(make_elem(R, box.residues[i], box.precision[i]));
        h.coeffs.push_back(make_elem(R, Int(1)));
        Decision d = decide_box(R, h, true);
        if (d.decided) {
            o.kind = BoxOutcome::decided;
            o.type = d.type;
            return o;
        }
        int pick = -1;
        for (int i = 0; i < m; ++i)
            if (oring::is_zero(box.residues[i]) && box.precision[i] < m - i &&
                (pick < 0 || box.precision[i] < box.precision[pick]))
                pick = i;
        if (pick < 0)
            for (int i = 0; i < m; ++i)
                if (pick < 0 || box.precision[i] < box.precision[pick]) pick = i;
        if (box.precision[pick] >= max_depth_) {
            o.kind = BoxOutcome::undecided;
            return o;
        }
        o.kind = BoxOutcome::split;
        o.coeff = pick;
        return o;
    }

    // distribution of monic h = z^m mod p; returns decided part and the
    // mass that rescales back to the monic model
    std::pair<Dist, Rat> eisenstein_search(int m, int F) {
        const BaseRing& R = ring(F);
        long Q = R.q();
        Dist out;
        Rat to_monic = 0;
        FrontierBox root{std::vector<OElem>(m, oring::zero(R)), std::vector<int>(m, 1)};
        std::vector<FrontierBox> cur{root};
        std::string tag = std::to_string(m) + ":" + std::to_string(F);
        std::vector<FrontierBox> pending;
        std::function<BoxOutcome(const FrontierBox&)> fn = [&](const FrontierBox& b) { return process_box(R, m, b); };
        while (!cur.empty()) {
            auto outcomes = parallel_map<FrontierBox, BoxOutcome>(cur, fn, threads_);
            cells_ += static_cast<std::int64_t>(cur.size());
            std::vector<FrontierBox> next;
            for (size_t i = 0; i < cur.size(); ++i) {
                const FrontierBox& b = cur[i];
                int excess = 0;
                for (int k : b.precision) excess += k - 1;
                Rat mass(1);
                mass /= Rat(ipow(Int(Q), excess));
                switch (outcomes[i].kind) {
                    case BoxOutcome::self_similar: to_monic += mass; break;
                    case BoxOutcome::decided: out.mass[outcomes[i].type] += mass; break;
                    case BoxOutcome::undecided:
                        out.undecided += mass;
                        pending.push_back(b);
                        break;
                    case BoxOutcome::split: {
                        int c = outcomes[i].coeff;
                        Int step = ipow(Int(p_), b.precision[c]);
                        for (int t = 0; t < Q; ++t) {
                            FrontierBox child = b;
                            child.residues[c] = oring::add(b.residues[c], oring::scale(oring::lift(R, t), step));
                            child.precision[c] += 1;
                            next.push_back(std::move(child));
                        }
                        break;
                    }
                }
            }
            cur = std::move(next);
        }
        if (!pending.empty()) frontier_[tag] = pending;
        return {out, to_monic};
    }

    Level solve(int m, int F) {
        Level L;
        if (m == 1) {
            L.haar = L.monic = L.eis = Dist::point(FactorizationType::from_parts({{1, 1}}));
            return L;
        }
        long Q = ring(F).q();
        auto [aE, wEM] = eisenstein_search(m, F);
        Rat Qm = Rat(ipow(Int(Q), m));
        Rat Qm1 = Qm * Q;
        Dist aM, aH;
        Rat wME = Rat(Q) / Qm;
        Rat wHE = Rat((Q - 1) * (Q + 1)) / Qm1;
        Rat wHH = Rat(1) / Qm1;
        for (int d = 0; d <= m; ++d) {
            int j = m - d;
            for (auto& [pat, count] : patterns(d, F)) {
                bool cycle = (j == m) || (j == 0 && pat.size() == 1 && pat[0] == std::make_pair(1, m));
                if (cycle) continue;
                Dist acc = Dist::point(FactorizationType{});
                for (auto& [dd, e] : pat) acc = convolve(acc, block(dd, e, F));
                if (j == 1) acc = convolve(acc, Dist::point(FactorizationType::from_parts({{1, 1}})));
                if (j >= 2) acc = convolve(acc, level(j, F).eis);
                if (d == m) aM.add(acc, Rat(count) / Qm);
                aH.add(acc, Rat(count * (Q - 1)) / Qm1);
            }
        }
        Dist E = aE;
        E.add(aM, wEM);
        L.eis = E.scaled_by(1 / (1 - wEM * wME));
        L.monic = aM;
        L.monic.add(L.eis, wME);
        Dist H = aH;
        H.add(L.eis, wHE);
        L.haar = H.scaled_by(1 / (1 - wHH));
        return L;
    }
};

char digit_char(long d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

long char_digit(char c, long p) {
    long d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    if (c >= 'a' && c <= 'z') d = 10 + (c - 'a');
    if (d < 0 || d >= p) throw std::invalid_argument(std::string("bad checkpoint digit '") + c + "'");
    return d;
}

}  // namespace

DensityResult exact_density(int n, const BaseRing& R, Model model, int max_depth, const EnumerateOptions& opt) {
    if (n < 1) throw std::invalid_argument("degree must be >= 1");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    Solver S(R.p, max_depth, worker_count(opt.threads));
    const Level& L = S.level(n, R.f);
    const Dist* d = nullptr;
    switch (model) {
        case Model::haar:
        case Model::projective: d = &L.haar; break;
        case Model::monic: d = &L.monic; break;
        case Model::eisenstein: d = &L.eis; break;
    }
    DensityResult res;
    res.n = n;
    res.p = R.p;
    res.f = R.f;
    res.model = model;
    res.max_depth = max_depth;
    Rat scale = 1;
    if (model == Model::projective) {
        Int pn = 0, qi = 1;
        for (int i = 0; i <= n; ++i) {
            pn += qi;
            qi *= R.q();
        }
        scale = Rat(pn);
    }
    for (auto& t : all_types(n)) res.densities[t] = 0;
    for (auto& [t, v] : d->mass) {
        if (t.degree() != n) throw std::logic_error("enumeration produced a type of the wrong degree");
        res.densities[t] += v * scale;
    }
    res.undecided_mass = d->undecided * scale;
    res.cells_processed = S.cells();
    if (opt.frontier_out) {
        Checkpoint& ck = *opt.frontier_out;
        ck.n = n;
        ck.p = R.p;
        ck.f = R.f;
        ck.model = model;
        ck.depth = max_depth;
        ck.frontier = S.frontier();
    }
    return res;
}

DensityResult resume_density(const Checkpoint& ck, int max_depth, const EnumerateOptions& opt) {
    if (max_depth < ck.depth)
        throw std::invalid_argument("resume depth " + std::to_string(max_depth) + " is below checkpoint depth " +
                                    std::to_string(ck.depth));
    BaseRing R = make_base_ring(ck.p, ck.f);
    Checkpoint again;
    EnumerateOptions o1 = opt;
    o1.frontier_out = &again;
    exact_density(ck.n, R, ck.model, ck.depth, o1);
    if (again.frontier != ck.frontier)
        throw std::invalid_argument("checkpoint frontier does not match the re-derived run");
    return exact_density(ck.n, R, ck.model, max_depth, opt);
}

std::string write_checkpoint(const Checkpoint& c) {
    if (c.p > 36) throw std::invalid_argument("checkpoint digits support p <= 36");
    std::ostringstream os;
    os << c.n << ' ' << c.p << ' ' << c.f << ' ' << model_name(c.model) << ' ' << c.depth << '\n';
    for (auto& [tag, boxes] : c.frontier) {
        for (auto& b : boxes) {
            os << tag << ' ';
            for (size_t i = 0; i < b.residues.size(); ++i) {
                if (i) os << '.';
                for (auto& comp : b.residues[i]) {
                    Int x = comp;
                    std::string digits(b.precision[i], '0');
                    for (int k = b.precision[i] - 1; k >= 0; --k) {
                        Int r;
                        mpz_fdiv_qr_ui(x.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), c.p);
                        digits[k] = digit_char(r.get_si());
                    }
                    if (x != 0) throw std::invalid_argument("checkpoint residue exceeds its precision");
                    os << digits;
                }
            }
            os << '\n';
        }
    }
    return os.str();
}

Checkpoint read_checkpoint(const std::string& text) {
    std::istringstream is(text);
    Checkpoint c;
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty checkpoint");
    {
        std::istringstream hs(header);
        std::string model;
        if (!(hs >> c.n >> c.p >> c.f >> model >> c.depth)) throw std::invalid_argument("malformed checkpoint header");
        std::string extra;
        if (hs >> extra) throw std::invalid_argument("malformed checkpoint header");
        c.model = parse_model(model);
        if (c.n < 1 || !is_prime(c.p) || c.p > 36 || c.f < 1 || c.depth < 1)
            throw std::invalid_argument("checkpoint header out of range");
    }
    std::string line;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("checkpoint line " + std::to_string(lineno) + ": " + why);
        };
        std::istringstream ls(line);
        std::string tag, body, extra;
        if (!(ls >> tag >> body) || (ls >> extra)) fail("expected '<m>:<F> <digits>'");
        auto colon = tag.find(':');
        if (colon == std::string::npos) fail("bad tag");
        int m = 0, F = 0;
        try {
            m = std::stoi(tag.substr(0, colon));
            F = std::stoi(tag.substr(colon + 1));
        } catch (const std::exception&) {
            fail("bad tag");
        }
        if (m < 2 || m > c.n || F < c.f || F % c.f != 0) fail("tag out of range");
        FrontierBox b;
        std::stringstream bs(body);
        std::string coef;
        while (std::getline(bs, coef, '.')) {
            if (coef.empty() || coef.size() % F != 0) fail("coefficient length is not a multiple of F");
            int k = static_cast<int>(coef.size() / F);
            if (k > c.depth) fail("coefficient precision exceeds the checkpoint depth");
            OElem e(F);
            for (int j = 0; j < F; ++j) {
                Int x = 0;
                for (int t = 0; t < k; ++t) x = x * c.p + char_digit(coef[j * k + t], c.p);
                e[j] = x;
            }
            b.residues.push_back(e);
            b.precision.push_back(k);
        }
        if (static_cast<int>(b.residues.size()) != m) fail("wrong number of coefficients");
        c.frontier[tag].push_back(b);
    }
    return c;
}

McResult monte_carlo(int n, const BaseRing& R, Model model, std::int64_t samples, std::uint64_t seed, int depth,
                     int threads) {
    if (samples < 0) throw std::invalid_argument("samples must be >= 0");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    McResult res;
    res.samples = samples;
    if (samples == 0) return res;
    Int pk = ipow(Int(R.p), depth);
    if (!pk.fits_slong_p()) throw std::invalid_argument("monte_carlo depth too large for this prime");
    const std::uint64_t range = pk.get_ui();
    const std::int64_t block = 1024;
    std::int64_t nblocks = (samples + block - 1) / block;
    std::vector<std::int64_t> ids(nblocks);
    for (std::int64_t i = 0; i < nblocks; ++i) ids[i] = i;
    using Counts = std::map<std::string, std::int64_t>;  // "" marks undecided
    std::function<Counts(const std::int64_t&)> run = [&](const std::int64_t& b) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(ss);
        std::uniform_int_distribution<std::uint64_t> uni(0, range - 1);
        std::uniform_int_distribution<std::uint64_t> uni_low(0, range / R.p - 1);
        Counts cnt;
        std::int64_t lo = b * block, hi = std::min(samples, lo + block);
        for (std::int64_t s = lo; s < hi; ++s) {
            Cell c;
            c.n = n;
            c.depth = depth;
            bool monic = model == Model::monic || model == Model::eisenstein;
            c.model = monic ? CellModel::monic : CellModel::haar;
            int count = monic ? n : n + 1;
            for (int i = 0; i < count; ++i) {
                OElem e(R.f);
                for (int j = 0; j < R.f; ++j) {
                    std::uint64_t v = model == Model::eisenstein ? uni_low(rng) * R.p : uni(rng);
                    e[j] = Int(static_cast<unsigned long>(v));
                }
                c.residues.push_back(e);
            }
            Decision d = cell_decided(R, c);
            if (d.decided) {
                ++cnt[d.type.str()];
                continue;
            }
            // no certificate for the whole cell: classify the drawn polynomial itself
            std::vector<OElem> coeffs = c.residues;
            if (monic) coeffs.push_back(oring::from_int(R, Int(1)));
            if (oring::is_zero(coeffs.back())) {
                ++cnt[std::string()];
                continue;
            }
            try {
                ++cnt[classify(R, make_poly(R, coeffs)).str()];
            } catch (const NotSquarefree&) {
                ++cnt[std::string()];
            }
        }
        return cnt;
    };
    auto parts = parallel_map<std::int64_t, Counts>(ids, run, worker_count(threads));
    Counts total;
    for (auto& c : parts)
        for (auto& [k, v] : c) total[k] += v;
    for (auto& [k, v] : total) {
        if (k.empty()) {
            res.undecided = v;
            continue;
        }
        McEntry e;
        e.count = v;
        e.frequency = Rat(v, samples);
        e.frequency.canonicalize();
        double f = static_cast<double>(v) / static_cast<double>(samples);
        e.sigma = std::sqrt(f * (1 - f) / static_cast<double>(samples));
        e.lo = f - 4 * e.sigma;
        e.hi = f + 4 * e.sigma;
        res.frequencies[FactorizationType::parse(k)] = e;
    }
    return res;
}

}  // namespace pcheb

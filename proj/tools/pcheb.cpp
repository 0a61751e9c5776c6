// pcheb: batch front-end for densities, posets, forms and sncd fixtures

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "pcheb/enumerate.hpp"
#include "pcheb/fit.hpp"
#include "pcheb/serialize.hpp"
#include "report.hpp"

using namespace pcheb;

namespace {

struct Common {
    std::string out;
    bool pretty = false;
};

int thread_request() {
    const char* env = std::getenv("PCHEB_THREADS");
    return env ? std::atoi(env) : 0;
}

json values_json(const PalindromicForm& f, int m_max) {
    json v = json::object();
    for (int m = 1; m <= m_max; ++m) v[std::to_string(m)] = rat_json(f.evaluate_rational(m));
    return v;
}

json form_report(const PalindromicForm& f, int weight, int m_max) {
    return {{"form", form_to_json(f)}, {"text", f.str()}, {"values", values_json(f, m_max)},
            {"weight", weight}, {"palindromic", f.is_palindromic(weight)}};
}

// ---- density ----

struct DensityCfg {
    int n = 2;
    long p = 3;
    int f = 1;
    std::string model = "haar";
    int max_depth = 8;
    long samples = 0;
    std::uint64_t seed = 1;
    std::string threshold = "0";
    std::string resume, checkpoint;
};

int run_density(const DensityCfg& c, const Common& io) {
    std::vector<std::string> inputs;
    EnumerateOptions opt;
    opt.threads = thread_request();
    Checkpoint frontier;
    opt.frontier_out = &frontier;

    DensityResult r;
    json cfg;
    if (!c.resume.empty()) {
        std::string text = report::read_file(c.resume);
        inputs.push_back(text);
        Checkpoint ck = read_checkpoint(text);
        r = resume_density(ck, c.max_depth, opt);
        cfg = {{"n", ck.n}, {"p", ck.p}, {"f", ck.f}, {"model", model_name(ck.model)}, {"resume", c.resume}};
    } else {
        Model model = parse_model(c.model);
        r = exact_density(c.n, make_base_ring(c.p, c.f), model, c.max_depth, opt);
        cfg = {{"n", c.n}, {"p", c.p}, {"f", c.f}, {"model", model_name(model)}};
    }
    cfg["max_depth"] = c.max_depth;
    cfg["samples"] = c.samples;
    cfg["seed"] = c.seed;
    cfg["threshold"] = c.threshold;
    cfg["threads"] = opt.threads;

    json result = density_to_json(r);
    if (c.samples > 0) {
        auto mc = monte_carlo(r.n, make_base_ring(r.p, r.f), r.model, c.samples, c.seed, r.max_depth, opt.threads);
        json freq = json::object();
        for (auto& [t, e] : mc.frequencies)
            freq[t.str()] = {{"count", e.count}, {"frequency", rat_json(e.frequency)}, {"sigma", e.sigma},
                             {"interval", {e.lo, e.hi}}};
        result["monte_carlo"] = {{"samples", mc.samples}, {"undecided", mc.undecided}, {"frequencies", freq}};
    }
    if (!c.checkpoint.empty()) {
        std::ofstream out(c.checkpoint, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + c.checkpoint);
        out << write_checkpoint(frontier);
    }
    bool partial = r.undecided_mass > rat_from_string(c.threshold);
    report::emit(report::envelope("density", cfg, inputs, result, partial ? "partial" : "pass"), io.out, io.pretty);
    return partial ? report::partial : report::ok;
}

// ---- pairs ----

int run_pairs(int n, const Common& io) {
    PairPoset P(PermGroup::symmetric(n));
    json result = poset_to_json(P);
    auto sa = sigma_alpha_matrix(P);
    json types = json::array(), A = json::array();
    for (auto& t : sa.types) types.push_back(t.str());
    for (size_t i = 0; i < sa.A.size(); ++i) {
        json row = json::array();
        for (auto& x : sa.A[i]) row.push_back(rat_json(x));
        A.push_back(row);
    }
    result["sigma_types"] = types;
    result["sigma_alpha"] = A;
    result["pair_count"] = P.size();
    result["subgroup_count"] = P.subgroup_count();
    report::emit(report::envelope("pairs", {{"n", n}}, {}, result, "pass"), io.out, io.pretty);
    return report::ok;
}

// ---- forms ----

struct FormsCfg {
    std::string input, trace;
    long q = 0;
    int m_max = 6;
    int weight = -1;
    int projective = -1;
    int eta = 0;
    int k = 1;
};

int run_forms(const FormsCfg& c, const Common& io) {
    std::vector<std::string> inputs;
    json cfg = {{"m_max", c.m_max}};
    json result;
    bool all = true;
    if (!c.trace.empty()) {
        inputs.push_back(report::read_file(c.trace));
        cfg["trace"] = c.trace;
        std::vector<Cyclo> lambda;
        TraceData d = trace_from_json(json::parse(inputs.back()), &lambda);
        int w = c.weight >= 0 ? c.weight : d.dim;
        auto plain = point_count_form(d);
        result["untwisted"] = form_report(plain, w, c.m_max);
        all = all && plain.is_palindromic(w);
        if (!lambda.empty()) {
            if (lambda.size() != d.terms.size()) throw std::invalid_argument("lambda list must match the trace terms");
            TraceData tw = d;
            for (size_t j = 0; j < tw.terms.size(); ++j) tw.terms[j].coeff = tw.terms[j].coeff * lambda[j];
            auto twisted = point_count_form(tw);
            auto sym = symmetrized_trace_form(d, lambda);
            // the twisted count alone is expected to fail
            result["twisted"] = form_report(twisted, w, c.m_max);
            result["symmetrized"] = form_report(sym, w, c.m_max);
            all = all && sym.is_palindromic(w);
        }
    } else {
        if (c.q < 2) throw std::invalid_argument("--q is required");
        cfg["q"] = c.q;
        PalindromicForm f(c.q);
        int w = c.weight;
        if (!c.input.empty()) {
            inputs.push_back(report::read_file(c.input));
            cfg["input"] = c.input;
            f = form_from_json(json::parse(inputs.back()), c.q);
        } else if (c.projective >= 0) {
            cfg["projective"] = c.projective;
            f = projective_space(c.q, c.projective);
            if (w < 0) w = c.projective;
        } else if (c.eta > 0) {
            cfg["eta"] = c.eta;
            cfg["k"] = c.k;
            f = eta_delta(c.q, c.eta, c.k).second;
            if (w < 0) w = 1;
        } else {
            throw std::invalid_argument("give one of --input, --trace, --projective, --eta");
        }
        if (w < 0) throw std::invalid_argument("--weight is required for this form");
        cfg["weight"] = w;
        result = form_report(f, w, c.m_max);
        all = f.is_palindromic(w);
    }
    report::emit(report::envelope("forms", cfg, inputs, result, all ? "pass" : "fail"), io.out, io.pretty);
    return all ? report::ok : report::failed;
}

// ---- sncd ----

int run_sncd(const std::string& input, const std::vector<long>& qs, int m_max, const Common& io) {
    std::string text = report::read_file(input);
    json j = json::parse(text);
    json per_q = json::array();
    bool all = true;
    for (long q : qs) {
        report::prime_power(q);
        json entry = {{"q", q}};
        if (has_twist(j)) {
            auto fx = twist_from_json(j, q);
            auto f = eta_twisted_sum(fx);
            entry["eta_twisted_sum"] = form_report(f, fx.base.dim, m_max);
            all = all && f.is_palindromic(fx.base.dim);
        } else {
            auto d = sncd_from_json(j, q);
            auto f = eta_sncd(d);
            entry["eta"] = form_report(f, d.dim, m_max);
            all = all && f.is_palindromic(d.dim);
        }
        per_q.push_back(entry);
    }
    json cfg = {{"input", input}, {"q", qs}, {"m_max", m_max}};
    report::emit(report::envelope("sncd", cfg, {text}, {{"runs", per_q}}, all ? "pass" : "fail"), io.out, io.pretty);
    return all ? report::ok : report::failed;
}

// ---- verify ----

struct VerifyCfg {
    int n = 2;
    std::vector<long> qs;
    int deg_bound = 6;
    int max_depth = 8;
    std::string fixtures;
    long corrupt = 0;
    bool exploratory = false;
};

std::map<long, DensityResult> densities_over(int n, const std::vector<long>& qs, Model model, int depth, int threads) {
    std::map<long, DensityResult> out;
    EnumerateOptions opt;
    opt.threads = threads;
    for (long q : qs) {
        auto [p, f] = report::prime_power(q);
        out[q] = exact_density(n, make_base_ring(p, f), model, depth, opt);
    }
    return out;
}

// fit every sigma; returns the fitted function per sigma (absent on failure)
std::map<FactorizationType, std::optional<RationalFunction>> fit_all(const std::map<long, DensityResult>& d, int n,
                                                                     int deg_bound, json& checks, bool& ok,
                                                                     const std::string& label) {
    std::map<FactorizationType, std::optional<RationalFunction>> out;
    for (auto& t : all_types(n)) {
        std::vector<std::pair<long, Rat>> pts;
        for (auto& [q, r] : d) pts.emplace_back(q, r.densities.at(t));
        json c = {{"check", label + "fit " + t.str()}};
        try {
            auto rf = fit_rational(pts, deg_bound);
            out[t] = rf;
            c["pass"] = true;
            c["function"] = rational_function_json(rf);
        } catch (const FitError& e) {
            out[t] = std::nullopt;
            c["pass"] = false;
            c["error"] = e.what();
            if (e.q()) c["bad_q"] = e.q();
            ok = false;
        }
        checks.push_back(c);
    }
    return out;
}

int run_verify(VerifyCfg c, const Common& io) {
    if (c.qs.empty()) c.qs = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25};
    int threads = thread_request();
    json cfg = {{"n", c.n}, {"q", c.qs}, {"deg_bound", c.deg_bound}, {"max_depth", c.max_depth},
                {"fixtures", c.fixtures}, {"corrupt", c.corrupt}, {"exploratory", c.exploratory},
                {"threads", threads}};
    std::vector<std::string> inputs;

    auto dens = densities_over(c.n, c.qs, Model::haar, c.max_depth, threads);
    bool partial = false, ok = true;
    json checks = json::array();
    for (auto& [q, r] : dens) {
        Rat s = r.undecided_mass;
        for (auto& [t, v] : r.densities) s += v;
        bool complete = s == 1;
        ok = ok && complete;
        partial = partial || r.undecided_mass != 0;
        checks.push_back({{"check", "completeness q=" + std::to_string(q)}, {"pass", complete && r.undecided_mass == 0},
                          {"undecided_mass", rat_json(r.undecided_mass)}});
    }
    if (c.corrupt) {
        auto it = dens.find(c.corrupt);
        if (it == dens.end()) throw std::invalid_argument("--corrupt q is not in the q list");
        it->second.densities.begin()->second += Rat(1, 1000);
    }
    auto fits = fit_all(dens, c.n, c.deg_bound, checks, ok, "");
    for (auto& [t, rf] : fits)
        if (rf) {
            bool pal = check_palindromy(*rf);
            ok = ok && pal;
            checks.push_back({{"check", "palindromy " + t.str()}, {"pass", pal}});
        }

    // incidence chain against the geometric fixtures
    if (!c.fixtures.empty() && (c.n == 2 || c.n == 3)) {
        auto load = [&](const std::string& name) {
            inputs.push_back(report::read_file(c.fixtures + "/" + name + ".json"));
            return json::parse(inputs.back());
        };
        std::vector<std::pair<std::string, json>> fx;
        if (c.n == 2) {
            fx.emplace_back("diagonal", load("diagonal"));
            fx.emplace_back("twisted", load("twisted"));
        } else {
            fx.emplace_back("stretch", load("stretch"));
        }
        for (auto& [q, r] : dens) {
            Rat pn = projective_space(q, c.n).evaluate_rational(1);
            for (auto& [name, j] : fx) {
                Rat eta, expect;
                if (name == "diagonal") {
                    eta = eta_sncd(sncd_from_json(j, q)).evaluate_rational(1);
                    expect = 2 * pn * r.density("1,1");
                } else if (name == "twisted") {
                    // the involution is its own inverse: rho_tau + rho_tau^-1 = 2 rho(2,{2})
                    eta = eta_twisted_sum(twist_from_json(j, q)).evaluate_rational(1);
                    expect = 2 * pn * 2 * r.density("2");
                } else {
                    eta = eta_sncd(sncd_from_json(j, q)).evaluate_rational(1);
                    expect = 6 * pn * r.density("1,1,1");
                }
                bool pass = eta == expect;
                ok = ok && pass;
                checks.push_back({{"check", "incidence " + name + " q=" + std::to_string(q)}, {"pass", pass},
                                  {"eta", rat_json(eta)}, {"from_densities", rat_json(expect)}});
            }
        }
    }

    json exploratory = json::array();
    if (c.exploratory) {
        bool ignored = true;
        auto alpha = fit_all(densities_over(c.n, c.qs, Model::monic, c.max_depth, threads), c.n, c.deg_bound,
                             exploratory, ignored, "monic ");
        auto beta = fit_all(densities_over(c.n, c.qs, Model::eisenstein, c.max_depth, threads), c.n, c.deg_bound,
                            exploratory, ignored, "eisenstein ");
        for (auto& t : all_types(c.n)) {
            bool pass = alpha[t] && beta[t] && alpha[t]->at_inverse() == *beta[t];
            exploratory.push_back({{"check", "alpha(1/t) = beta(t) " + t.str()}, {"pass", pass}});
        }
    }

    json result = {{"checks", checks}};
    if (c.exploratory) result["exploratory"] = exploratory;
    std::string status = !ok ? "fail" : partial ? "partial" : "pass";
    report::emit(report::envelope("verify", cfg, inputs, result, status), io.out, io.pretty);
    return !ok ? report::failed : partial ? report::partial : report::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic factorization densities and palindromic forms"};
    app.require_subcommand(1);
    Common io;
    auto add_io = [&](CLI::App* s) {
        s->add_option("-o,--output", io.out, "output path (default stdout)");
        s->add_flag("--pretty", io.pretty, "indent JSON");
    };

    DensityCfg dc;
    auto* density = app.add_subcommand("density", "exact densities of factorization types");
    density->add_option("--n", dc.n, "degree")->check(CLI::Range(1, 12));
    density->add_option("--p", dc.p, "prime")->check(CLI::Range(2L, 36L));
    density->add_option("--f", dc.f, "residue degree of the base")->check(CLI::Range(1, 6));
    density->add_option("--model", dc.model, "haar|monic|eisenstein|projective");
    density->add_option("--max-depth", dc.max_depth, "precision bound")->check(CLI::PositiveNumber);
    density->add_option("--samples", dc.samples, "Monte Carlo samples (0: none)")->check(CLI::NonNegativeNumber);
    density->add_option("--seed", dc.seed, "Monte Carlo seed");
    density->add_option("--threshold", dc.threshold, "undecided mass tolerated before exit 2");
    density->add_option("--resume", dc.resume, "continue from a checkpoint file");
    density->add_option("--checkpoint", dc.checkpoint, "write the undecided frontier here");
    add_io(density);

    int pairs_n = 3;
    auto* pairs = app.add_subcommand("pairs", "admissible pairs of S_n");
    pairs->add_option("--n", pairs_n, "degree")->check(CLI::Range(1, 6));
    add_io(pairs);

    FormsCfg fc;
    auto* forms = app.add_subcommand("forms", "evaluate and test palindromic forms");
    forms->add_option("--input", fc.input, "form JSON");
    forms->add_option("--trace", fc.trace, "Frobenius trace data JSON");
    forms->add_option("--q", fc.q, "residue field size");
    forms->add_option("--m-max", fc.m_max, "evaluate at m = 1..m_max")->check(CLI::Range(1, 64));
    forms->add_option("--weight", fc.weight, "palindromy weight");
    forms->add_option("--projective", fc.projective, "point count of P^N");
    forms->add_option("--eta", fc.eta, "eta_e kernel with this e");
    forms->add_option("--k", fc.k, "base q^k for --eta")->check(CLI::PositiveNumber);
    add_io(forms);

    std::string sncd_in;
    std::vector<long> sncd_q;
    int sncd_m = 4;
    auto* sncd = app.add_subcommand("sncd", "evaluate an sncd fixture");
    sncd->add_option("--input", sncd_in, "fixture JSON")->required();
    sncd->add_option("--q", sncd_q, "residue field sizes")->required();
    sncd->add_option("--m-max", sncd_m, "evaluate at m = 1..m_max")->check(CLI::Range(1, 64));
    add_io(sncd);

    VerifyCfg vc;
    auto* verify = app.add_subcommand("verify", "fit, palindromy and incidence checks");
    verify->add_option("--n", vc.n, "degree")->check(CLI::Range(1, 6));
    verify->add_option("--q", vc.qs, "prime powers to sample");
    verify->add_option("--deg-bound", vc.deg_bound, "fit degree bound")->check(CLI::NonNegativeNumber);
    verify->add_option("--max-depth", vc.max_depth, "precision bound")->check(CLI::PositiveNumber);
    verify->add_option("--fixtures", vc.fixtures, "directory with sncd fixtures");
    verify->add_option("--corrupt", vc.corrupt, "perturb one density at this q (negative control)");
    verify->add_flag("--exploratory", vc.exploratory, "also fit monic/eisenstein models and compare");
    add_io(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? report::ok : report::usage;
    }
    try {
        if (*density) return run_density(dc, io);
        if (*pairs) return run_pairs(pairs_n, io);
        if (*forms) return run_forms(fc, io);
        if (*sncd) return run_sncd(sncd_in, sncd_q, sncd_m, io);
        if (*verify) return run_verify(vc, io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::usage;
    }
    return report::usage;
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcheb/factor.hpp"

namespace pcheb {

enum class Model { haar, monic, eisenstein, projective };

std::string model_name(Model m);
Model parse_model(const std::string& s);

struct DensityResult {
    int n = 0;
    long p = 0;
    int f = 1;
    Model model = Model::haar;
    int max_depth = 0;
    std::map<FactorizationType, Rat> densities;  // every type of degree n
    Rat undecided_mass = 0;
    std::int64_t cells_processed = 0;

    long q() const { return lpow(p, f); }
    Rat density(const std::string& sigma) const;
};

// pending boxes of one sub-problem: tag is "<m>:<F>", boxes are
// per-coefficient (residue, precision) lists
struct FrontierBox {
    std::vector<OElem> residues;
    std::vector<int> precision;
    bool operator==(const FrontierBox&) const = default;
};

struct Checkpoint {
    int n = 0;
    long p = 0;
    int f = 1;
    Model model = Model::haar;
    int depth = 0;
    std::map<std::string, std::vector<FrontierBox>> frontier;
    bool operator==(const Checkpoint&) const = default;
};

std::string write_checkpoint(const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& text);

struct EnumerateOptions {
    int threads = 0;                      // 0: PCHEB_THREADS or hardware
    Checkpoint* frontier_out = nullptr;   // filled with the undecided boxes
};

int worker_count(int requested);

DensityResult exact_density(int n, const BaseRing& R, Model model, int max_depth, const EnumerateOptions& opt = {});

// re-derive the checkpointed run, check its frontier, then continue to max_depth
DensityResult resume_density(const Checkpoint& ck, int max_depth, const EnumerateOptions& opt = {});

struct McEntry {
    std::int64_t count = 0;
    Rat frequency = 0;
    double sigma = 0;  // binomial standard error of the frequency
    double lo = 0, hi = 0;  // 4-sigma interval
};

struct McResult {
    std::map<FactorizationType, McEntry> frequencies;
    std::int64_t undecided = 0;
    std::int64_t samples = 0;
};

McResult monte_carlo(int n, const BaseRing& R, Model model, std::int64_t samples, std::uint64_t seed, int depth,
                     int threads = 0);

}  // namespace pcheb

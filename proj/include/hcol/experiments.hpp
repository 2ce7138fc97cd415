#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hcol/core.hpp"
#include "hcol/hypergraph.hpp"

namespace hcol {

// Rounds, core membership and edge survival as a JSON object.
std::string core_trace_json(const CoreTrace& trace);

enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::vector<int> q_grid{3};
    std::vector<int> k_grid{3};
    std::vector<double> c_grid{1.0};
    std::int64_t n = 1000;
    int trials = 1;
    std::uint64_t base_seed = 1;
    int L = 3;                 // max cycle length
    int depth_budget = 6;      // recolouring certificates
    int vertex_cap = 200;      // certificate attempts per trial
    bool planted = false;      // cycles experiment: plant a balanced map first
    std::int64_t scan_samples = 10000;
    int workers = 1;
    OutputFormat format = OutputFormat::csv;

    void validate() const;  // throws std::invalid_argument
};

// Runs fn(trial) for trial in [0, trials) on a bounded worker pool; results
// land at their trial index, so output order is deterministic.
void parallel_trials(int trials, int workers, const std::function<void(int)>& fn);

// per-trial seed stream
inline std::uint64_t trial_seed(std::uint64_t base, int trial) {
    return base + static_cast<std::uint64_t>(trial);
}

// Threshold table over the (q,k) grid.
int run_thresholds(const ExperimentConfig& cfg, std::ostream& os);

// Cycle censuses over gen_multi (or gen_planted) draws plus Poisson fits.
int run_cycles(const ExperimentConfig& cfg, std::ostream& os);

// Plant, strip, record core fractions against the Upsilon prediction.
int run_core(const ExperimentConfig& cfg, std::ostream& os);

// Recolouring certificates for sampled non-core vertices; at oracle scale the
// exact BFS cross-check runs as well.
int run_frozen(const ExperimentConfig& cfg, std::ostream& os);

// Landscape scan of the pair-moment functional.
int run_moments(const ExperimentConfig& cfg, std::ostream& os);

// Exact-count oracles on tiny instances.
int run_oracle(const ExperimentConfig& cfg, std::ostream& os);

}  // namespace hcol

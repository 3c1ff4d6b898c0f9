#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qfzeros/instance_io.hpp"
#include "qfzeros/oracle.hpp"

namespace qfz {

/**
 * Deterministic RNG: mt19937_64 (bit-exact by the standard) seeded through
 * splitmix64, with hand-rolled rejection sampling since the standard
 * distributions are not portable. Per-instance streams come from splitting
 * the master seed with the instance id.
 */
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t& state);
    static SplitRng for_instance(std::uint64_t seed, std::uint64_t instance_id);
    static const char* name() { return "mt19937_64/splitmix64"; }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [lo, hi], inclusive; unbiased by rejection.
    long uniform(long lo, long hi);

  private:
    std::mt19937_64 engine_;
};

struct ExperimentConfig {
    std::size_t n = 3;
    std::size_t count = 1;
    long h_max = 10;
    long eta_max = 4;
    std::uint64_t seed = 0;
    std::vector<std::string> pipelines = {"pair3"};  // subset of solve|pair|pair3|avoid
    std::size_t hyperplane_count = 2;                // k for avoid runs
    std::optional<Int> radius_override;
    std::optional<Int> max_radius_override;
    double epsilon = 0.1;
    bool with_oracle = true;  // also compute independent oracle heights per row
};

struct RandomInstance {
    ProblemInstance instance;
    IntVec known_zero;
};

/// Gram matrix U^T G0 U with G0 = hyperbolic plane + random diagonal and U a
/// short product of random unimodular shears; resampled until the height fits.
/// The preserved zero U^{-1} e_1 seeds xi, so the instance is always solvable.
RandomInstance random_isotropic_instance(std::size_t n, long h_max, long eta_max, SplitRng& rng);

/// k random nonzero forms with entries in [-3, 3], resampled until the known
/// zero set does not collapse onto any of them.
HyperplaneSet random_feasible_hyperplanes(const QuadraticForm& q, const IntVec& known_zero,
                                          std::size_t k, SplitRng& rng);

struct ExperimentRow {
    std::size_t id = 0;
    std::string pipeline;
    std::string status;  // ok | unknown | error:<what>
    std::size_t n = 0;
    Int h, eta, delta;
    Rat theta_val;
    std::string case_path;
    std::vector<IntVec> outputs;
    Int a_norm_sq, b_norm_sq;  // zero when absent
    std::optional<Int> oracle_a_norm_sq;
    std::optional<Int> oracle_pair_key;
    std::vector<BoundReport> reports;
    double chain_ratio = 0.0;  // avoid case 2: ||a|| / (eta^3 H^4 ||x||)
    double wall_ms = 0.0;
};

struct RatioStat {
    std::string pipeline, kind, variant;
    std::size_t count = 0;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
};

struct ExperimentSummary {
    std::map<std::string, std::size_t> ok, unknown, error;
    std::vector<RatioStat> ratios;
    double avoid_chain_max = 0.0;
    std::size_t avoid_chain_count = 0;
};

struct ExperimentOutput {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;
    ExperimentSummary summary;
};

ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Fixed-column CSV with a leading header comment documenting the columns.
std::string rows_to_csv(const ExperimentOutput& out);
json output_to_json(const ExperimentOutput& out);

}  // namespace qfz

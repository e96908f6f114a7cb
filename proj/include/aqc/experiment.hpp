#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqc/evolve.hpp"
#include "aqc/graph.hpp"

namespace aqc {

struct RunConfig {
  double target_p = 0.125;
  double target_tol = 1.0 / 400.0;
  double bracket_T0 = 1.0;
  double bracket_factor = 1.5;
  double bracket_cap = 1e4;
  int max_bisect = 100;
  EvolutionConfig evo;  // T is set per probe
};

enum class RunStatus {
  ok,                    // |p(T_found) - target| <= tol, first upward crossing
  trivial,               // p >= target already at the bracket floor
  bracket_cap_exceeded,  // no T <= bracket_cap reached the target
  failed,                // integrator gave up (max_steps) or bisection stalled
};

const char* to_string(RunStatus s);

struct RunRecord {
  std::uint64_t seed = 0;
  int n = 0;
  int k = 0;
  bool unique = false;
  double T_found = 0.0;
  double p_at_T = 0.0;
  int probes = 0;             // evolutions performed by the search
  std::uint64_t steps = 0;    // accepted steps of the final evolution
  double norm_drift = 0.0;    // of the final evolution
  RunStatus status = RunStatus::ok;
};

/// Smallest T at which p(T) reaches the target from below: geometric
/// bracketing from bracket_T0 by bracket_factor, then bisection on the first
/// bracketing interval until |p(T) - target| <= target_tol. Only the endpoint
/// condition is certified; dips below the target inside the bracket are
/// permitted.
RunRecord find_runtime(const Graph& g, const InstanceClassification& cls,
                       const RunConfig& cfg);

struct MedianCI {
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int rank_lo = 0;  // 1-based order statistics
  int rank_hi = 0;
};

/// Distribution-free central binomial(N, 1/2) interval on the median:
/// ranks are the alpha/2 and 1-alpha/2 binomial quantiles, clamped to [1, N].
MedianCI median_ci(std::vector<double> values, double confidence = 0.95);

struct FitResult {
  double a = 0.0, b = 0.0, c = 0.0;  // T(n) = a n^2 + b n + c
  std::vector<double> residuals;
};

/// Ordinary least squares on (n, median) pairs.
FitResult fit_quadratic(const std::vector<std::pair<double, double>>& points);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  std::vector<std::uint64_t> counts;
};

/// Left-closed right-open bins; the top edge is assigned to the last bin, so
/// every value in [lo, hi] lands in a bin. Without an explicit range the
/// bins cover min..max of the data. Values outside an explicit range are
/// clamped into the edge bins. Empty input is an error.
Histogram histogram_bins(std::span<const double> values, int bin_count,
                         std::optional<std::pair<double, double>> range = {});
Histogram histogram_width(std::span<const double> values, double bin_width,
                          std::optional<std::pair<double, double>> range = {});

/// Deterministic instance sets: instance i of a group is drawn with
/// sample_until on the stream derive(derive(campaign_seed, kTagSample), group)
/// where successive attempts across the whole group consume one shared seed
/// sequence, so instances are distinct and reproducible.
std::vector<SampledInstance> sample_instances(int n, const SampleFilter& filter,
                                              int count, std::uint64_t campaign_seed,
                                              std::uint64_t attempt_cap = 1'000'000);

struct CampaignConfig {
  int n_lo = 7;
  int n_hi = 13;
  int instances_per_n = 100;
  std::uint64_t seed = 1;
  std::optional<int> k_filter;
  bool unique_required = true;
  RunConfig run;
  int jobs = 1;
};

struct PerNResult {
  int n = 0;
  std::vector<RunRecord> records;   // instance order; medians use ok+trivial
  std::vector<RunRecord> excluded;  // bracket-cap or failed records
  MedianCI median_T;
};

struct CampaignResult {
  std::vector<PerNResult> per_n;
  std::optional<FitResult> fit;  // over (n, median), when >= 3 points
};

/// Per-instance records may be supplied from a checkpoint: records matching
/// (seed, n, k) are reused instead of recomputed. on_record fires once per
/// freshly computed record, possibly from worker threads, for incremental
/// checkpointing.
CampaignResult campaign_scaling(const CampaignConfig& cfg,
                                std::span<const RunRecord> checkpoint = {},
                                std::ostream* progress = nullptr,
                                const std::function<void(const RunRecord&)>& on_record = {});

struct StudyConfig {
  int n = 15;
  int k = 5;
  double T_fixed = 0.0;
  int instances = 100;
  bool unique_required = true;
  std::uint64_t seed = 1;
  EvolutionConfig evo;
  int hist_bins = 40;  // over [0, 1]
  int jobs = 1;
};

struct ProbabilityStudy {
  double T = 0.0;
  std::vector<double> probabilities;  // instance order
  std::vector<std::uint64_t> seeds;
  double median = 0.0;
  double min = 0.0;
  double max_norm_drift = 0.0;
  Histogram hist;
};

/// Evolves `instances` sampled instances for exactly T_fixed and collects the
/// success probabilities. The same (seed, n, k, unique) always yields the
/// same instance set as campaign_scaling.
ProbabilityStudy probability_study(const StudyConfig& cfg, std::ostream* progress = nullptr);

/// Records CSV. Header (bit-exact):
/// seed,n,k,unique,T_found,p_at_T,probes,steps,norm_drift
void write_records_csv(std::span<const RunRecord> records, std::ostream& os);
std::vector<RunRecord> read_records_csv(std::istream& is);

}  // namespace aqc

#include "aqc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aqc/errors.hpp"
#include "aqc/rng.hpp"
#include "aqc/util.hpp"

namespace aqc {

namespace {

constexpr std::uint64_t kTagSampleStream = 0x53414D504C45ull;  // instance sampling

std::uint64_t group_key(int n, const std::optional<int>& k, bool unique) {
  return (static_cast<std::uint64_t>(n) << 16) |
         (static_cast<std::uint64_t>(k ? *k + 1 : 0) << 1) |
         (unique ? 1u : 0u);
}

double binom_half_cdf(int n, int m) {
  // P(Bin(n, 1/2) <= m), log-space terms
  if (m < 0) return 0.0;
  if (m >= n) return 1.0;
  double acc = 0.0;
  const double ln2n = n * std::log(2.0);
  for (int i = 0; i <= m; ++i)
    acc += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                    ln2n);
  return std::min(acc, 1.0);
}

int binom_half_quantile(int n, double q) {
  for (int m = 0; m <= n; ++m)
    if (binom_half_cdf(n, m) >= q) return m;
  return n;
}

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::trivial: return "trivial";
    case RunStatus::bracket_cap_exceeded: return "bracket_cap_exceeded";
    case RunStatus::failed: return "failed";
  }
  return "unknown";
}

RunRecord find_runtime(const Graph& g, const InstanceClassification& cls,
                       const RunConfig& cfg) {
  RunRecord rec;
  rec.seed = g.seed;
  rec.n = g.n;
  rec.k = cls.max_clique_size;
  rec.unique = cls.is_unique;

  auto basis = std::make_shared<const WeightKBasis>(g.n, cls.max_clique_size);
  const SubspaceHamiltonian ham(g, basis);
  const StateVector psi0 = initial_state(*basis);

  bool probe_failed = false;
  auto probe = [&](double T) {
    EvolutionConfig ecfg = cfg.evo;
    ecfg.T = T;
    EvolutionResult r = evolve(ham, ecfg, psi0);
    ++rec.probes;
    rec.steps = r.steps_accepted;
    rec.norm_drift = r.norm_drift;
    probe_failed = r.failed;
    return r.success_probability;
  };

  const double p0 =
      static_cast<double>(ham.clique_indices().size()) / static_cast<double>(basis->dim());

  double t_lo = 0.0;
  double t_hi = cfg.bracket_T0;
  double p_hi = probe(t_hi);
  if (probe_failed) {
    rec.status = RunStatus::failed;
    rec.T_found = t_hi;
    rec.p_at_T = p_hi;
    return rec;
  }

  if (p_hi >= cfg.target_p && p0 >= cfg.target_p) {
    // already above the target in the T -> 0 limit
    rec.status = RunStatus::trivial;
    rec.T_found = t_hi;
    rec.p_at_T = p_hi;
    return rec;
  }

  while (p_hi < cfg.target_p) {
    t_lo = t_hi;
    t_hi *= cfg.bracket_factor;
    if (t_hi > cfg.bracket_cap) {
      rec.status = RunStatus::bracket_cap_exceeded;
      rec.T_found = t_lo;
      rec.p_at_T = p_hi;
      return rec;
    }
    p_hi = probe(t_hi);
    if (probe_failed) {
      rec.status = RunStatus::failed;
      rec.T_found = t_hi;
      rec.p_at_T = p_hi;
      return rec;
    }
  }

  // bisection on the first bracketing interval; only the endpoint condition
  // |p(T) - target| <= tol is certified
  double cur_t = t_hi;
  double cur_p = p_hi;
  int iters = 0;
  while (std::abs(cur_p - cfg.target_p) > cfg.target_tol) {
    if (++iters > cfg.max_bisect) {
      rec.status = RunStatus::failed;
      break;
    }
    const double mid = 0.5 * (t_lo + t_hi);
    cur_p = probe(mid);
    cur_t = mid;
    if (probe_failed) {
      rec.status = RunStatus::failed;
      break;
    }
    if (cur_p >= cfg.target_p)
      t_hi = mid;
    else
      t_lo = mid;
  }
  rec.T_found = cur_t;
  rec.p_at_T = cur_p;
  return rec;
}

MedianCI median_ci(std::vector<double> values, double confidence) {
  if (values.empty()) throw std::invalid_argument("median_ci: empty sample");
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  MedianCI ci;
  ci.median = (n % 2 == 1) ? values[static_cast<std::size_t>(n / 2)]
                           : 0.5 * (values[static_cast<std::size_t>(n / 2 - 1)] +
                                    values[static_cast<std::size_t>(n / 2)]);
  const double alpha = 1.0 - confidence;
  ci.rank_lo = std::max(1, binom_half_quantile(n, alpha / 2));
  ci.rank_hi = std::min(n, binom_half_quantile(n, 1.0 - alpha / 2));
  ci.lo = values[static_cast<std::size_t>(ci.rank_lo - 1)];
  ci.hi = values[static_cast<std::size_t>(ci.rank_hi - 1)];
  return ci;
}

FitResult fit_quadratic(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_quadratic: need at least 3 points");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double nn = points[static_cast<std::size_t>(i)].first;
    x(i, 0) = nn * nn;
    x(i, 1) = nn;
    x(i, 2) = 1.0;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  FitResult fit;
  fit.a = beta(0);
  fit.b = beta(1);
  fit.c = beta(2);
  const Eigen::VectorXd r = y - x * beta;
  fit.residuals.assign(r.data(), r.data() + r.size());
  return fit;
}

namespace {

Histogram histogram_impl(std::span<const double> values, int bin_count, double lo, double hi) {
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(static_cast<std::size_t>(bin_count), 0);
  h.width = (hi - lo) / bin_count;
  for (double v : values) {
    int idx = (h.width > 0.0) ? static_cast<int>(std::floor((v - lo) / h.width)) : 0;
    idx = std::clamp(idx, 0, bin_count - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

}  // namespace

Histogram histogram_bins(std::span<const double> values, int bin_count,
                         std::optional<std::pair<double, double>> range) {
  if (values.empty()) throw std::invalid_argument("histogram: empty input");
  if (bin_count < 1) throw std::invalid_argument("histogram: bin_count must be >= 1");
  double lo, hi;
  if (range) {
    std::tie(lo, hi) = *range;
  } else {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
  }
  if (hi < lo) throw std::invalid_argument("histogram: empty range");
  return histogram_impl(values, bin_count, lo, hi);
}

Histogram histogram_width(std::span<const double> values, double bin_width,
                          std::optional<std::pair<double, double>> range) {
  if (values.empty()) throw std::invalid_argument("histogram: empty input");
  if (bin_width <= 0.0) throw std::invalid_argument("histogram: bin_width must be > 0");
  double lo, hi;
  if (range) {
    std::tie(lo, hi) = *range;
  } else {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
  }
  const int bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / bin_width)));
  Histogram h = histogram_impl(values, bins, lo, lo + bins * bin_width);
  h.width = bin_width;
  return h;
}

std::vector<SampledInstance> sample_instances(int n, const SampleFilter& filter, int count,
                                              std::uint64_t campaign_seed,
                                              std::uint64_t attempt_cap) {
  if (count < 1) throw std::invalid_argument("sample_instances: count must be >= 1");
  const std::uint64_t stream =
      rng::derive(rng::derive(campaign_seed, kTagSampleStream),
                  group_key(n, filter.k, filter.unique_required));
  std::vector<SampledInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  std::uint64_t attempt = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t used = 0;
    for (;;) {
      if (attempt >= attempt_cap)
        throw ResourceLimitError("sample_instances: attempt cap " +
                                 std::to_string(attempt_cap) + " exhausted after " +
                                 std::to_string(i) + " instances");
      std::uint64_t s = rng::word(stream, attempt);
      ++attempt;
      ++used;
      if (s == 0) s = 1;
      Graph g = generate_random_graph(n, s);
      InstanceClassification cls = classify(g);
      if (filter.k && cls.max_clique_size != *filter.k) continue;
      if (filter.unique_required && !cls.is_unique) continue;
      out.push_back({std::move(g), std::move(cls), used});
      break;
    }
  }
  return out;
}

CampaignResult campaign_scaling(const CampaignConfig& cfg, std::span<const RunRecord> checkpoint,
                                std::ostream* progress,
                                const std::function<void(const RunRecord&)>& on_record) {
  if (cfg.n_lo > cfg.n_hi) throw std::invalid_argument("campaign: n range is empty");
  if (cfg.instances_per_n < 1)
    throw std::invalid_argument("campaign: instances_per_n must be >= 1");

  std::map<std::tuple<std::uint64_t, int, int>, RunRecord> done;
  for (const auto& r : checkpoint) done[{r.seed, r.n, r.k}] = r;

  CampaignResult result;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    SampleFilter filter{cfg.k_filter, cfg.unique_required};
    std::vector<SampledInstance> instances =
        sample_instances(n, filter, cfg.instances_per_n, cfg.seed);

    std::vector<RunRecord> records(instances.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto key = std::make_tuple(instances[i].graph.seed, n,
                                       instances[i].cls.max_clique_size);
      if (auto it = done.find(key); it != done.end())
        records[i] = it->second;
      else
        todo.push_back(i);
    }
    parallel_for(todo.size(), cfg.jobs, [&](std::size_t t) {
      const std::size_t i = todo[t];
      records[i] = find_runtime(instances[i].graph, instances[i].cls, cfg.run);
      if (on_record) on_record(records[i]);
    });

    PerNResult per;
    per.n = n;
    std::vector<double> kept;
    for (const auto& r : records) {
      per.records.push_back(r);
      if (r.status == RunStatus::ok || r.status == RunStatus::trivial)
        kept.push_back(r.T_found);
      else
        per.excluded.push_back(r);
    }
    if (kept.empty())
      throw NumericError("campaign: every instance failed at n = " + std::to_string(n));
    per.median_T = median_ci(kept);
    if (progress)
      (*progress) << "n=" << n << " median_T=" << format_double(per.median_T.median)
                  << " ci=[" << format_double(per.median_T.lo) << ","
                  << format_double(per.median_T.hi) << "] excluded=" << per.excluded.size()
                  << "\n";
    result.per_n.push_back(std::move(per));
  }

  if (result.per_n.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& per : result.per_n)
      pts.emplace_back(static_cast<double>(per.n), per.median_T.median);
    result.fit = fit_quadratic(pts);
  }
  return result;
}

ProbabilityStudy probability_study(const StudyConfig& cfg, std::ostream* progress) {
  if (cfg.T_fixed < 0.0) throw std::invalid_argument("study: T must be >= 0");
  if (cfg.instances < 1) throw std::invalid_argument("study: instances must be >= 1");
  SampleFilter filter{cfg.k, cfg.unique_required};
  std::vector<SampledInstance> instances =
      sample_instances(cfg.n, filter, cfg.instances, cfg.seed);

  ProbabilityStudy study;
  study.T = cfg.T_fixed;
  study.probabilities.assign(instances.size(), 0.0);
  study.seeds.resize(instances.size());
  std::vector<double> drifts(instances.size(), 0.0);
  for (std::size_t i = 0; i < instances.size(); ++i)
    study.seeds[i] = instances[i].graph.seed;

  parallel_for(instances.size(), cfg.jobs, [&](std::size_t i) {
    auto basis = std::make_shared<const WeightKBasis>(cfg.n, cfg.k);
    const SubspaceHamiltonian ham(instances[i].graph, basis);
    EvolutionConfig ecfg = cfg.evo;
    ecfg.T = cfg.T_fixed;
    const EvolutionResult r = evolve(ham, ecfg, initial_state(*basis));
    if (r.failed)
      throw NumericError("study: evolution exhausted max_steps for seed " +
                         std::to_string(instances[i].graph.seed));
    study.probabilities[i] = r.success_probability;
    drifts[i] = r.norm_drift;
  });
  study.max_norm_drift = *std::max_element(drifts.begin(), drifts.end());

  std::vector<double> sorted = study.probabilities;
  const MedianCI ci = median_ci(sorted);
  study.median = ci.median;
  study.min = *std::min_element(study.probabilities.begin(), study.probabilities.end());
  study.hist = histogram_bins(study.probabilities, cfg.hist_bins, {{0.0, 1.0}});
  if (progress)
    (*progress) << "study n=" << cfg.n << " k=" << cfg.k << " T=" << format_double(cfg.T_fixed)
                << " median_p=" << format_double(study.median)
                << " min_p=" << format_double(study.min) << "\n";
  return study;
}

void write_records_csv(std::span<const RunRecord> records, std::ostream& os) {
  os << "seed,n,k,unique,T_found,p_at_T,probes,steps,norm_drift\n";
  for (const auto& r : records) {
    os << r.seed << "," << r.n << "," << r.k << "," << (r.unique ? 1 : 0) << ","
       << format_double(r.T_found) << "," << format_double(r.p_at_T) << "," << r.probes << ","
       << r.steps << "," << format_double(r.norm_drift) << "\n";
  }
}

std::vector<RunRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "seed,n,k,unique,T_found,p_at_T,probes,steps,norm_drift")
    throw std::invalid_argument("records csv: bad header");
  std::vector<RunRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    RunRecord r;
    auto next = [&]() {
      if (!std::getline(ls, field, ',')) throw std::invalid_argument("records csv: short row");
      return field;
    };
    r.seed = std::stoull(next());
    r.n = std::stoi(next());
    r.k = std::stoi(next());
    r.unique = std::stoi(next()) != 0;
    r.T_found = std::stod(next());
    r.p_at_T = std::stod(next());
    r.probes = std::stoi(next());
    r.steps = std::stoull(next());
    r.norm_drift = std::stod(next());
    // the CSV does not carry a status column; rows are completed records
    r.status = RunStatus::ok;
    out.push_back(r);
  }
  return out;
}

}  // namespace aqc

// aqc — command-line front end for the adiabatic-evolution clique-finding
// simulator: graph generation, Schrödinger evolution, run-time search,
// scaling campaigns, spectral-gap scans, and state-preparation analysis.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aqc/errors.hpp"
#include "aqc/evolve.hpp"
#include "aqc/experiment.hpp"
#include "aqc/graph.hpp"
#include "aqc/spectrum.hpp"
#include "aqc/stateprep.hpp"
#include "aqc/util.hpp"
#include "aqc/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumeric = 4;

struct EvoOpts {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  std::uint64_t max_steps = 20'000'000;
  double initial_step = 0.0;
  bool rotating_frame = true;
};

void add_evo_options(CLI::App* cmd, EvoOpts& o) {
  cmd->add_option("--rel-tol", o.rel_tol, "integrator relative tolerance")
      ->capture_default_str();
  cmd->add_option("--abs-tol", o.abs_tol, "integrator absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--max-steps", o.max_steps, "integrator step budget per evolution")
      ->capture_default_str();
  cmd->add_option("--initial-step", o.initial_step, "initial step size (0 = T/1000)")
      ->capture_default_str();
  cmd->add_option("--rotating-frame", o.rotating_frame,
                  "integrate in the linear reference-energy frame")
      ->capture_default_str();
}

aqc::EvolutionConfig make_evo_config(const EvoOpts& o, double T = 0.0) {
  aqc::EvolutionConfig cfg;
  cfg.T = T;
  cfg.rel_tol = o.rel_tol;
  cfg.abs_tol = o.abs_tol;
  cfg.max_steps = o.max_steps;
  cfg.initial_step = o.initial_step;
  cfg.rotating_frame = o.rotating_frame;
  return cfg;
}

ordered_json evo_json(const EvoOpts& o) {
  return {{"rel_tol", o.rel_tol},
          {"abs_tol", o.abs_tol},
          {"max_steps", o.max_steps},
          {"initial_step", o.initial_step},
          {"rotating_frame", o.rotating_frame}};
}

ordered_json record_json(const aqc::RunRecord& r) {
  return {{"seed", r.seed},       {"n", r.n},
          {"k", r.k},             {"unique", r.unique},
          {"T_found", r.T_found}, {"p_at_T", r.p_at_T},
          {"probes", r.probes},   {"steps", r.steps},
          {"norm_drift", r.norm_drift}, {"status", aqc::to_string(r.status)}};
}

ordered_json header_json() {
  return {{"tool", aqc::kToolName}, {"version", aqc::kVersion}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  f << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_text_file(path, content);
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = std::stoi(text);
    return {n, n};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int classify_k_or(const aqc::Graph& g, int k_flag) {
  if (k_flag > 0) return k_flag;
  return aqc::classify(g).max_clique_size;
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  int n = 0;
  std::uint64_t seed = 1;
  int k = 0;  // 0 = no filter
  bool unique = false;
  std::uint64_t cap = 1'000'000;
  std::string out;
};

void run_gen(const GenOpts& o) {
  aqc::Graph g;
  aqc::InstanceClassification cls;
  if (o.k > 0 || o.unique) {
    aqc::SampleFilter filter;
    if (o.k > 0) filter.k = o.k;
    filter.unique_required = o.unique;
    aqc::SampledInstance inst = aqc::sample_until(o.n, filter, o.seed, o.cap);
    g = std::move(inst.graph);
    cls = std::move(inst.cls);
    std::cerr << "accepted graph seed=" << g.seed << " after " << inst.attempts
              << " attempts\n";
  } else {
    g = aqc::generate_random_graph(o.n, o.seed);
    cls = aqc::classify(g);
  }
  emit(o.out, aqc::graph_to_string(g));
  std::cerr << "n=" << g.n << " edges=" << g.edge_count() << " k=" << cls.max_clique_size
            << " cliques_at_max=" << cls.cliques_at_max.size()
            << " unique=" << (cls.is_unique ? 1 : 0) << "\n";
}

// ---------------------------------------------------------------- evolve

struct EvolveOpts {
  std::string graph;
  int k = 0;
  double T = 0.0;
  EvoOpts evo;
  std::string dump_state;
};

void run_evolve(const EvolveOpts& o) {
  const aqc::Graph g = aqc::read_graph_file(o.graph);
  const int k = classify_k_or(g, o.k);
  auto basis = std::make_shared<const aqc::WeightKBasis>(g.n, k);
  const aqc::SubspaceHamiltonian ham(g, basis);
  const aqc::EvolutionResult r = aqc::evolve(ham, make_evo_config(o.evo, o.T),
                                             aqc::initial_state(*basis));
  if (r.failed) throw aqc::NumericError("evolve: max_steps exhausted before t = T");
  std::cout << "n=" << g.n << " k=" << k << " T=" << aqc::format_double(o.T)
            << " p=" << aqc::format_double(r.success_probability)
            << " norm_drift=" << aqc::format_double(r.norm_drift)
            << " steps=" << r.steps_accepted << " rejected=" << r.steps_rejected << "\n";
  if (!o.dump_state.empty()) {
    std::ostringstream os;
    aqc::write_state_csv(r.final_state, *basis, os);
    write_text_file(o.dump_state, os.str());
  }
}

// ---------------------------------------------------------------- find-t

struct FindTOpts {
  std::string graph;
  double target_p = 0.125;
  double target_tol = 0.0025;
  double bracket_cap = 1e4;
  EvoOpts evo;
  std::string out;
};

void run_find_t(const FindTOpts& o) {
  const aqc::Graph g = aqc::read_graph_file(o.graph);
  const aqc::InstanceClassification cls = aqc::classify(g);
  aqc::RunConfig cfg;
  cfg.target_p = o.target_p;
  cfg.target_tol = o.target_tol;
  cfg.bracket_cap = o.bracket_cap;
  cfg.evo = make_evo_config(o.evo);
  const aqc::RunRecord rec = aqc::find_runtime(g, cls, cfg);
  std::ostringstream os;
  aqc::write_records_csv({&rec, 1}, os);
  emit(o.out, os.str());
  std::cerr << "status=" << aqc::to_string(rec.status) << " probes=" << rec.probes << "\n";
  if (rec.status == aqc::RunStatus::bracket_cap_exceeded)
    throw aqc::ResourceLimitError("find-t: bracket cap exceeded");
  if (rec.status == aqc::RunStatus::failed)
    throw aqc::NumericError("find-t: run-time search failed");
}

// ---------------------------------------------------------------- campaign

struct CampaignOpts {
  std::string n_range = "7..13";
  int count = 100;
  std::uint64_t seed = 1;
  int k = 0;
  bool unique = true;
  double target_p = 0.125;
  double target_tol = 0.0025;
  double bracket_cap = 1e4;
  EvoOpts evo;
  int jobs = aqc::default_jobs();
  bool resume = true;
  std::string out;      // records CSV
  std::string summary;  // summary JSON
};

ordered_json campaign_config_json(const CampaignOpts& o, int n_lo, int n_hi) {
  ordered_json cfg{{"n_lo", n_lo},
                   {"n_hi", n_hi},
                   {"count", o.count},
                   {"seed", o.seed},
                   {"unique", o.unique},
                   {"target_p", o.target_p},
                   {"target_tol", o.target_tol},
                   {"bracket_cap", o.bracket_cap},
                   {"evolution", evo_json(o.evo)}};
  if (o.k > 0)
    cfg["k_filter"] = o.k;
  else
    cfg["k_filter"] = nullptr;
  return cfg;
}

void run_campaign(const CampaignOpts& o) {
  const auto [n_lo, n_hi] = parse_n_range(o.n_range);
  aqc::CampaignConfig cfg;
  cfg.n_lo = n_lo;
  cfg.n_hi = n_hi;
  cfg.instances_per_n = o.count;
  cfg.seed = o.seed;
  if (o.k > 0) cfg.k_filter = o.k;
  cfg.unique_required = o.unique;
  cfg.run.target_p = o.target_p;
  cfg.run.target_tol = o.target_tol;
  cfg.run.bracket_cap = o.bracket_cap;
  cfg.run.evo = make_evo_config(o.evo);
  cfg.jobs = o.jobs;

  std::vector<aqc::RunRecord> checkpoint;
  const std::string partial_path = o.out.empty() ? "" : o.out + ".partial";
  if (o.resume && !o.out.empty()) {
    for (const std::string& path : {o.out, partial_path}) {
      std::ifstream f(path);
      if (!f) continue;
      for (const auto& r : aqc::read_records_csv(f)) checkpoint.push_back(r);
      std::cerr << "resume: " << path << " supplied records\n";
    }
  }

  std::unique_ptr<std::ofstream> partial;
  std::mutex partial_mutex;
  if (!partial_path.empty()) {
    const bool fresh = !std::filesystem::exists(partial_path);
    partial = std::make_unique<std::ofstream>(partial_path, std::ios::app);
    if (fresh && *partial)
      *partial << "seed,n,k,unique,T_found,p_at_T,probes,steps,norm_drift\n";
  }
  auto on_record = [&](const aqc::RunRecord& r) {
    if (!partial || !*partial) return;
    std::lock_guard<std::mutex> lock(partial_mutex);
    std::ostringstream row;
    aqc::write_records_csv({&r, 1}, row);
    const std::string text = row.str();
    *partial << text.substr(text.find('\n') + 1) << std::flush;
  };

  const aqc::CampaignResult result = aqc::campaign_scaling(cfg, checkpoint, &std::cerr, on_record);

  std::vector<aqc::RunRecord> all;
  for (const auto& per : result.per_n)
    for (const auto& r : per.records)
      if (r.status == aqc::RunStatus::ok || r.status == aqc::RunStatus::trivial)
        all.push_back(r);
  if (!o.out.empty()) {
    std::ostringstream os;
    aqc::write_records_csv(all, os);
    write_text_file(o.out, os.str());
    if (!partial_path.empty()) {
      partial.reset();
      std::filesystem::remove(partial_path);
    }
  }

  ordered_json summary = header_json();
  summary["config"] = campaign_config_json(o, n_lo, n_hi);
  summary["per_n"] = ordered_json::array();
  for (const auto& per : result.per_n) {
    ordered_json jn{{"n", per.n},
                    {"median_T", per.median_T.median},
                    {"ci_lo", per.median_T.lo},
                    {"ci_hi", per.median_T.hi},
                    {"rank_lo", per.median_T.rank_lo},
                    {"rank_hi", per.median_T.rank_hi}};
    jn["records"] = ordered_json::array();
    for (const auto& r : per.records) jn["records"].push_back(record_json(r));
    jn["excluded"] = ordered_json::array();
    for (const auto& r : per.excluded) jn["excluded"].push_back(record_json(r));
    summary["per_n"].push_back(std::move(jn));
  }
  if (result.fit) {
    summary["fit"] = {{"a", result.fit->a},
                      {"b", result.fit->b},
                      {"c", result.fit->c},
                      {"residuals", result.fit->residuals}};
  } else {
    summary["fit"] = nullptr;
  }
  emit(o.summary, summary.dump(2) + "\n");
}

// ---------------------------------------------------------------- study

struct StudyOpts {
  int n = 15;
  int k = 5;
  double T = 0.0;
  int count = 100;
  bool unique = true;
  std::uint64_t seed = 1;
  int bins = 40;
  EvoOpts evo;
  int jobs = aqc::default_jobs();
  std::string out;
};

void run_study(const StudyOpts& o) {
  aqc::StudyConfig cfg;
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.T_fixed = o.T;
  cfg.instances = o.count;
  cfg.unique_required = o.unique;
  cfg.seed = o.seed;
  cfg.evo = make_evo_config(o.evo);
  cfg.hist_bins = o.bins;
  cfg.jobs = o.jobs;
  const aqc::ProbabilityStudy study = aqc::probability_study(cfg, &std::cerr);

  ordered_json summary = header_json();
  summary["config"] = {{"n", o.n},         {"k", o.k},
                       {"T", o.T},         {"count", o.count},
                       {"unique", o.unique}, {"seed", o.seed},
                       {"bins", o.bins},   {"evolution", evo_json(o.evo)}};
  summary["median_p"] = study.median;
  summary["min_p"] = study.min;
  summary["seeds"] = study.seeds;
  summary["probabilities"] = study.probabilities;
  summary["histogram"] = {{"lo", study.hist.lo},
                          {"hi", study.hist.hi},
                          {"width", study.hist.width},
                          {"counts", study.hist.counts}};
  emit(o.out, summary.dump(2) + "\n");
}

// ---------------------------------------------------------------- gap

struct GapOpts {
  std::string graph;
  int k = 0;
  int grid = 101;
  int levels = 2;
  bool refine = true;
  std::string out;
};

void run_gap(const GapOpts& o) {
  const aqc::Graph g = aqc::read_graph_file(o.graph);
  const int k = classify_k_or(g, o.k);
  auto basis = std::make_shared<const aqc::WeightKBasis>(g.n, k);
  const aqc::SubspaceHamiltonian ham(g, basis);
  aqc::GapScanOptions opts;
  opts.grid_points = o.grid;
  opts.refine = o.refine;
  opts.csv_levels = o.levels;
  const aqc::GapReport rep = aqc::gap_scan(ham, opts);
  if (!o.out.empty()) {
    std::ostringstream os;
    aqc::write_gap_csv(rep, os);
    write_text_file(o.out, os.str());
  }
  if (rep.degenerate) {
    std::cout << "degenerate ground state at s=" << aqc::format_double(rep.degenerate_at)
              << "\n";
    return;
  }
  std::cout << "g=" << aqc::format_double(rep.g) << " s_star=" << aqc::format_double(rep.s_star)
            << " E=" << aqc::format_double(rep.e_script)
            << " bound=" << aqc::format_double(rep.bound) << "\n";
}

// ---------------------------------------------------------------- prep

struct PrepGapOpts {
  int n = 16;
  int k = 8;
  int grid = 101;
  std::string out;
};

void run_prep_gap(const PrepGapOpts& o) {
  aqc::GapScanOptions opts;
  opts.grid_points = o.grid;
  opts.csv_levels = 4;
  const aqc::GapReport rep = aqc::symmetric_prep_gap(o.n, o.k, opts);
  if (!o.out.empty()) {
    std::ostringstream os;
    aqc::write_prep_gap_csv(rep, os);
    write_text_file(o.out, os.str());
  }
  std::cout << "min_gap=" << aqc::format_double(rep.g)
            << " s_star=" << aqc::format_double(rep.s_star) << "\n";
}

struct PrepProbOpts {
  int n = 10;
  int k = 5;
};

void run_prep_prob(const PrepProbOpts& o) {
  const double p = aqc::biased_prep_probability(o.n, o.k);
  const double floor_est = std::sqrt(2.0 / (o.n * 3.14159265358979323846));
  std::cout << "p=" << aqc::format_double(p)
            << " sqrt(2/(n*pi))=" << aqc::format_double(floor_est)
            << " expected_repetitions=" << aqc::format_double(1.0 / p) << "\n";
}

struct PrepSampleOpts {
  int n = 10;
  int k = 5;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
};

void run_prep_sample(const PrepSampleOpts& o) {
  const double freq =
      aqc::biased_prep_sample(o.n, o.k, o.seed, o.trials);
  const double p = aqc::biased_prep_probability(o.n, o.k);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(o.trials));
  std::cout << "frequency=" << aqc::format_double(freq) << " closed_form=" << aqc::format_double(p)
            << " std_err=" << aqc::format_double(se) << "\n";
}

// ---------------------------------------------------------------- fit

struct FitOpts {
  std::string records;
  std::string out;
};

void run_fit(const FitOpts& o) {
  std::ifstream f(o.records);
  if (!f) throw std::invalid_argument("cannot open records: " + o.records);
  const std::vector<aqc::RunRecord> records = aqc::read_records_csv(f);
  if (records.empty()) throw std::invalid_argument("fit: no records");
  std::map<int, std::vector<double>> by_n;
  for (const auto& r : records) by_n[r.n].push_back(r.T_found);

  ordered_json summary = header_json();
  summary["per_n"] = ordered_json::array();
  std::vector<std::pair<double, double>> pts;
  for (auto& [n, ts] : by_n) {
    const aqc::MedianCI ci = aqc::median_ci(ts);
    pts.emplace_back(n, ci.median);
    summary["per_n"].push_back(ordered_json{{"n", n},
                                            {"count", ts.size()},
                                            {"median_T", ci.median},
                                            {"ci_lo", ci.lo},
                                            {"ci_hi", ci.hi}});
  }
  if (pts.size() >= 3) {
    const aqc::FitResult fit = aqc::fit_quadratic(pts);
    summary["fit"] = {{"a", fit.a}, {"b", fit.b}, {"c", fit.c}, {"residuals", fit.residuals}};
  } else {
    summary["fit"] = nullptr;
  }
  emit(o.out, summary.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aqc: finding maximum cliques in random graphs by simulated "
               "quantum adiabatic evolution"};
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.set_version_flag("--version", std::string(aqc::kToolName) + " " + aqc::kVersion);
  app.require_subcommand(1);

  GenOpts gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a random graph (optionally filtered)");
  cmd_gen->add_option("--n", gen.n, "vertex count")->required();
  cmd_gen->add_option("--seed", gen.seed, "graph seed, or stream seed when filtering")
      ->capture_default_str();
  cmd_gen->add_option("--k", gen.k, "require max clique size k (0 = no filter)")
      ->capture_default_str();
  cmd_gen->add_flag("--unique", gen.unique, "require a unique maximum clique");
  cmd_gen->add_option("--cap", gen.cap, "attempt cap for filtered sampling")
      ->capture_default_str();
  cmd_gen->add_option("--out", gen.out, "output path (default stdout)");
  cmd_gen->callback([&] { run_gen(gen); });

  EvolveOpts evolve_opts;
  auto* cmd_evolve = app.add_subcommand("evolve", "integrate one instance for a fixed T");
  cmd_evolve->add_option("--graph", evolve_opts.graph, "graph file")->required();
  cmd_evolve->add_option("--k", evolve_opts.k, "clique size (0 = classified max)")
      ->capture_default_str();
  cmd_evolve->add_option("--T", evolve_opts.T, "run time")->required();
  add_evo_options(cmd_evolve, evolve_opts.evo);
  cmd_evolve->add_option("--dump-state", evolve_opts.dump_state, "write final state CSV here");
  cmd_evolve->callback([&] { run_evolve(evolve_opts); });

  FindTOpts findt;
  auto* cmd_findt = app.add_subcommand("find-t", "search the run time reaching the target "
                                                 "success probability");
  cmd_findt->add_option("--graph", findt.graph, "graph file")->required();
  cmd_findt->add_option("--target-p", findt.target_p, "target probability")
      ->capture_default_str();
  cmd_findt->add_option("--target-tol", findt.target_tol, "tolerance around the target")
      ->capture_default_str();
  cmd_findt->add_option("--bracket-cap", findt.bracket_cap, "largest T tried")
      ->capture_default_str();
  add_evo_options(cmd_findt, findt.evo);
  cmd_findt->add_option("--out", findt.out, "records CSV path (default stdout)");
  cmd_findt->callback([&] { run_find_t(findt); });

  CampaignOpts campaign;
  auto* cmd_campaign = app.add_subcommand("campaign", "per-n instance campaigns: run-time "
                                                      "medians and quadratic fit");
  cmd_campaign->add_option("--n", campaign.n_range, "n or n_lo..n_hi")->capture_default_str();
  cmd_campaign->add_option("--count", campaign.count, "instances per n")->capture_default_str();
  cmd_campaign->add_option("--seed", campaign.seed, "campaign seed")->capture_default_str();
  cmd_campaign->add_option("--k", campaign.k, "fixed clique-size filter (0 = per-instance max)")
      ->capture_default_str();
  cmd_campaign->add_option("--unique", campaign.unique, "restrict to unique-max-clique instances")
      ->capture_default_str();
  cmd_campaign->add_option("--target-p", campaign.target_p, "target probability")
      ->capture_default_str();
  cmd_campaign->add_option("--target-tol", campaign.target_tol, "tolerance around the target")
      ->capture_default_str();
  cmd_campaign->add_option("--bracket-cap", campaign.bracket_cap, "largest T tried")
      ->capture_default_str();
  add_evo_options(cmd_campaign, campaign.evo);
  cmd_campaign->add_option("--jobs", campaign.jobs, "parallel instance workers")
      ->capture_default_str();
  cmd_campaign->add_option("--resume", campaign.resume, "reuse records from --out if present")
      ->capture_default_str();
  cmd_campaign->add_option("--out", campaign.out, "records CSV path");
  cmd_campaign->add_option("--summary", campaign.summary, "summary JSON path (default stdout)");
  cmd_campaign->callback([&] { run_campaign(campaign); });

  StudyOpts study;
  auto* cmd_study = app.add_subcommand("study", "success-probability distribution at fixed T");
  cmd_study->add_option("--n", study.n, "vertex count")->capture_default_str();
  cmd_study->add_option("--k", study.k, "clique size filter")->capture_default_str();
  cmd_study->add_option("--T", study.T, "fixed run time")->required();
  cmd_study->add_option("--count", study.count, "instances")->capture_default_str();
  cmd_study->add_option("--unique", study.unique, "restrict to unique-max-clique instances")
      ->capture_default_str();
  cmd_study->add_option("--seed", study.seed, "campaign seed")->capture_default_str();
  cmd_study->add_option("--bins", study.bins, "histogram bins over [0,1]")->capture_default_str();
  add_evo_options(cmd_study, study.evo);
  cmd_study->add_option("--jobs", study.jobs, "parallel instance workers")->capture_default_str();
  cmd_study->add_option("--out", study.out, "summary JSON path (default stdout)");
  cmd_study->callback([&] { run_study(study); });

  GapOpts gap;
  auto* cmd_gap = app.add_subcommand("gap", "instantaneous spectrum scan: minimum gap and "
                                            "transition matrix element");
  cmd_gap->add_option("--graph", gap.graph, "graph file")->required();
  cmd_gap->add_option("--k", gap.k, "clique size (0 = classified max)")->capture_default_str();
  cmd_gap->add_option("--grid", gap.grid, "uniform grid points")->capture_default_str();
  cmd_gap->add_option("--levels", gap.levels, "energies per CSV row")->capture_default_str();
  cmd_gap->add_option("--refine", gap.refine, "golden-section refinement")->capture_default_str();
  cmd_gap->add_option("--out", gap.out, "CSV path");
  cmd_gap->callback([&] { run_gap(gap); });

  PrepGapOpts prep_gap;
  auto* cmd_prep_gap = app.add_subcommand("prep-gap", "gap scan of the symmetric-subspace "
                                                      "preparation Hamiltonian");
  cmd_prep_gap->add_option("--n", prep_gap.n, "qubits")->capture_default_str();
  cmd_prep_gap->add_option("--k", prep_gap.k, "target Hamming weight")->capture_default_str();
  cmd_prep_gap->add_option("--grid", prep_gap.grid, "uniform grid points")->capture_default_str();
  cmd_prep_gap->add_option("--out", prep_gap.out, "CSV path");
  cmd_prep_gap->callback([&] { run_prep_gap(prep_gap); });

  PrepProbOpts prep_prob;
  auto* cmd_prep_prob = app.add_subcommand("prep-prob", "closed-form weight-k measurement "
                                                        "probability of the biased prep");
  cmd_prep_prob->add_option("--n", prep_prob.n, "qubits")->capture_default_str();
  cmd_prep_prob->add_option("--k", prep_prob.k, "target Hamming weight")->capture_default_str();
  cmd_prep_prob->callback([&] { run_prep_prob(prep_prob); });

  PrepSampleOpts prep_sample;
  auto* cmd_prep_sample = app.add_subcommand("prep-sample", "Monte Carlo check of the biased "
                                                            "prep measurement statistics");
  cmd_prep_sample->add_option("--n", prep_sample.n, "qubits")->capture_default_str();
  cmd_prep_sample->add_option("--k", prep_sample.k, "target Hamming weight")
      ->capture_default_str();
  cmd_prep_sample->add_option("--trials", prep_sample.trials, "samples")->capture_default_str();
  cmd_prep_sample->add_option("--seed", prep_sample.seed, "RNG seed")->capture_default_str();
  cmd_prep_sample->callback([&] { run_prep_sample(prep_sample); });

  FitOpts fit;
  auto* cmd_fit = app.add_subcommand("fit", "per-n medians and quadratic fit from a records CSV");
  cmd_fit->add_option("--records", fit.records, "records CSV")->required();
  cmd_fit->add_option("--out", fit.out, "summary JSON path (default stdout)");
  cmd_fit->callback([&] { run_fit(fit); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const aqc::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const aqc::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

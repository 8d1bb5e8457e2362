// Command-line front end: simulate, embed, select-params, ccm, sccm,
// diagnose, bench, sweep.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sccm/bench.hpp"
#include "sccm/diagnostics.hpp"
#include "sccm/io.hpp"
#include "sccm/random.hpp"
#include "sccm/report.hpp"
#include "sccm/symmetry.hpp"

namespace {

using namespace sccm;

// Bad flag combinations found after parsing; exits 2 like parse errors.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: json when --out ends in .json, else csv
};

bool json_out(const Common& c) {
  if (!c.format.empty()) return json_out(c);
  return c.out.size() >= 5 && c.out.compare(c.out.size() - 5, 5, ".json") == 0;
}

struct Source {
  std::string system;
  std::string input;
  std::string var;   // single-series commands
  std::string pair;  // two-series commands
  Index steps = 0;   // 0: reference length
  Index burn_in = 0;
  double noise = 0.0;
};

struct Embed {
  int tau = 0;  // 0: catalogue value, or MI selection for --input
  int m = 0;    // 0: catalogue value, or FNN selection for --input
};

void add_common(CLI::App* app, Common& c, bool with_format = true) {
  app->add_option("--seed", c.seed, "Global seed; every randomized step derives its own stream from it");
  app->add_option("--out", c.out,
                  "Output file. Relative paths resolve against $SCCM_OUTPUT_DIR when it is set");
  if (with_format)
    app->add_option("--format", c.format, "csv or json (default: json when --out ends in .json, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_source(CLI::App* app, Source& s, bool pair) {
  app->add_option("--system", s.system, "Catalogue system to simulate");
  app->add_option("--input", s.input, "CSV file with a header row (external data)");
  if (pair)
    app->add_option("--pair", s.pair, "Two variables or CSV columns, e.g. x,z");
  else
    app->add_option("--var", s.var, "Variable, linear measurement (x+z) or CSV column");
  app->add_option("--steps", s.steps, "Integration steps (default: the reference length)");
  app->add_option("--burn-in", s.burn_in, "Samples dropped from the start of the simulation");
  app->add_option("--noise", s.noise, "Standard deviation of Gaussian observation noise");
}

void add_embed(CLI::App* app, Embed& e) {
  app->add_option("--tau", e.tau, "Delay in samples (default: catalogue value or MI selection)");
  app->add_option("--m", e.m, "Embedding dimension (default: catalogue value or FNN selection)");
}

std::string resolve_path(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  const char* dir = std::getenv("SCCM_OUTPUT_DIR");
  if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
  return p.string();
}

// Writes to --out, else to a default-named file under $SCCM_OUTPUT_DIR,
// else to stdout when `to_stdout` allows it.
void emit(const Common& c, const std::string& contents, const std::string& default_name, bool to_stdout = true) {
  std::string path = resolve_path(c.out);
  if (path.empty()) {
    const char* dir = std::getenv("SCCM_OUTPUT_DIR");
    if (dir && *dir) path = (std::filesystem::path(dir) / default_name).string();
  }
  if (path.empty()) {
    if (to_stdout) std::cout << contents;
    return;
  }
  io::write_file(path, contents);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Loaded {
  std::optional<SystemSpec> spec;
  std::vector<TimeSeries> series;
  std::vector<std::string> names;
};

Trajectory simulate(const SystemSpec& spec, const Source& s) {
  if (s.steps < 0) throw usage_error("--steps must be non-negative");
  if (s.steps == 0) return simulate_reference(spec, s.burn_in);
  Trajectory t = integrate_rk4(spec, spec.config.x0, spec.config.dt, s.steps);
  t.t0 = spec.config.t_start;
  if (s.burn_in > 0) {
    if (s.burn_in >= t.size() - 1) throw usage_error("--burn-in leaves fewer than 2 samples");
    Matrix kept = t.states.bottomRows(t.size() - s.burn_in);
    t.states = std::move(kept);
    t.t0 += static_cast<double>(s.burn_in) * t.dt;
  }
  return t;
}

Loaded load(const Source& s, std::vector<std::string> names, std::uint64_t seed) {
  if (s.system.empty() == s.input.empty()) throw usage_error("give exactly one of --system or --input");
  for (const auto& n : names)
    if (n.empty()) throw usage_error("missing variable: use --var, or --pair with two names");
  Loaded out;
  out.names = names;
  if (!s.system.empty()) {
    out.spec = catalogue_system(s.system);
    const Trajectory traj = simulate(*out.spec, s);
    for (const auto& n : names) out.series.push_back(observe(traj, Measurement::parse(*out.spec, n)));
  } else {
    for (const auto& n : names) {
      std::ifstream f(s.input);
      if (!f) throw argument_error("cannot open '" + s.input + "'");
      out.series.push_back(io::read_column_csv(f, n));
    }
  }
  if (s.noise < 0.0) throw usage_error("--noise must be non-negative");
  if (s.noise > 0.0)
    for (std::size_t i = 0; i < out.series.size(); ++i)
      out.series[i] = add_noise(out.series[i], s.noise, sub_seed(seed, 40 + i));
  return out;
}

Loaded load_one(const Source& s, std::uint64_t seed) { return load(s, {s.var}, seed); }

Loaded load_pair(const Source& s, std::uint64_t seed) {
  const auto p = split_list(s.pair);
  if (p.size() != 2) throw usage_error("--pair needs exactly two names, e.g. --pair x,z");
  return load(s, p, seed);
}

EmbeddingParams resolve_params(const Loaded& d, std::size_t k, const Embed& e) {
  EmbeddingParams p;
  if (d.spec) {
    p.tau = d.spec->config.tau;
    p.m = d.spec->config.m;
  }
  if (e.tau > 0) p.tau = e.tau;
  if (e.m > 0) p.m = e.m;
  if (!d.spec) {
    if (e.tau <= 0) {
      const LagSelection lag = select_lag_mutual_info(d.series[k], 100);
      if (!lag.has_minimum())
        throw usage_error("mutual information of '" + d.names[k] +
                          "' has no local minimum up to lag 100; pass --tau explicitly");
      p.tau = *lag.lag;
    }
    if (e.m <= 0) {
      const DimSelection dim = select_dim_fnn(d.series[k], p.tau, 10);
      if (!dim.dimension)
        throw usage_error("false-nearest-neighbour test found no dimension up to 10 for '" + d.names[k] +
                          "'; pass --m explicitly");
      p.m = *dim.dimension;
    }
  }
  if (e.tau < 0 || e.m < 0) throw usage_error("--tau and --m must be positive");
  p.validate();
  return p;
}

struct PipelineFlags {
  std::string library = "random";
  int points = 12;
  Index max_eval = 2000;
  double floor = 0.8;
  double plateau_tol = 0.02;
  double symmetry_threshold = 0.08;
  bool no_recurrence = false;
};

void add_pipeline(CLI::App* app, PipelineFlags& f, bool symmetry) {
  app->add_option("--library", f.library, "Library draw")->check(CLI::IsMember({"random", "prefix"}))->capture_default_str();
  app->add_option("--points", f.points, "Library sizes in the geometric schedule")->capture_default_str();
  app->add_option("--max-eval", f.max_eval, "Evaluation points per library size")->capture_default_str();
  app->add_option("--floor", f.floor, "Verdict: minimum final skill")->capture_default_str();
  app->add_option("--plateau-tol", f.plateau_tol, "Verdict: maximum tail slope per decade of L")->capture_default_str();
  if (symmetry)
    app->add_option("--symmetry-threshold", f.symmetry_threshold, "Inversion-symmetry score cutoff")
        ->capture_default_str();
  app->add_flag("--no-recurrence", f.no_recurrence, "Skip the recurrence prerequisite check");
}

SegmentCcmConfig make_config(const PipelineFlags& f, std::uint64_t seed, const std::vector<std::string>& names) {
  SegmentCcmConfig c;
  c.sweep.mode = f.library == "prefix" ? LibraryMode::prefix : LibraryMode::random;
  c.sweep.schedule_points = f.points;
  c.sweep.max_eval = f.max_eval;
  c.rule.floor = f.floor;
  c.rule.plateau_tol = f.plateau_tol;
  c.symmetry.threshold = f.symmetry_threshold;
  c.check_recurrence = !f.no_recurrence;
  c.seed = seed;
  c.name_a = names.at(0);
  c.name_b = names.at(1);
  return c;
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << '\n';
}

std::vector<int> parse_range(const std::string& s, const char* flag) {
  // "a:b" inclusive, or "a,b,c".
  std::vector<int> out;
  try {
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
      const int lo = std::stoi(s.substr(0, colon)), hi = std::stoi(s.substr(colon + 1));
      if (hi < lo) throw usage_error(std::string(flag) + ": empty range '" + s + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      for (const auto& item : split_list(s)) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw usage_error(std::string(flag) + ": expected a:b or a,b,c, got '" + s + "'");
  }
  return out;
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causality detection between time series by cross mapping and segment cross mapping"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sccm 1.0");

  // simulate ---------------------------------------------------------------
  Common sim_c;
  Source sim_s;
  auto* sim = app.add_subcommand("simulate", "Integrate a catalogue system and write its trajectory (CSV)");
  add_common(sim, sim_c, false);
  sim->add_option("--system", sim_s.system, "Catalogue system")->required();
  sim->add_option("--steps", sim_s.steps, "Integration steps (default: the reference length)");
  sim->add_option("--burn-in", sim_s.burn_in, "Samples dropped from the start");
  bool list_systems = false;
  auto* list = app.add_subcommand("list", "List catalogue systems");
  list->add_flag("--extended", list_systems, "Include extended systems");

  // embed ------------------------------------------------------------------
  Common emb_c;
  Source emb_s;
  Embed emb_e;
  auto* emb = app.add_subcommand("embed", "Delay-embed one series and write the manifold (CSV idx,c0,...)");
  add_common(emb, emb_c, false);
  add_source(emb, emb_s, false);
  add_embed(emb, emb_e);

  // select-params ------------------------------------------------------------
  Common sel_c;
  Source sel_s;
  int max_lag = 100, max_dim = 10, bins = 16;
  std::string fnn_out;
  auto* sel = app.add_subcommand("select-params", "Choose tau by mutual information and m by false nearest neighbours");
  add_common(sel, sel_c);
  add_source(sel, sel_s, false);
  sel->add_option("--max-lag", max_lag, "Largest lag for the MI curve")->capture_default_str();
  sel->add_option("--max-dim", max_dim, "Largest dimension for the FNN test")->capture_default_str();
  sel->add_option("--bins", bins, "Histogram bins for MI")->capture_default_str();
  sel->add_option("--fnn-out", fnn_out, "CSV file for the FNN curve (csv format; --out receives the MI curve)");

  // ccm / sccm ---------------------------------------------------------------
  Common ccm_c, sccm_c;
  Source ccm_s, sccm_s;
  Embed ccm_e, sccm_e;
  PipelineFlags ccm_f, sccm_f;
  auto* ccm = app.add_subcommand("ccm", "Plain cross mapping in both directions; csv: curve, json: verdict");
  add_common(ccm, ccm_c);
  add_source(ccm, ccm_s, true);
  add_embed(ccm, ccm_e);
  add_pipeline(ccm, ccm_f, false);
  auto* sccm = app.add_subcommand("sccm", "Segment cross mapping with symmetry test; csv: curve, json: full report");
  add_common(sccm, sccm_c);
  add_source(sccm, sccm_s, true);
  add_embed(sccm, sccm_e);
  add_pipeline(sccm, sccm_f, true);

  // diagnose -----------------------------------------------------------------
  auto* diag = app.add_subcommand("diagnose", "Prerequisite checks");
  diag->require_subcommand(1);
  Common rec_c, dist_c, obs_c, sym_c;
  Source rec_s, dist_s, sym_s;
  Embed rec_e, dist_e, sym_e;
  double rec_q = 0.10;
  Index rec_sep = 0;
  auto* rec = diag->add_subcommand("recurrence", "Check that states revisit earlier neighbourhoods");
  add_common(rec, rec_c);
  add_source(rec, rec_s, false);
  add_embed(rec, rec_e);
  rec->add_option("--epsilon-quantile", rec_q, "Distance quantile used as the neighbourhood radius")
      ->capture_default_str();
  rec->add_option("--min-separation", rec_sep, "Minimum sample gap for a revisit (default: automatic)");

  std::optional<double> dist_q;
  Index dist_max = 2000;
  auto* dist = diag->add_subcommand("distance", "Write the pairwise distance matrix of the manifold (CSV)");
  add_common(dist, dist_c, false);
  add_source(dist, dist_s, false);
  add_embed(dist, dist_e);
  dist->add_option("--epsilon-quantile", dist_q, "Write a 0/1 recurrence matrix at this distance quantile instead");
  dist->add_option("--max-points", dist_max, "Seeded uniform subsample above this size")->capture_default_str();

  std::string obs_system, obs_measure = "x", obs_state;
  Index obs_at = -1;
  double obs_fd = 1e-4, obs_tol = 1e-6;
  int obs_rows = 0;
  auto* obs = diag->add_subcommand("observability", "Rank of the Lie-derivative Jacobian of a measurement (JSON)");
  add_common(obs, obs_c, false);
  obs->add_option("--system", obs_system, "Catalogue system")->required();
  obs->add_option("--measure,--var", obs_measure, "Linear measurement, e.g. x, z, x+z, x9")->capture_default_str();
  obs->add_option("--state", obs_state, "Comma-separated state (default: a sample of the reference trajectory)");
  obs->add_option("--at", obs_at, "Trajectory sample used as the state (default: the middle sample)");
  obs->add_option("--fd-step", obs_fd, "Relative central-difference step")->capture_default_str();
  obs->add_option("--rank-tol", obs_tol, "Rank cutoff relative to the largest singular value")->capture_default_str();
  obs->add_option("--rows", obs_rows, "Lie orders (default: the system dimension)");

  double sym_threshold = 0.08;
  auto* sym = diag->add_subcommand("symmetry", "Inversion-symmetry score of a manifold (JSON)");
  add_common(sym, sym_c, false);
  add_source(sym, sym_s, false);
  add_embed(sym, sym_e);
  sym->add_option("--threshold", sym_threshold, "Score cutoff")->capture_default_str();

  // bench / sweep --------------------------------------------------------------
  Common bench_c;
  std::vector<std::string> tables;
  bool bench_ext = false;
  unsigned workers = 0;
  int repeats = 1;
  auto* bench = app.add_subcommand("bench", "Reproduce reference tables; exit 3 when a gating row's verdict differs");
  add_common(bench, bench_c);
  bench->add_option("--table", tables, "t2|core, t3|noise, t4|highdim, t5|fourfold, or all")->default_str("all");
  bench->add_flag("--extended", bench_ext, "Include non-gating extended rows");
  bench->add_option("--workers", workers, "Parallel rows (0: hardware threads)")->capture_default_str();
  bench->add_option("--repeats", repeats, "Seeds per row for the mean columns")->capture_default_str();

  Common sw_c;
  std::string sw_system, sw_pair = "x,z", sw_taus = "6:12", sw_ms = "1:6";
  int sw_tau = 0, sw_m = 0;
  auto* sweep = app.add_subcommand("sweep", "Final plain-CCM skills over tau (at fixed m) and m (at fixed tau)");
  add_common(sweep, sw_c);
  sweep->add_option("--system", sw_system, "Catalogue system")->required();
  sweep->add_option("--pair", sw_pair, "Variable pair")->capture_default_str();
  sweep->add_option("--taus", sw_taus, "Delays: a:b or a,b,c")->capture_default_str();
  sweep->add_option("--ms", sw_ms, "Dimensions: a:b or a,b,c")->capture_default_str();
  sweep->add_option("--base-tau", sw_tau, "Delay held fixed while m varies (default: catalogue)");
  sweep->add_option("--base-m", sw_m, "Dimension held fixed while tau varies (default: catalogue)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list) {
      for (const auto& n : catalogue_names(list_systems)) {
        const auto s = catalogue_system(n);
        std::cout << n << "  (" << s.dim << "D, " << to_string(s.symmetry.kind) << (s.extended ? ", extended" : "")
                  << ")  " << s.title << '\n';
      }
    } else if (*sim) {
      const SystemSpec spec = catalogue_system(sim_s.system);
      const Trajectory t = simulate(spec, sim_s);
      std::ostringstream os;
      io::write_trajectory_csv(os, t, spec.variables);
      emit(sim_c, os.str(), spec.name + ".csv");
    } else if (*emb) {
      const Loaded d = load_one(emb_s, emb_c.seed);
      const EmbeddingParams p = resolve_params(d, 0, emb_e);
      emit(emb_c, report::manifold_csv(delay_embed(d.series[0], p, d.names[0])), "manifold.csv");
    } else if (*sel) {
      const Loaded d = load_one(sel_s, sel_c.seed);
      const LagSelection lag = select_lag_mutual_info(d.series[0], max_lag, bins);
      int tau = 0;
      if (lag.has_minimum()) {
        tau = *lag.lag;
      } else if (d.spec) {
        tau = d.spec->config.tau;
        std::cerr << "warning: mutual information has no local minimum up to lag " << max_lag
                  << "; using the catalogue delay tau = " << tau << '\n';
      } else {
        throw numerical_error("mutual information has no local minimum up to lag " + std::to_string(max_lag) +
                              "; the delay cannot be chosen automatically");
      }
      const DimSelection dim = select_dim_fnn(d.series[0], tau, max_dim);
      std::cout << "tau=" << tau << " m=" << (dim.dimension ? std::to_string(*dim.dimension) : "none")
                << (lag.has_minimum() ? "" : " (tau from catalogue)") << '\n';
      if (json_out(sel_c)) {
        std::ostringstream os;
        os << "{\n  \"tau\": " << tau << ",\n  \"tau_from_mi\": " << (lag.has_minimum() ? "true" : "false")
           << ",\n  \"m\": " << (dim.dimension ? std::to_string(*dim.dimension) : "null") << ",\n  \"mi\": [";
        for (Index i = 0; i < lag.mi.size(); ++i) os << (i ? ", " : "") << io::format_double(lag.mi[i]);
        os << "],\n  \"fnn_fraction\": [";
        for (Index i = 0; i < dim.fnn_fraction.size(); ++i) os << (i ? ", " : "") << io::format_double(dim.fnn_fraction[i]);
        os << "]\n}\n";
        emit(sel_c, os.str(), "params.json", false);
      } else {
        emit(sel_c, report::indexed_csv("lag", lag.mi, 0), "mi.csv", false);
        if (!fnn_out.empty()) io::write_file(resolve_path(fnn_out), report::indexed_csv("m", dim.fnn_fraction, 1));
      }
    } else if (*ccm || *sccm) {
      const bool seg = sccm->parsed();
      const Common& c = seg ? sccm_c : ccm_c;
      const Loaded d = load_pair(seg ? sccm_s : ccm_s, c.seed);
      const Embed& e = seg ? sccm_e : ccm_e;
      const EmbeddingParams pa = resolve_params(d, 0, e), pb = resolve_params(d, 1, e);
      const SegmentCcmConfig cfg = make_config(seg ? sccm_f : ccm_f, c.seed, d.names);
      const CausalReport r = seg ? segment_ccm(d.series[0], d.series[1], pa, pb, cfg)
                                 : plain_ccm(d.series[0], d.series[1], pa, pb, cfg);
      print_warnings(r.warnings);
      std::cout << to_string(r.method) << ' ' << d.names[0] << ',' << d.names[1] << ": rho_" << d.names[0]
                << d.names[1] << " = " << fmt(r.rho_ab) << ", rho_" << d.names[1] << d.names[0] << " = "
                << fmt(r.rho_ba) << ", verdict " << r.verdict_label() << '\n';
      if (json_out(c))
        emit(c, seg ? report::causal_report_json(r) : report::verdict_json(r.verdict, d.names[0], d.names[1]),
             seg ? "sccm.json" : "ccm.json", false);
      else
        emit(c, report::curve_csv(r.combined), seg ? "sccm.csv" : "ccm.csv", false);
    } else if (*rec) {
      const Loaded d = load_one(rec_s, rec_c.seed);
      const EmbeddingParams p = resolve_params(d, 0, rec_e);
      RecurrenceOptions ro;
      ro.epsilon_quantile = rec_q;
      ro.min_separation = rec_sep;
      ro.seed = sub_seed(rec_c.seed, 10);
      const RecurrenceResult r = recurrence_check(delay_embed(d.series[0], p, d.names[0]), ro);
      std::cout << "recurrent=" << (r.recurrent ? "true" : "false") << " fraction=" << fmt(r.fraction)
                << " epsilon=" << io::format_double(r.epsilon) << " min_separation=" << r.min_separation << '\n';
      if (!r.recurrent)
        std::cerr << "warning: CCM prerequisites fail for '" << d.names[0] << "': " << r.status << '\n';
      if (json_out(rec_c))
        emit(rec_c, report::recurrence_json(r), "recurrence.json", false);
      else if (!rec_c.out.empty() || std::getenv("SCCM_OUTPUT_DIR"))
        emit(rec_c,
             "recurrent,fraction,epsilon,min_separation,points_used\n" + std::string(r.recurrent ? "1" : "0") + "," +
                 io::format_double(r.fraction) + "," + io::format_double(r.epsilon) + "," +
                 std::to_string(r.min_separation) + "," + std::to_string(r.points_used) + "\n",
             "recurrence.csv", false);
    } else if (*dist) {
      const Loaded d = load_one(dist_s, dist_c.seed);
      const EmbeddingParams p = resolve_params(d, 0, dist_e);
      ShadowManifold m = delay_embed(d.series[0], p, d.names[0]);
      if (dist_max < 2) throw usage_error("--max-points must be at least 2");
      if (m.size() > dist_max) {
        std::mt19937_64 rng(sub_seed(dist_c.seed, 3));
        std::vector<Index> rows(static_cast<std::size_t>(m.size()));
        for (Index i = 0; i < m.size(); ++i) rows[static_cast<std::size_t>(i)] = i;
        for (Index i = 0; i < dist_max; ++i)
          std::swap(rows[static_cast<std::size_t>(i)],
                    rows[static_cast<std::size_t>(i + static_cast<Index>(uniform_index(
                                                          rng, static_cast<std::uint64_t>(m.size() - i))))]);
        rows.resize(static_cast<std::size_t>(dist_max));
        std::sort(rows.begin(), rows.end());
        m = m.restrict_rows(rows);
        std::cerr << "note: distance matrix computed on a seeded subsample of " << dist_max << " points\n";
      }
      const Matrix dm = distance_matrix(m.points);
      emit(dist_c, dist_q ? report::recurrence_matrix_csv(dm, distance_quantile(dm, *dist_q)) : report::matrix_csv(dm),
           "distance.csv");
    } else if (*obs) {
      const SystemSpec spec = catalogue_system(obs_system);
      const Measurement h = Measurement::parse(spec, obs_measure);
      Vector state;
      if (!obs_state.empty()) {
        const auto parts = split_list(obs_state);
        if (static_cast<int>(parts.size()) != spec.dim)
          throw usage_error("--state needs " + std::to_string(spec.dim) + " comma-separated values");
        state.resize(spec.dim);
        try {
          for (int i = 0; i < spec.dim; ++i) state[i] = std::stod(parts[static_cast<std::size_t>(i)]);
        } catch (const std::logic_error&) {
          throw usage_error("--state: not a number list: '" + obs_state + "'");
        }
      } else {
        const Trajectory t = simulate_reference(spec);
        const Index at = obs_at >= 0 ? obs_at : t.size() / 2;
        if (at >= t.size()) throw usage_error("--at is past the end of the reference trajectory");
        state = t.states.row(at).transpose();
      }
      const ObservabilityReport r = observability_matrix(spec, h, state, obs_fd, obs_tol, obs_rows);
      std::cout << "rank=" << r.numerical_rank << " of " << r.matrix.cols() << " (tol " << obs_tol << ")\n";
      emit(obs_c, report::observability_json(r), "observability.json", false);
    } else if (*sym) {
      const Loaded d = load_one(sym_s, sym_c.seed);
      const EmbeddingParams p = resolve_params(d, 0, sym_e);
      SymmetryOptions so;
      so.threshold = sym_threshold;
      so.seed = sub_seed(sym_c.seed, 12);
      const SymmetryReport r = inversion_symmetry_score(delay_embed(d.series[0], p, d.names[0]), so);
      std::cout << "score=" << fmt(r.score, 4) << " symmetric=" << (r.is_symmetric ? "true" : "false") << '\n';
      emit(sym_c, report::symmetry_json(r), "symmetry.json", false);
    } else if (*bench) {
      if (tables.empty() || (tables.size() == 1 && tables[0] == "all")) tables = {"t2", "t3", "t4", "t5"};
      BenchOptions bo;
      bo.seed = bench_c.seed;
      bo.extended = bench_ext;
      bo.workers = workers;
      bo.repeats = repeats;
      std::vector<BenchRow> rows;
      for (const auto& t : tables) {
        const auto t0 = std::chrono::steady_clock::now();
        auto part = reproduce_table(t, bo);
        std::cerr << t << ": " << part.size() << " rows in "
                  << fmt(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1) << " s\n";
        rows.insert(rows.end(), part.begin(), part.end());
      }
      for (const auto& r : rows) {
        std::cout << (r.skipped ? "SKIP " : r.verdict_match && r.error.empty() ? "ok   " : "DIFF ") << r.table << ' '
                  << r.system << ' ' << r.pair_label() << (r.noise > 0 ? " noise " + fmt(r.noise, 1) : "");
        if (r.skipped) {
          std::cout << " (not in catalogue)\n";
          continue;
        }
        if (!r.error.empty()) {
          std::cout << " error: " << r.error << '\n';
          continue;
        }
        std::cout << " | ccm " << fmt(r.measured_ccm.first) << ' ' << fmt(r.measured_ccm.second) << ' '
                  << direction_label(r.ccm_verdict, r.var_a, r.var_b) << " | " << to_string(r.sccm_method) << ' '
                  << fmt(r.measured_sccm.first) << ' ' << fmt(r.measured_sccm.second) << ' '
                  << direction_label(r.sccm_verdict, r.var_a, r.var_b) << " | bands " << (r.bands_ok() ? "ok" : "off")
                  << (r.extended ? " (extended)" : "") << '\n';
      }
      emit(bench_c, json_out(bench_c) ? report::bench_json(rows) : report::bench_csv(rows),
           json_out(bench_c) ? "bench.json" : "bench.csv", false);
      return bench_passed(rows) ? 0 : 3;
    } else if (*sweep) {
      const auto pair = split_list(sw_pair);
      if (pair.size() != 2) throw usage_error("--pair needs exactly two names");
      const auto pts = parameter_sweep(sw_system, pair[0], pair[1], parse_range(sw_taus, "--taus"),
                                       parse_range(sw_ms, "--ms"), sw_c.seed, sw_tau, sw_m);
      for (const auto& p : pts)
        std::cout << p.axis << " tau=" << p.tau << " m=" << p.m << " rho_" << pair[0] << pair[1] << "=" << fmt(p.rho_ab)
                  << " rho_" << pair[1] << pair[0] << "=" << fmt(p.rho_ba) << ' '
                  << direction_label(p.verdict, pair[0], pair[1]) << '\n';
      emit(sw_c, json_out(sw_c) ? report::parameter_sweep_json(pts) : report::parameter_sweep_csv(pts),
           json_out(sw_c) ? "sweep.json" : "sweep.csv", false);
    }
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for the flags.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

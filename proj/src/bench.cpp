#include "sccm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "sccm/random.hpp"

namespace sccm {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw argument_error("reference scores line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::optional<SkillPair> skill_pair(std::string_view a, std::string_view b, std::size_t line) {
  if (a.empty() && b.empty()) return std::nullopt;
  if (a.empty() || b.empty())
    throw argument_error("reference scores line " + std::to_string(line) + ": half-filled skill pair");
  return SkillPair{to_double(a, line), to_double(b, line)};
}

std::optional<Direction> direction_cell(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return direction_from_string(s);
}

std::string canonical_table(std::string_view id) {
  if (id == "t2" || id == "core") return "t2";
  if (id == "t3" || id == "noise") return "t3";
  if (id == "t4" || id == "highdim") return "t4";
  if (id == "t5" || id == "fourfold") return "t5";
  throw argument_error("unknown table '" + std::string(id) + "' (expected t2|core, t3|noise, t4|highdim, t5|fourfold)");
}

std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Direction d counts a => b as causal.
bool includes_ab(Direction d) { return d == Direction::bidirectional || d == Direction::x_causes_y; }
bool includes_ba(Direction d) { return d == Direction::bidirectional || d == Direction::y_causes_x; }

struct RowRun {
  CausalReport ccm, sccm;
};

RowRun run_once(const SystemSpec& spec, const Trajectory& traj, const ReferenceRow& ref, std::uint64_t seed,
                const SegmentCcmConfig& pipeline) {
  const Index ia = spec.variable_index(ref.var_a);
  const Index ib = spec.variable_index(ref.var_b);
  TimeSeries a = observe(traj, ia);
  TimeSeries b = observe(traj, ib);
  if (ref.noise > 0.0) {
    // Keyed by variable so a series carries the same noise in every pair.
    a = add_noise(a, ref.noise, sub_seed(seed, 40 + static_cast<std::uint64_t>(ia)));
    b = add_noise(b, ref.noise, sub_seed(seed, 40 + static_cast<std::uint64_t>(ib)));
  }
  const EmbeddingParams p{spec.config.tau, spec.config.m};
  SegmentCcmConfig cfg = pipeline;
  cfg.seed = seed;
  cfg.name_a = ref.var_a;
  cfg.name_b = ref.var_b;
  return {plain_ccm(a, b, p, p, cfg), segment_ccm(a, b, p, p, cfg)};
}

}  // namespace

std::vector<ReferenceRow> parse_reference_scores(std::string_view csv) {
  std::vector<ReferenceRow> rows;
  bool header = true;
  std::size_t line_no = 0;
  for (std::string_view line : split(csv, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    auto f = split(line, ',');
    if (f.size() != 12)
      throw argument_error("reference scores line " + std::to_string(line_no) + ": expected 12 fields, got " +
                           std::to_string(f.size()));
    for (auto& x : f) x = trim(x);
    ReferenceRow r;
    r.table = std::string(f[0]);
    r.system = std::string(f[1]);
    r.var_a = std::string(f[2]);
    r.var_b = std::string(f[3]);
    r.noise = to_double(f[4], line_no);
    r.ccm = skill_pair(f[5], f[6], line_no);
    r.sccm = skill_pair(f[7], f[8], line_no);
    r.ccm_verdict = direction_cell(f[9]);
    r.sccm_verdict = direction_cell(f[10]);
    r.extended = f[11] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = parse_reference_scores(reference_scores_csv());
  return rows;
}

double cell_tolerance(double reference_value, bool blocked_ccm, const Tolerance& tol) {
  if (blocked_ccm) return tol.blocked;
  return reference_value >= 0.99 ? tol.saturated : tol.standard;
}

bool CellCheck::within() const { return std::abs(measured - reference) <= tolerance + 1e-12; }

bool BenchRow::bands_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellCheck& c) { return c.within(); });
}

BenchRow run_bench_row(const ReferenceRow& ref, const BenchOptions& options) {
  BenchRow row;
  row.table = ref.table;
  row.system = ref.system;
  row.var_a = ref.var_a;
  row.var_b = ref.var_b;
  row.noise = ref.noise;
  row.extended = ref.extended;
  row.reference_ccm = ref.ccm;
  row.reference_sccm = ref.sccm;
  row.reference_ccm_verdict = ref.ccm_verdict;
  row.reference_sccm_verdict = ref.sccm_verdict;
  row.repeats = std::max(1, options.repeats);

  SystemSpec spec;
  try {
    spec = catalogue_system(ref.system);
  } catch (const lookup_error& e) {
    row.skipped = true;
    row.error = e.what();
    return row;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Trajectory traj = simulate_reference(spec);
    const RowRun first = run_once(spec, traj, ref, options.seed, options.pipeline);
    row.measured_ccm = {first.ccm.rho_ab, first.ccm.rho_ba};
    row.measured_sccm = {first.sccm.rho_ab, first.sccm.rho_ba};
    row.ccm_verdict = first.ccm.verdict.verdict;
    row.sccm_verdict = first.sccm.verdict.verdict;
    row.sccm_method = first.sccm.method;
    row.warnings = first.sccm.warnings;

    if (row.repeats > 1) {
      SkillPair sc = row.measured_ccm, ss = row.measured_sccm;
      for (int r = 1; r < row.repeats; ++r) {
        const RowRun run = run_once(spec, traj, ref, options.seed + static_cast<std::uint64_t>(r), options.pipeline);
        sc.first += run.ccm.rho_ab;
        sc.second += run.ccm.rho_ba;
        ss.first += run.sccm.rho_ab;
        ss.second += run.sccm.rho_ba;
      }
      const double n = row.repeats;
      row.mean_ccm = SkillPair{sc.first / n, sc.second / n};
      row.mean_sccm = SkillPair{ss.first / n, ss.second / n};
    }
  } catch (const std::exception& e) {
    row.error = ref.table + " " + ref.system + " (" + ref.var_a + "," + ref.var_b + ", noise " +
                short_number(ref.noise) + "): " + e.what();
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const Tolerance& tol = options.tolerance;
  if (ref.ccm) {
    const Direction v = ref.ccm_verdict.value_or(Direction::bidirectional);
    row.cells.push_back({ref.ccm->first, row.measured_ccm.first, cell_tolerance(ref.ccm->first, !includes_ab(v), tol)});
    row.cells.push_back(
        {ref.ccm->second, row.measured_ccm.second, cell_tolerance(ref.ccm->second, !includes_ba(v), tol)});
  }
  if (ref.sccm) {
    row.cells.push_back({ref.sccm->first, row.measured_sccm.first, cell_tolerance(ref.sccm->first, false, tol)});
    row.cells.push_back({ref.sccm->second, row.measured_sccm.second, cell_tolerance(ref.sccm->second, false, tol)});
  }
  row.verdict_match = (!ref.ccm_verdict || *ref.ccm_verdict == row.ccm_verdict) &&
                      (!ref.sccm_verdict || *ref.sccm_verdict == row.sccm_verdict);
  return row;
}

std::vector<BenchRow> reproduce_table(std::string_view table_id, const BenchOptions& options) {
  const std::string table = canonical_table(table_id);
  std::vector<const ReferenceRow*> todo;
  for (const auto& r : reference_rows())
    if (r.table == table && (options.extended || !r.extended)) todo.push_back(&r);

  std::vector<BenchRow> rows(todo.size());
  unsigned workers = options.workers > 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, todo.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) rows[i] = run_bench_row(*todo[i], options);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  return rows;
}

bool bench_passed(const std::vector<BenchRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) {
    return !r.gating() || (r.error.empty() && r.verdict_match);
  });
}

std::vector<SweepPoint> parameter_sweep(std::string_view system, std::string_view var_a, std::string_view var_b,
                                        const std::vector<int>& taus, const std::vector<int>& ms, std::uint64_t seed,
                                        int base_tau, int base_m, const SegmentCcmConfig& pipeline) {
  const SystemSpec spec = catalogue_system(system);
  if (base_tau <= 0) base_tau = spec.config.tau;
  if (base_m <= 0) base_m = spec.config.m;
  const Trajectory traj = simulate_reference(spec);
  const TimeSeries a = observe(traj, spec.variable_index(var_a));
  const TimeSeries b = observe(traj, spec.variable_index(var_b));
  SegmentCcmConfig cfg = pipeline;
  cfg.seed = seed;
  cfg.check_recurrence = false;
  cfg.name_a = std::string(var_a);
  cfg.name_b = std::string(var_b);

  std::vector<SweepPoint> out;
  auto run = [&](int tau, int m, const char* axis) {
    const EmbeddingParams p{tau, m};
    p.validate();
    const CausalReport r = plain_ccm(a, b, p, p, cfg);
    out.push_back({tau, m, axis, r.rho_ab, r.rho_ba, r.verdict.verdict});
  };
  for (int tau : taus) run(tau, base_m, "tau");
  for (int m : ms) run(base_tau, m, "m");
  return out;
}

}  // namespace sccm

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sccm/symmetry.hpp"

namespace sccm {

// Stored reference values ------------------------------------------------------

using SkillPair = std::pair<double, double>;  // (rho_ab, rho_ba)

/// One row of the shipped table of published skills (data/reference_scores.csv).
struct ReferenceRow {
  std::string table;   // t2, t3, t4, t5
  std::string system;  // catalogue name
  std::string var_a, var_b;
  double noise = 0.0;  // observation noise sigma (t3)
  std::optional<SkillPair> ccm;
  std::optional<SkillPair> sccm;
  std::optional<Direction> ccm_verdict;
  std::optional<Direction> sccm_verdict;
  bool extended = false;
};

/// CSV text compiled into the library.
std::string_view reference_scores_csv();
std::vector<ReferenceRow> parse_reference_scores(std::string_view csv);
const std::vector<ReferenceRow>& reference_rows();

// Table reproduction -------------------------------------------------------------

struct Tolerance {
  double blocked = 0.10;    // plain-CCM skill in a direction the reference verdict marks non-causal
  double standard = 0.05;
  double saturated = 0.02;  // reference value >= 0.99
};

/// Band half-width for one cell.
double cell_tolerance(double reference_value, bool blocked_ccm, const Tolerance& tol = {});

struct CellCheck {
  double reference = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool within() const;
};

struct BenchRow {
  std::string table;
  std::string system;
  std::string var_a, var_b;
  double noise = 0.0;
  bool extended = false;

  std::optional<SkillPair> reference_ccm, reference_sccm;
  std::optional<Direction> reference_ccm_verdict, reference_sccm_verdict;

  SkillPair measured_ccm{0.0, 0.0};
  SkillPair measured_sccm{0.0, 0.0};
  Direction ccm_verdict = Direction::none;
  Direction sccm_verdict = Direction::none;
  Method sccm_method = Method::ccm;  // what segment_ccm actually ran
  std::vector<std::string> warnings;

  /// Multi-seed means (repeats > 1 only).
  std::optional<SkillPair> mean_ccm, mean_sccm;
  int repeats = 1;

  /// One entry per reference cell present: ccm ab, ccm ba, sccm ab, sccm ba.
  std::vector<CellCheck> cells;
  bool verdict_match = false;
  bool skipped = false;  // system not in the catalogue
  std::string error;     // non-empty when the row threw
  double seconds = 0.0;

  bool gating() const { return !extended; }
  bool bands_ok() const;
  std::string pair_label() const { return var_a + "," + var_b; }
};

struct BenchOptions {
  std::uint64_t seed = 0;
  bool extended = false;
  /// Worker threads for independent rows; 0 means hardware concurrency.
  unsigned workers = 0;
  int repeats = 1;
  Tolerance tolerance;
  SegmentCcmConfig pipeline;  // thresholds and sweep settings
};

/// Runs plain CCM and segment CCM for every row of the given table
/// (t2 or core, t3 or noise, t4 or highdim, t5 or fourfold). Rows keep the stored order regardless of which worker
/// finished first. Rows that throw are reported with `error` set.
std::vector<BenchRow> reproduce_table(std::string_view table_id, const BenchOptions& options = {});

/// Runs one stored row.
BenchRow run_bench_row(const ReferenceRow& ref, const BenchOptions& options = {});

/// True iff every gating row has verdict_match and no error.
bool bench_passed(const std::vector<BenchRow>& rows);

// Embedding parameter sweep ------------------------------------------------------

struct SweepPoint {
  int tau = 1;
  int m = 1;
  std::string axis;  // "tau" or "m": which axis this point varies
  double rho_ab = 0.0;
  double rho_ba = 0.0;
  Direction verdict = Direction::none;
};

/// Plain-CCM final skills with one embedding axis varied at a time: every
/// tau in `taus` at m = base_m, then every m in `ms` at tau = base_tau.
/// Non-positive base values fall back to the catalogue reference config.
std::vector<SweepPoint> parameter_sweep(std::string_view system, std::string_view var_a, std::string_view var_b,
                                        const std::vector<int>& taus, const std::vector<int>& ms,
                                        std::uint64_t seed = 0, int base_tau = 0, int base_m = 0,
                                        const SegmentCcmConfig& pipeline = {});

}  // namespace sccm

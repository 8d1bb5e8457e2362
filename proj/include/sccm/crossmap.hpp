#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sccm/embedding.hpp"

namespace sccm {

// Cross-map estimation -------------------------------------------------------

/// Normalised exponential weights for neighbour distances sorted ascending:
/// u_i = exp(-d_i / d_1), w_i = u_i / sum(u). Requires d_1 > 0.
Vector neighbor_weights(std::span<const double> distances);

struct CrossMapOptions {
  /// Nearest distances below this fraction of the source manifold's
  /// bounding-box diagonal count as exact matches.
  double zero_distance_rel = 1e-12;
};

/// Predicts target values at the query rows of `source` from the m + 1
/// nearest library rows, weighted by neighbor_weights. `target` is indexed by
/// original sample index (source.time_index). A query contained in the
/// library is left out of its own neighbour set. When the nearest distance
/// is numerically zero, the prediction is the plain mean of the target over
/// all coincident library points.
Vector cross_map_estimate(const ShadowManifold& source, const Eigen::Ref<const Vector>& target,
                          std::span<const Index> library, std::span<const Index> queries,
                          const CrossMapOptions& options = {});

// Skill ------------------------------------------------------------------------

struct Skill {
  double rho = 0.0;
  bool defined = true;  // false when either side is constant
};

/// |Pearson correlation|; constant input gives {0, false}.
Skill forecast_skill(const Eigen::Ref<const Vector>& predicted, const Eigen::Ref<const Vector>& actual);

// Sweeps -----------------------------------------------------------------------

/// prefix: the first L manifold rows. random: the first L rows of one seeded
/// permutation, so libraries are nested as L grows.
enum class LibraryMode { prefix, random };

struct SweepOptions {
  /// Explicit schedule; empty means the default geometric schedule.
  std::vector<Index> library_sizes;
  int schedule_points = 12;
  LibraryMode mode = LibraryMode::random;
  Index max_eval = 2000;
  CrossMapOptions crossmap;
};

struct CrossMapCurve {
  std::vector<Index> library_sizes;
  std::vector<double> rho;
  std::string source_id;  // manifold the predictions are made from
  std::string target_id;  // series being predicted
  std::vector<Index> eval_indices;  // manifold rows used for scoring

  double final_rho() const { return rho.empty() ? 0.0 : rho.back(); }
};

/// Both cross-map directions for the pair (x, y). `xy` is the skill of X
/// estimated from M_y (evidence for X => Y); `yx` is Y estimated from M_x.
struct SweepResult {
  CrossMapCurve xy;
  CrossMapCurve yx;
};

/// Geometric schedule of `points` sizes from max(5(m+1), 50) to n, rounded
/// and deduplicated.
std::vector<Index> default_library_schedule(Index n, int m, int points = 12);

/// Evenly strided subset of at most max_eval rows out of n.
std::vector<Index> evaluation_rows(Index n, Index max_eval);

SweepResult ccm_sweep(const TimeSeries& series_x, const TimeSeries& series_y, EmbeddingParams params,
                      const SweepOptions& options = {}, std::uint64_t seed = 0);

/// Manifold-level sweep. The two manifolds must list identical time
/// indices; x and y are the full original series.
SweepResult ccm_sweep(const ShadowManifold& mx, const ShadowManifold& my, const Eigen::Ref<const Vector>& x,
                      const Eigen::Ref<const Vector>& y, const SweepOptions& options = {},
                      std::uint64_t seed = 0);

// Convergence and verdicts -----------------------------------------------------

struct ConvergenceStats {
  bool converged = false;
  double final_rho = 0.0;
  double head_mean = 0.0;   // mean rho over the first quartile of sizes
  double tail_mean = 0.0;   // mean rho over the last quartile
  double tail_slope = 0.0;  // d rho / d log10 L over the last half
  bool above_floor = false;
  bool rising = false;
  bool plateaued = false;
};

ConvergenceStats convergence_check(const CrossMapCurve& curve, double plateau_tol, double floor);

enum class Direction { bidirectional, x_causes_y, y_causes_x, none };

/// Display form for a pair, e.g. "X<=>Z", "Z=>X", "none".
std::string direction_label(Direction d, std::string_view x = "X", std::string_view y = "Y");
std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

struct VerdictRule {
  double floor = 0.8;
  double plateau_tol = 0.02;  // per decade of library size
};

struct CausalVerdict {
  double rho_xy_final = 0.0;
  double rho_yx_final = 0.0;
  bool converged_xy = false;
  bool converged_yx = false;
  ConvergenceStats stats_xy;
  ConvergenceStats stats_yx;
  Direction verdict = Direction::none;
  VerdictRule rule;
};

CausalVerdict causal_verdict(const SweepResult& sweep, const VerdictRule& rule = {});

}  // namespace sccm

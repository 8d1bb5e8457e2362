#include "sccm/crossmap.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "sccm/kdtree.hpp"
#include "sccm/random.hpp"

namespace sccm {

Vector neighbor_weights(std::span<const double> distances) {
  if (distances.empty()) throw argument_error("neighbor_weights: no distances");
  const double d1 = distances.front();
  if (!(d1 > 0.0)) throw argument_error("neighbor_weights: nearest distance must be positive");
  Vector w(static_cast<Index>(distances.size()));
  for (std::size_t i = 0; i < distances.size(); ++i) w[static_cast<Index>(i)] = std::exp(-distances[i] / d1);
  return w / w.sum();
}

namespace {

double bounding_diagonal(const Matrix& pts) {
  if (pts.rows() == 0) return 0.0;
  return (pts.colwise().maxCoeff() - pts.colwise().minCoeff()).norm();
}

}  // namespace

Vector cross_map_estimate(const ShadowManifold& source, const Eigen::Ref<const Vector>& target,
                          std::span<const Index> library, std::span<const Index> queries,
                          const CrossMapOptions& options) {
  const int k = static_cast<int>(source.dim()) + 1;
  if (static_cast<Index>(library.size()) < k + 1)
    throw argument_error("library of " + std::to_string(library.size()) + " points is too small; need at least " +
                         std::to_string(k + 1) + " (m + 2)");
  for (Index q : queries)
    if (q < 0 || q >= source.size()) throw argument_error("query row out of range");
  const Index max_t = source.time_index.empty() ? -1 : source.time_index.back();
  if (max_t >= target.size()) throw argument_error("target series is shorter than the source manifold's time span");

  const KdTree tree(source.points, library);
  const double zero_tol = options.zero_distance_rel * bounding_diagonal(source.points);

  auto target_at = [&](Index row) { return target[source.time_index[static_cast<std::size_t>(row)]]; };

  Vector pred(static_cast<Index>(queries.size()));
  std::vector<Neighbor> nb;
  std::vector<double> dist;
  Vector q(source.dim());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Index row = queries[i];
    q = source.points.row(row).transpose();
    // Ids are manifold rows, so excluding `row` only matters when the query
    // belongs to the library.
    tree.knn(q.data(), k, row, nb);
    if (nb.front().distance <= zero_tol) {
      tree.radius_search(q.data(), zero_tol, row, nb);
      double s = 0.0;
      for (const auto& n : nb) s += target_at(n.id);
      pred[static_cast<Index>(i)] = s / static_cast<double>(nb.size());
      continue;
    }
    dist.resize(nb.size());
    for (std::size_t j = 0; j < nb.size(); ++j) dist[j] = nb[j].distance;
    const Vector w = neighbor_weights(dist);
    double s = 0.0;
    for (std::size_t j = 0; j < nb.size(); ++j) s += w[static_cast<Index>(j)] * target_at(nb[j].id);
    pred[static_cast<Index>(i)] = s;
  }
  return pred;
}

Skill forecast_skill(const Eigen::Ref<const Vector>& predicted, const Eigen::Ref<const Vector>& actual) {
  if (predicted.size() != actual.size()) throw argument_error("forecast_skill: length mismatch");
  if (predicted.size() < 3) throw argument_error("forecast_skill: need at least 3 values");
  const Vector a = predicted.array() - predicted.mean();
  const Vector b = actual.array() - actual.mean();
  const double saa = a.squaredNorm(), sbb = b.squaredNorm();
  if (!(saa > 0.0) || !(sbb > 0.0)) return {0.0, false};
  const double r = a.dot(b) / std::sqrt(saa * sbb);
  return {std::min(1.0, std::abs(r)), true};
}

std::vector<Index> default_library_schedule(Index n, int m, int points) {
  const Index min_lib = 5 * static_cast<Index>(m + 1);
  if (n < min_lib)
    throw argument_error("manifold of " + std::to_string(n) + " points is below the minimum library size " +
                         std::to_string(min_lib));
  const Index lo = std::min(std::max<Index>(min_lib, 50), n);
  std::vector<Index> sizes;
  if (points <= 1 || lo == n) return {n};
  const double ratio = std::log(static_cast<double>(n) / static_cast<double>(lo));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    Index L = static_cast<Index>(std::llround(static_cast<double>(lo) * std::exp(f * ratio)));
    L = std::clamp(L, lo, n);
    if (sizes.empty() || L > sizes.back()) sizes.push_back(L);
  }
  if (sizes.back() != n) sizes.push_back(n);
  return sizes;
}

std::vector<Index> evaluation_rows(Index n, Index max_eval) {
  std::vector<Index> rows;
  if (n <= 0) return rows;
  if (max_eval <= 0 || n <= max_eval) {
    rows.resize(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), Index{0});
    return rows;
  }
  rows.reserve(static_cast<std::size_t>(max_eval));
  for (Index i = 0; i < max_eval; ++i) rows.push_back((i * n) / max_eval);
  return rows;
}

namespace {

CrossMapCurve sweep_direction(const ShadowManifold& source, const Eigen::Ref<const Vector>& target,
                              const std::vector<Index>& sizes, const std::vector<Index>& eval,
                              const std::vector<Index>& library_order, const CrossMapOptions& cm) {
  CrossMapCurve curve;
  curve.library_sizes = sizes;
  curve.eval_indices = eval;
  curve.source_id = source.source_id;
  Vector actual(static_cast<Index>(eval.size()));
  for (std::size_t i = 0; i < eval.size(); ++i)
    actual[static_cast<Index>(i)] = target[source.time_index[static_cast<std::size_t>(eval[i])]];
  for (Index L : sizes) {
    std::span<const Index> lib(library_order.data(), static_cast<std::size_t>(L));
    const Vector pred = cross_map_estimate(source, target, lib, eval, cm);
    curve.rho.push_back(forecast_skill(pred, actual).rho);
  }
  return curve;
}

}  // namespace

SweepResult ccm_sweep(const ShadowManifold& mx, const ShadowManifold& my, const Eigen::Ref<const Vector>& x,
                      const Eigen::Ref<const Vector>& y, const SweepOptions& options, std::uint64_t seed) {
  if (mx.time_index != my.time_index)
    throw argument_error("ccm_sweep: manifolds must share identical time indices (align them first)");
  if (x.size() != y.size()) throw argument_error("ccm_sweep: series lengths differ");
  const Index n = mx.size();
  const int m = static_cast<int>(std::max(mx.dim(), my.dim()));

  std::vector<Index> sizes = options.library_sizes.empty()
                                 ? default_library_schedule(n, m, options.schedule_points)
                                 : options.library_sizes;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > n)
      throw argument_error("library size " + std::to_string(sizes[i]) + " exceeds the " + std::to_string(n) +
                           " available manifold points");
    if (sizes[i] < m + 2)
      throw argument_error("library size " + std::to_string(sizes[i]) + " is below m + 2 = " +
                           std::to_string(m + 2));
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw argument_error("library sizes must be strictly increasing");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  if (options.mode == LibraryMode::random) {
    // Nested random libraries: a single seeded permutation, prefixes of it.
    std::mt19937_64 rng(sub_seed(seed, 1));
    for (Index i = n - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(uniform_index(rng, static_cast<std::uint64_t>(i + 1)))]);
  }
  const std::vector<Index> eval = evaluation_rows(n, options.max_eval);

  auto xy_job = std::async(std::launch::deferred, [&] {
    return sweep_direction(my, x, sizes, eval, order, options.crossmap);
  });
  CrossMapCurve yx = sweep_direction(mx, y, sizes, eval, order, options.crossmap);
  SweepResult out{xy_job.get(), std::move(yx)};
  out.xy.target_id = mx.source_id;
  out.yx.target_id = my.source_id;
  return out;
}

SweepResult ccm_sweep(const TimeSeries& series_x, const TimeSeries& series_y, EmbeddingParams params,
                      const SweepOptions& options, std::uint64_t seed) {
  if (series_x.size() != series_y.size()) throw argument_error("ccm_sweep: series lengths differ");
  if (series_x.dt != series_y.dt) throw argument_error("ccm_sweep: series sampling intervals differ");
  const ShadowManifold mx = delay_embed(series_x, params, "x");
  const ShadowManifold my = delay_embed(series_y, params, "y");
  return ccm_sweep(mx, my, series_x.values, series_y.values, options, seed);
}

ConvergenceStats convergence_check(const CrossMapCurve& curve, double plateau_tol, double floor) {
  const std::size_t n = curve.rho.size();
  if (n < 4 || curve.library_sizes.size() != n)
    throw argument_error("convergence_check: need at least 4 library sizes, got " + std::to_string(n));
  ConvergenceStats st;
  const std::size_t q = std::max<std::size_t>(1, n / 4);
  for (std::size_t i = 0; i < q; ++i) {
    st.head_mean += curve.rho[i];
    st.tail_mean += curve.rho[n - 1 - i];
  }
  st.head_mean /= static_cast<double>(q);
  st.tail_mean /= static_cast<double>(q);
  st.final_rho = curve.rho.back();

  // Least-squares slope of rho against log10(L) over the last half.
  const std::size_t start = n / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(n - start);
  for (std::size_t i = start; i < n; ++i) {
    const double lx = std::log10(static_cast<double>(curve.library_sizes[i]));
    sx += lx;
    sy += curve.rho[i];
    sxx += lx * lx;
    sxy += lx * curve.rho[i];
  }
  const double denom = cnt * sxx - sx * sx;
  st.tail_slope = denom > 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;

  st.above_floor = st.final_rho >= floor;
  st.rising = st.tail_mean > st.head_mean;
  st.plateaued = st.tail_slope < plateau_tol;
  st.converged = st.above_floor && st.rising && st.plateaued;
  return st;
}

std::string direction_label(Direction d, std::string_view x, std::string_view y) {
  switch (d) {
    case Direction::bidirectional: return std::string(x) + "<=>" + std::string(y);
    case Direction::x_causes_y: return std::string(x) + "=>" + std::string(y);
    case Direction::y_causes_x: return std::string(y) + "=>" + std::string(x);
    case Direction::none: return "none";
  }
  return "none";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::bidirectional: return "bidirectional";
    case Direction::x_causes_y: return "x_causes_y";
    case Direction::y_causes_x: return "y_causes_x";
    case Direction::none: return "none";
  }
  return "none";
}

Direction direction_from_string(std::string_view s) {
  if (s == "bidirectional") return Direction::bidirectional;
  if (s == "x_causes_y") return Direction::x_causes_y;
  if (s == "y_causes_x") return Direction::y_causes_x;
  if (s == "none") return Direction::none;
  throw argument_error("unknown direction '" + std::string(s) + "'");
}

CausalVerdict causal_verdict(const SweepResult& sweep, const VerdictRule& rule) {
  CausalVerdict v;
  v.rule = rule;
  v.stats_xy = convergence_check(sweep.xy, rule.plateau_tol, rule.floor);
  v.stats_yx = convergence_check(sweep.yx, rule.plateau_tol, rule.floor);
  v.rho_xy_final = sweep.xy.final_rho();
  v.rho_yx_final = sweep.yx.final_rho();
  v.converged_xy = v.stats_xy.converged;
  v.converged_yx = v.stats_yx.converged;
  if (v.converged_xy && v.converged_yx)
    v.verdict = Direction::bidirectional;
  else if (v.converged_xy)
    v.verdict = Direction::x_causes_y;
  else if (v.converged_yx)
    v.verdict = Direction::y_causes_x;
  else
    v.verdict = Direction::none;
  return v;
}

}  // namespace sccm

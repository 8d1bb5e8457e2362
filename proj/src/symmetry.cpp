#include "sccm/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "sccm/kdtree.hpp"
#include "sccm/random.hpp"

namespace sccm {

SymmetryReport inversion_symmetry_score(const ShadowManifold& manifold, const SymmetryOptions& options) {
  const Index n = manifold.size();
  if (n < 100) throw argument_error("inversion_symmetry_score: need at least 100 points, got " + std::to_string(n));
  SymmetryReport rep;
  rep.threshold = options.threshold;
  rep.center = manifold.points.colwise().mean().transpose();
  const double rms =
      std::sqrt((manifold.points.rowwise() - rep.center.transpose()).rowwise().squaredNorm().mean());
  if (!(rms > 0.0)) throw degenerate_input_error("inversion_symmetry_score: all points coincide");

  std::vector<Index> sample(static_cast<std::size_t>(n));
  std::iota(sample.begin(), sample.end(), Index{0});
  if (options.max_samples > 0 && n > options.max_samples) {
    std::mt19937_64 rng(sub_seed(options.seed, 4));
    for (Index i = 0; i < options.max_samples; ++i) {
      const auto j = i + static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n - i)));
      std::swap(sample[static_cast<std::size_t>(i)], sample[static_cast<std::size_t>(j)]);
    }
    sample.resize(static_cast<std::size_t>(options.max_samples));
  }

  const KdTree tree(manifold.points);
  std::vector<Neighbor> nb;
  Vector q(manifold.dim());
  double total = 0.0;
  for (Index row : sample) {
    q = 2.0 * rep.center - manifold.points.row(row).transpose();
    tree.knn(q.data(), 1, -1, nb);
    total += nb.front().distance;
  }
  rep.score = total / static_cast<double>(sample.size()) / rms;
  rep.is_symmetric = rep.score < rep.threshold;
  return rep;
}

std::vector<Index> SegmentLabels::rows(int label) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) out.push_back(static_cast<Index>(i));
  return out;
}

Index SegmentLabels::count(int label) const {
  return static_cast<Index>(std::count(labels.begin(), labels.end(), label));
}

SegmentLabels kmeans2(const ShadowManifold& manifold, std::uint64_t /*seed*/, int max_iter) {
  const Matrix& p = manifold.points;
  const Index n = p.rows();
  if (n < 2) throw argument_error("kmeans2: need at least 2 points");
  if (max_iter < 1) throw argument_error("kmeans2: max_iter must be >= 1");
  const Eigen::RowVectorXd mean = p.colwise().mean();
  Index far = 0;
  (p.rowwise() - mean).rowwise().squaredNorm().maxCoeff(&far);
  if (!((p.row(far) - mean).squaredNorm() > 0.0))
    throw degenerate_input_error("kmeans2: all points are identical");

  SegmentLabels out;
  out.centroids.resize(2, p.cols());
  out.centroids.row(0) = p.row(far);
  out.centroids.row(1) = 2.0 * mean - p.row(far);
  out.labels.assign(static_cast<std::size_t>(n), 0);

  for (int it = 1; it <= max_iter; ++it) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      const double d1 = (p.row(i) - out.centroids.row(0)).squaredNorm();
      const double d2 = (p.row(i) - out.centroids.row(1)).squaredNorm();
      const int label = d2 < d1 ? 2 : 1;
      if (out.labels[static_cast<std::size_t>(i)] != label) {
        out.labels[static_cast<std::size_t>(i)] = label;
        changed = true;
      }
    }
    out.iterations = it;
    if (!changed) {
      out.converged = true;
      break;
    }
    Matrix sums = Matrix::Zero(2, p.cols());
    Index counts[2] = {0, 0};
    for (Index i = 0; i < n; ++i) {
      const int k = out.labels[static_cast<std::size_t>(i)] - 1;
      sums.row(k) += p.row(i);
      ++counts[k];
    }
    // An emptied cluster keeps its previous centroid.
    for (int k = 0; k < 2; ++k)
      if (counts[k] > 0) out.centroids.row(k) = sums.row(k) / static_cast<double>(counts[k]);
  }
  if (out.count(1) == 0 || out.count(2) == 0)
    throw degenerate_input_error("kmeans2: one segment is empty; the manifold has no two-cluster structure");
  return out;
}

std::string_view to_string(Method m) { return m == Method::sccm ? "sccm" : "ccm"; }

namespace {

// The whole-manifold schedule mapped onto each segment by relative size;
// positions where any segment would repeat a size are dropped from all.
std::vector<std::vector<Index>> segment_schedules(const std::vector<Index>& base, Index total,
                                                  const std::vector<Index>& seg_sizes, Index min_lib) {
  std::vector<std::vector<Index>> out(seg_sizes.size());
  std::vector<Index> last(seg_sizes.size(), 0);
  for (Index L : base) {
    const double f = static_cast<double>(L) / static_cast<double>(total);
    std::vector<Index> cand(seg_sizes.size());
    bool ok = true;
    for (std::size_t s = 0; s < seg_sizes.size(); ++s) {
      cand[s] = std::clamp<Index>(static_cast<Index>(std::llround(f * static_cast<double>(seg_sizes[s]))),
                                  std::min(min_lib, seg_sizes[s]), seg_sizes[s]);
      if (cand[s] <= last[s]) ok = false;
    }
    if (!ok) continue;
    for (std::size_t s = 0; s < seg_sizes.size(); ++s) {
      out[s].push_back(cand[s]);
      last[s] = cand[s];
    }
  }
  return out;
}

CrossMapCurve mean_curve(const CrossMapCurve& a, const CrossMapCurve& b) {
  CrossMapCurve c;
  c.source_id = a.source_id;
  c.target_id = a.target_id;
  for (std::size_t i = 0; i < a.rho.size(); ++i) {
    c.library_sizes.push_back(a.library_sizes[i] + b.library_sizes[i]);
    c.rho.push_back((a.rho[i] + b.rho[i]) / 2.0);
  }
  return c;
}

void run_recurrence(CausalReport& rep, const ShadowManifold& ma, const ShadowManifold& mb) {
  RecurrenceOptions ro = rep.config.recurrence;
  ro.seed = sub_seed(rep.config.seed, 10);
  rep.recurrence_a = recurrence_check(ma, ro);
  ro.seed = sub_seed(rep.config.seed, 11);
  rep.recurrence_b = recurrence_check(mb, ro);
  for (const auto& [res, name] : {std::pair{&*rep.recurrence_a, rep.name_a}, std::pair{&*rep.recurrence_b, rep.name_b}})
    if (!res->recurrent)
      rep.warnings.push_back("series " + name + " is " + res->status +
                             "; CCM assumes recurrent attractor dynamics, so its skills are not evidence of causality");
}

}  // namespace

CausalReport plain_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                       EmbeddingParams params_b, const SegmentCcmConfig& config) {
  if (series_a.size() != series_b.size()) throw argument_error("series lengths differ");
  if (series_a.dt != series_b.dt) throw argument_error("series sampling intervals differ");
  CausalReport rep;
  rep.method = Method::ccm;
  rep.config = config;
  rep.name_a = config.name_a;
  rep.name_b = config.name_b;
  rep.params_a = params_a;
  rep.params_b = params_b;
  auto [ma, mb] = align_manifolds(delay_embed(series_a, params_a, config.name_a),
                                  delay_embed(series_b, params_b, config.name_b));
  if (config.check_recurrence) run_recurrence(rep, ma, mb);
  rep.combined = ccm_sweep(ma, mb, series_a.values, series_b.values, config.sweep, sub_seed(config.seed, 20));
  rep.rho_ab = rep.combined.xy.final_rho();
  rep.rho_ba = rep.combined.yx.final_rho();
  rep.verdict = causal_verdict(rep.combined, config.rule);
  return rep;
}

namespace {

CausalReport prepare(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                     EmbeddingParams params_b, const SegmentCcmConfig& config) {
  if (series_a.size() != series_b.size()) throw argument_error("series lengths differ");
  if (series_a.dt != series_b.dt) throw argument_error("series sampling intervals differ");
  CausalReport rep;
  rep.config = config;
  rep.name_a = config.name_a;
  rep.name_b = config.name_b;
  rep.params_a = params_a;
  rep.params_b = params_b;
  return rep;
}

// Segments are put in order of their earliest time index before seeding, so
// the outcome does not depend on which cluster carries which label.
void run_segments(CausalReport& rep, const ShadowManifold& ma, const ShadowManifold& mb, const TimeSeries& series_a,
                  const TimeSeries& series_b, const SegmentLabels& labels) {
  const SegmentCcmConfig& config = rep.config;
  const int m = static_cast<int>(std::max(ma.dim(), mb.dim()));
  const Index min_segment = 5 * static_cast<Index>(m + 1);
  std::vector<std::vector<Index>> rows = {labels.rows(1), labels.rows(2)};
  if (rows[0].empty() || rows[1].empty())
    throw segment_too_small_error("one segment is empty", 0);
  if (rows[1].front() < rows[0].front()) std::swap(rows[0], rows[1]);
  std::vector<Index> sizes;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const auto size = static_cast<Index>(rows[s].size());
    if (size < min_segment)
      throw segment_too_small_error("segment " + std::to_string(s + 1) + " has " + std::to_string(size) +
                                        " points, below the minimum library size " + std::to_string(min_segment),
                                    static_cast<long>(size));
    sizes.push_back(size);
  }

  const Index total = ma.size();
  const std::vector<Index> base = config.sweep.library_sizes.empty()
                                      ? default_library_schedule(total, m, config.sweep.schedule_points)
                                      : config.sweep.library_sizes;
  const auto schedules = segment_schedules(base, total, sizes, std::max<Index>(m + 2, min_segment));

  auto run_segment = [&](std::size_t s) {
    SweepOptions opt = config.sweep;
    opt.library_sizes = schedules[s];
    // Rows of the two aligned manifolds coincide, so the same row list
    // carries the time set from the segmented manifold to the other one.
    const ShadowManifold sa = ma.restrict_rows(rows[s]);
    const ShadowManifold sb = mb.restrict_rows(rows[s]);
    return SegmentResult{sizes[s], ccm_sweep(sa, sb, series_a.values, series_b.values, opt,
                                             sub_seed(config.seed, 30 + s))};
  };
  auto second = std::async(std::launch::async, run_segment, std::size_t{1});
  SegmentResult first = run_segment(0);
  rep.segments.push_back(std::move(first));
  rep.segments.push_back(second.get());

  rep.combined.xy = mean_curve(rep.segments[0].sweep.xy, rep.segments[1].sweep.xy);
  rep.combined.yx = mean_curve(rep.segments[0].sweep.yx, rep.segments[1].sweep.yx);
  rep.rho_ab = rep.combined.xy.final_rho();
  rep.rho_ba = rep.combined.yx.final_rho();
  rep.verdict = causal_verdict(rep.combined, config.rule);
}

}  // namespace

CausalReport segment_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                         EmbeddingParams params_b, const SegmentCcmConfig& config) {
  CausalReport rep = prepare(series_a, series_b, params_a, params_b, config);

  auto [ma, mb] = align_manifolds(delay_embed(series_a, params_a, config.name_a),
                                  delay_embed(series_b, params_b, config.name_b));
  if (config.check_recurrence) run_recurrence(rep, ma, mb);

  SymmetryOptions so = config.symmetry;
  so.seed = sub_seed(config.seed, 12);
  rep.symmetry_a = inversion_symmetry_score(ma, so);
  so.seed = sub_seed(config.seed, 13);
  rep.symmetry_b = inversion_symmetry_score(mb, so);

  if (rep.symmetry_a.is_symmetric == rep.symmetry_b.is_symmetric) {
    rep.method = Method::ccm;
    rep.warnings.push_back(rep.symmetry_a.is_symmetric
                               ? "both manifolds are inversion symmetric; ran plain CCM"
                               : "neither manifold is inversion symmetric; ran plain CCM");
    rep.combined = ccm_sweep(ma, mb, series_a.values, series_b.values, config.sweep, sub_seed(config.seed, 20));
    rep.rho_ab = rep.combined.xy.final_rho();
    rep.rho_ba = rep.combined.yx.final_rho();
    rep.verdict = causal_verdict(rep.combined, config.rule);
    return rep;
  }

  rep.method = Method::sccm;
  rep.segmented_manifold = rep.symmetry_a.is_symmetric ? 0 : 1;
  const ShadowManifold& symmetric = rep.symmetry_a.is_symmetric ? ma : mb;
  run_segments(rep, ma, mb, series_a, series_b, kmeans2(symmetric, sub_seed(config.seed, 14), config.kmeans_max_iter));
  return rep;
}

CausalReport segment_ccm(const TimeSeries& series_a, const TimeSeries& series_b, EmbeddingParams params_a,
                         EmbeddingParams params_b, const SegmentLabels& labels, int segmented_manifold,
                         const SegmentCcmConfig& config) {
  if (segmented_manifold != 0 && segmented_manifold != 1)
    throw argument_error("segmented_manifold must be 0 (series a) or 1 (series b)");
  CausalReport rep = prepare(series_a, series_b, params_a, params_b, config);
  auto [ma, mb] = align_manifolds(delay_embed(series_a, params_a, config.name_a),
                                  delay_embed(series_b, params_b, config.name_b));
  if (static_cast<Index>(labels.labels.size()) != ma.size())
    throw argument_error("segment labels cover " + std::to_string(labels.labels.size()) +
                         " points but the aligned manifolds have " + std::to_string(ma.size()));
  if (config.check_recurrence) run_recurrence(rep, ma, mb);
  rep.method = Method::sccm;
  rep.segmented_manifold = segmented_manifold;
  run_segments(rep, ma, mb, series_a, series_b, labels);
  return rep;
}

ParityResult parity_check_differential(const SystemSpec& system, const Measurement& h, int n_points,
                                       std::uint64_t seed, int order) {
  if (system.symmetry.kind != SymmetryKind::c2_rotation)
    throw unsupported_error("parity check needs a two-fold rotation symmetry; system '" + system.name + "' is tagged " +
                            std::string(to_string(system.symmetry.kind)));
  if (n_points < 1) throw argument_error("parity_check_differential: n_points must be >= 1");
  if (h.weights.size() != system.dim) throw argument_error("parity_check_differential: measurement dimension mismatch");
  const Matrix& r = system.symmetry.representation;
  const Vector pulled = r.transpose() * h.weights;  // h(R x) = (R^T w) . x

  ParityResult res;
  if (pulled == h.weights)
    res.parity = 1;
  else if (pulled == -h.weights)
    res.parity = -1;
  else
    throw argument_error("parity_check_differential: measurement is neither even nor odd under the symmetry");

  const auto ord = static_cast<std::size_t>(order < 0 ? system.dim - 1 : order);
  const double scale = std::max(1.0, system.config.x0.size() == system.dim ? system.config.x0.cwiseAbs().maxCoeff() : 1.0);
  NormalGenerator gen(sub_seed(seed, 5));
  Vector x(system.dim);
  for (int k = 0; k < n_points; ++k) {
    for (Index i = 0; i < system.dim; ++i) x[i] = scale * gen();
    const Vector f = lie_derivatives(system, h, x, ord);
    const Vector fr = lie_derivatives(system, h, r * x, ord);
    const double resid = (fr - static_cast<double>(res.parity) * f).cwiseAbs().maxCoeff();
    const double mag = std::max(1.0, f.cwiseAbs().maxCoeff());
    res.max_residual = std::max(res.max_residual, resid / mag);
  }
  res.points = n_points;
  // Half-turns are signed permutations, which floating point applies exactly,
  // so anything above a few rounding units means the parity does not hold.
  res.passed = res.max_residual <= 8.0 * std::numeric_limits<double>::epsilon();
  return res;
}

}  // namespace sccm

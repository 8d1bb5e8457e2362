#include "sccm/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "sccm/kdtree.hpp"

namespace sccm {

void EmbeddingParams::validate() const {
  if (tau < 1) throw argument_error("embedding lag tau must be >= 1, got " + std::to_string(tau));
  if (m < 1) throw argument_error("embedding dimension m must be >= 1, got " + std::to_string(m));
}

ShadowManifold ShadowManifold::restrict_rows(std::span<const Index> rows) const {
  ShadowManifold out;
  out.params = params;
  out.source_id = source_id;
  out.points.resize(static_cast<Index>(rows.size()), dim());
  out.time_index.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index r = rows[i];
    if (r < 0 || r >= size()) throw argument_error("manifold row index out of range");
    out.points.row(static_cast<Index>(i)) = points.row(r);
    out.time_index.push_back(time_index[static_cast<std::size_t>(r)]);
  }
  return out;
}

Index ShadowManifold::row_of(Index t) const {
  auto it = std::lower_bound(time_index.begin(), time_index.end(), t);
  if (it == time_index.end() || *it != t) return -1;
  return static_cast<Index>(it - time_index.begin());
}

ShadowManifold delay_embed(const TimeSeries& series, EmbeddingParams params, std::string source_id) {
  params.validate();
  if (!series.values.allFinite()) throw argument_error("delay_embed: series contains non-finite values");
  ShadowManifold out;
  out.points = delay_matrix(series.values, params.tau, params.m);
  out.params = params;
  out.source_id = std::move(source_id);
  out.time_index.resize(static_cast<std::size_t>(out.points.rows()));
  for (std::size_t j = 0; j < out.time_index.size(); ++j)
    out.time_index[j] = params.span() + static_cast<Index>(j);
  return out;
}

std::pair<ShadowManifold, ShadowManifold> align_manifolds(const ShadowManifold& a, const ShadowManifold& b) {
  std::vector<Index> rows_a, rows_b;
  std::size_t i = 0, j = 0;
  while (i < a.time_index.size() && j < b.time_index.size()) {
    if (a.time_index[i] < b.time_index[j]) {
      ++i;
    } else if (b.time_index[j] < a.time_index[i]) {
      ++j;
    } else {
      rows_a.push_back(static_cast<Index>(i++));
      rows_b.push_back(static_cast<Index>(j++));
    }
  }
  return {a.restrict_rows(rows_a), b.restrict_rows(rows_b)};
}

double mutual_information(const Eigen::Ref<const Vector>& s, int lag, int n_bins) {
  if (n_bins < 2) throw argument_error("mutual_information: n_bins must be >= 2");
  if (lag < 0) throw argument_error("mutual_information: lag must be >= 0");
  const Index n = s.size() - lag;
  if (n < 2) throw argument_error("mutual_information: series too short for lag " + std::to_string(lag));
  const double lo = s.minCoeff(), hi = s.maxCoeff();
  if (!(hi > lo)) return 0.0;
  const double width = (hi - lo) / n_bins;
  auto bin = [&](double v) { return std::clamp(static_cast<int>((v - lo) / width), 0, n_bins - 1); };

  Matrix joint = Matrix::Zero(n_bins, n_bins);
  Vector pa = Vector::Zero(n_bins), pb = Vector::Zero(n_bins);
  for (Index t = 0; t < n; ++t) {
    const int a = bin(s[t]), b = bin(s[t + lag]);
    joint(a, b) += 1.0;
    pa[a] += 1.0;
    pb[b] += 1.0;
  }
  const double total = static_cast<double>(n);
  double mi = 0.0;
  for (int a = 0; a < n_bins; ++a)
    for (int b = 0; b < n_bins; ++b) {
      const double c = joint(a, b);
      if (c > 0.0) mi += (c / total) * std::log(c * total / (pa[a] * pb[b]));
    }
  return mi;
}

LagSelection select_lag_mutual_info(const TimeSeries& series, int max_lag, int n_bins) {
  if (max_lag < 2) throw argument_error("select_lag_mutual_info: max_lag must be >= 2");
  if (n_bins < 2) throw argument_error("select_lag_mutual_info: n_bins must be >= 2");
  if (series.size() < 10 * static_cast<Index>(max_lag))
    throw argument_error("select_lag_mutual_info: series of length " + std::to_string(series.size()) +
                         " is too short; need at least 10 * max_lag = " + std::to_string(10 * max_lag));
  LagSelection out;
  out.mi.resize(max_lag + 1);
  for (int l = 0; l <= max_lag; ++l) out.mi[l] = mutual_information(series.values, l, n_bins);
  for (int l = 1; l < max_lag; ++l) {
    if (out.mi[l] < out.mi[l - 1] && out.mi[l] < out.mi[l + 1]) {
      out.lag = l;
      break;
    }
  }
  return out;
}

DimSelection select_dim_fnn(const TimeSeries& series, int tau, int max_dim, double rtol, double atol) {
  if (tau < 1) throw argument_error("select_dim_fnn: tau must be >= 1");
  if (max_dim < 1) throw argument_error("select_dim_fnn: max_dim must be >= 1");
  const Index n = series.size();
  const Index span = static_cast<Index>(max_dim) * tau;  // embedding at max_dim + 1
  if (n <= span + 10)
    throw argument_error("select_dim_fnn: need more than " + std::to_string(span + 10) +
                         " samples to test up to dimension " + std::to_string(max_dim));
  const Vector& s = series.values;
  const double mean = s.mean();
  const double sd = std::sqrt((s.array() - mean).square().sum() / static_cast<double>(n));
  if (!(sd > 0.0)) throw degenerate_input_error("select_dim_fnn: series is constant; all distances are zero");

  // All dimensions are evaluated on the same time indices: those valid for
  // the largest (max_dim + 1) embedding.
  const Matrix full = delay_matrix(s, tau, max_dim + 1);
  const Index count = full.rows();

  DimSelection out;
  out.fnn_fraction.resize(max_dim);
  // Coincident neighbours (exact repeats of a periodic signal) say nothing
  // about folding; the test uses the nearest distinct point instead.
  const double coincident = 1e-9 * sd;
  std::vector<Neighbor> nb;
  for (int m = 1; m <= max_dim; ++m) {
    const Matrix pts = full.leftCols(m);
    KdTree tree(pts);
    Index false_count = 0, tested = 0;
    for (Index i = 0; i < count; ++i) {
      const Vector q = pts.row(i).transpose();
      const Neighbor* hit = nullptr;
      for (int k = 1; !hit; k *= 4) {
        tree.knn(q.data(), k, i, nb);
        for (const auto& c : nb)
          if (c.distance > coincident) {
            hit = &c;
            break;
          }
        if (static_cast<Index>(nb.size()) < k) break;
      }
      if (!hit) continue;
      const Index j = hit->id;
      const double rm = hit->distance;
      const double extra = std::abs(full(i, m) - full(j, m));
      const double rm1 = std::sqrt(rm * rm + extra * extra);
      ++tested;
      if (extra / rm > rtol || rm1 / sd > atol) ++false_count;
    }
    out.fnn_fraction[m - 1] = tested ? static_cast<double>(false_count) / static_cast<double>(tested) : 0.0;
  }
  for (int m = 1; m <= max_dim; ++m) {
    if (out.fnn_fraction[m - 1] < 0.01) {
      out.dimension = m;
      break;
    }
  }
  return out;
}

}  // namespace sccm

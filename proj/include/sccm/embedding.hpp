#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sccm/dynsys.hpp"
#include "sccm/error.hpp"

namespace sccm {

struct EmbeddingParams {
  int tau = 1;  // lag in samples
  int m = 3;    // embedding dimension

  void validate() const;
  Index span() const { return static_cast<Index>(m - 1) * tau; }
};

/// Delay-coordinate point cloud. Row j is
/// [s(i), s(i - tau), ..., s(i - (m-1) tau)] with i = time_index[j].
struct ShadowManifold {
  Matrix points;
  std::vector<Index> time_index;
  EmbeddingParams params;
  std::string source_id;

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }

  /// Sub-manifold made of the given rows, in the given order.
  ShadowManifold restrict_rows(std::span<const Index> rows) const;
  /// Row of time index t, or -1.
  Index row_of(Index t) const;
};

/// Newest-first delay matrix of a scalar sequence, templated on the scalar
/// type. Row j corresponds to sample (m-1) tau + j.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> delay_matrix(
    const Eigen::MatrixBase<Derived>& s, int tau, int m) {
  using Scalar = typename Derived::Scalar;
  const Index n = s.size();
  const Index span = static_cast<Index>(m - 1) * tau;
  if (tau < 1 || m < 1) throw argument_error("delay_matrix: tau and m must be >= 1");
  if (n <= span)
    throw argument_error("series of length " + std::to_string(n) + " is too short for tau = " +
                         std::to_string(tau) + ", m = " + std::to_string(m) + "; need at least " +
                         std::to_string(span + 1) + " samples");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n - span, m);
  for (int c = 0; c < m; ++c) out.col(c) = s.segment(span - static_cast<Index>(c) * tau, n - span);
  return out;
}

ShadowManifold delay_embed(const TimeSeries& series, EmbeddingParams params, std::string source_id = {});

/// Keeps only time indices present in both manifolds; rows stay in time
/// order and line up between the two results.
std::pair<ShadowManifold, ShadowManifold> align_manifolds(const ShadowManifold& a, const ShadowManifold& b);

// Lag selection --------------------------------------------------------------

/// Histogram mutual information (nats) between s(t) and s(t + lag), with
/// equal-width bins over the series' min/max range.
double mutual_information(const Eigen::Ref<const Vector>& s, int lag, int n_bins);

struct LagSelection {
  std::optional<int> lag;  // empty when MI decreases monotonically
  Vector mi;               // mi[l] for l = 0..max_lag
  bool has_minimum() const { return lag.has_value(); }
};

/// First local minimum of the MI curve over lags 1..max_lag-1.
LagSelection select_lag_mutual_info(const TimeSeries& series, int max_lag, int n_bins = 16);

// Dimension selection --------------------------------------------------------

struct DimSelection {
  std::optional<int> dimension;  // smallest m with FNN fraction < 0.01
  Vector fnn_fraction;           // fnn_fraction[m-1] for m = 1..max_dim
};

/// False-nearest-neighbour test: a neighbour in dimension m is false when
/// the extra coordinate grows the distance by more than rtol times, or the
/// dimension-(m+1) distance exceeds atol times the series standard deviation.
/// Neighbours closer than 1e-9 standard deviations are passed over in favour
/// of the nearest distinct point.
DimSelection select_dim_fnn(const TimeSeries& series, int tau, int max_dim, double rtol = 15.0,
                            double atol = 2.0);

}  // namespace sccm

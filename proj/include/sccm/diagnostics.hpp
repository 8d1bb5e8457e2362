#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sccm/dynsys.hpp"
#include "sccm/embedding.hpp"

namespace sccm {

// Distance matrices --------------------------------------------------------------

/// Pairwise Euclidean distances between the rows of `points`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> distance_matrix(
    const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const Index n = points.rows();
  if (n < 2) throw argument_error("distance_matrix: need at least 2 points");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> r(n, n);
  for (Index i = 0; i < n; ++i) {
    r(i, i) = Scalar(0);
    for (Index j = i + 1; j < n; ++j) r(i, j) = r(j, i) = (points.row(i) - points.row(j)).norm();
  }
  return r;
}

/// Same for a list of vectors; mixed lengths are rejected.
Matrix distance_matrix(const std::vector<Vector>& points);

/// q-quantile of the off-diagonal entries of a square distance matrix.
double distance_quantile(const Matrix& distances, double q);

// Recurrence ---------------------------------------------------------------------

struct RecurrenceOptions {
  double epsilon_quantile = 0.10;
  /// Minimum |i - j| for a revisit to count; <= 0 means twice the
  /// oscillation period estimated from the first coordinate.
  Index min_separation = 0;
  /// Larger point sets are replaced by a seeded uniform subsample.
  Index max_points = 5000;
  double recurrent_fraction = 0.5;
  std::uint64_t seed = 0;
};

struct RecurrenceResult {
  bool recurrent = false;
  double fraction = 0.0;  // share of points with a separated revisit
  double epsilon = 0.0;
  Index min_separation = 0;
  Index points_used = 0;
  std::string status;  // "recurrent" or a one-line reason it is not
};

/// Oscillation period (in samples) from mean-crossings of `s`: 2 n / crossings.
/// A series that never crosses its mean gets n / 20.
double estimate_oscillation_period(const Eigen::Ref<const Vector>& s);

/// Checks that states revisit earlier neighbourhoods. `time_index` gives the
/// sample index of each row (defaults to 0..n-1) and is what min_separation
/// is measured in.
RecurrenceResult recurrence_check(const Matrix& points, const RecurrenceOptions& options = {},
                                  std::vector<Index> time_index = {});
RecurrenceResult recurrence_check(const ShadowManifold& manifold, const RecurrenceOptions& options = {});

// Observability ------------------------------------------------------------------

struct ObservabilityReport {
  Matrix matrix;  // row j = gradient of the j-th Lie derivative of h
  Vector singular_values;
  int numerical_rank = 0;
  double rank_tol = 1e-6;
  double fd_step = 1e-4;
  Vector state;
};

/// Count of singular values above tol * largest. tol must lie in (0, 1).
int numerical_rank(const Eigen::Ref<const Vector>& singular_values, double tol = 1e-6);
int numerical_rank(const ObservabilityReport& report, double tol);

/// Observability matrix of h at `state` with `rows` Lie orders (default: the
/// system dimension). Gradients are central differences with step
/// fd_step * max(1, |x_i|); the Lie functions themselves come from the
/// Taylor expansion of the flow.
ObservabilityReport observability_matrix(const SystemSpec& system, const Measurement& h,
                                         const Eigen::Ref<const Vector>& state, double fd_step = 1e-4,
                                         double rank_tol = 1e-6, int rows = 0);

}  // namespace sccm

#include "sccm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sccm/random.hpp"

namespace sccm {

Matrix distance_matrix(const std::vector<Vector>& points) {
  if (points.size() < 2) throw argument_error("distance_matrix: need at least 2 points");
  const Index dim = points.front().size();
  Matrix stacked(static_cast<Index>(points.size()), dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      throw argument_error("distance_matrix: point " + std::to_string(i) + " has dimension " +
                           std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
    stacked.row(static_cast<Index>(i)) = points[i].transpose();
  }
  return distance_matrix(stacked);
}

double distance_quantile(const Matrix& d, double q) {
  if (d.rows() != d.cols() || d.rows() < 2) throw argument_error("distance_quantile: need a square matrix of size >= 2");
  if (!(q >= 0.0 && q <= 1.0)) throw argument_error("distance_quantile: q must lie in [0, 1]");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(d.rows() * (d.rows() - 1) / 2));
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = i + 1; j < d.cols(); ++j) v.push_back(d(i, j));
  const auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

double estimate_oscillation_period(const Eigen::Ref<const Vector>& s) {
  const Index n = s.size();
  if (n < 2) throw argument_error("estimate_oscillation_period: need at least 2 samples");
  const double mean = s.mean();
  Index crossings = 0;
  for (Index i = 1; i < n; ++i)
    if ((s[i - 1] - mean < 0.0) != (s[i] - mean < 0.0)) ++crossings;
  if (crossings == 0) return static_cast<double>(n) / 20.0;
  return 2.0 * static_cast<double>(n) / static_cast<double>(crossings);
}

RecurrenceResult recurrence_check(const Matrix& points, const RecurrenceOptions& options,
                                  std::vector<Index> time_index) {
  const Index n_all = points.rows();
  if (n_all < 100) throw argument_error("recurrence_check: need at least 100 points, got " + std::to_string(n_all));
  if (!(options.epsilon_quantile > 0.0 && options.epsilon_quantile < 1.0))
    throw argument_error("recurrence_check: epsilon_quantile must lie in (0, 1)");
  if (time_index.empty()) {
    time_index.resize(static_cast<std::size_t>(n_all));
    std::iota(time_index.begin(), time_index.end(), Index{0});
  }
  if (static_cast<Index>(time_index.size()) != n_all)
    throw argument_error("recurrence_check: time_index length does not match the point count");

  RecurrenceResult out;
  const double span = static_cast<double>(time_index.back() - time_index.front() + 1);
  if (options.min_separation > 0) {
    out.min_separation = options.min_separation;
  } else {
    // Period in samples of the underlying series, rescaled if rows are sparser.
    const double per_row = span / static_cast<double>(n_all);
    out.min_separation = static_cast<Index>(
        std::llround(2.0 * estimate_oscillation_period(points.col(0)) * per_row));
  }

  std::vector<Index> rows(static_cast<std::size_t>(n_all));
  std::iota(rows.begin(), rows.end(), Index{0});
  if (options.max_points > 0 && n_all > options.max_points) {
    // Seeded partial Fisher-Yates, then back to time order.
    std::mt19937_64 rng(sub_seed(options.seed, 3));
    for (Index i = 0; i < options.max_points; ++i) {
      const auto j = i + static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n_all - i)));
      std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    }
    rows.resize(static_cast<std::size_t>(options.max_points));
    std::sort(rows.begin(), rows.end());
  }
  const Index n = static_cast<Index>(rows.size());
  out.points_used = n;

  const Index dim = points.cols();
  Matrix sub(n, dim);
  std::vector<Index> t(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    sub.row(i) = points.row(rows[static_cast<std::size_t>(i)]);
    t[static_cast<std::size_t>(i)] = time_index[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
  }

  // Off-diagonal distances, upper triangle, single precision to halve memory.
  std::vector<float> d;
  d.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) d.push_back(static_cast<float>((sub.row(i) - sub.row(j)).norm()));
  const auto k = static_cast<std::size_t>(options.epsilon_quantile * static_cast<double>(d.size() - 1));
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
  out.epsilon = static_cast<double>(d[k]);
  d.clear();
  d.shrink_to_fit();

  Index hits = 0;
  for (Index i = 0; i < n; ++i) {
    const Index ti = t[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j) {
      const Index tj = t[static_cast<std::size_t>(j)];
      if (std::abs(ti - tj) < out.min_separation) continue;
      if ((sub.row(i) - sub.row(j)).norm() < out.epsilon) {
        ++hits;
        break;
      }
    }
  }
  out.fraction = static_cast<double>(hits) / static_cast<double>(n);
  out.recurrent = out.fraction > options.recurrent_fraction;
  if (out.recurrent) {
    out.status = "recurrent";
  } else if (static_cast<double>(out.min_separation) >= span) {
    out.status = "not recurrent: the series does not oscillate within its length";
  } else {
    out.status = "not recurrent: only " + std::to_string(out.fraction) +
                 " of states revisit an earlier neighbourhood";
  }
  return out;
}

RecurrenceResult recurrence_check(const ShadowManifold& manifold, const RecurrenceOptions& options) {
  return recurrence_check(manifold.points, options, manifold.time_index);
}

int numerical_rank(const Eigen::Ref<const Vector>& singular_values, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw argument_error("numerical_rank: tol must lie in (0, 1)");
  if (singular_values.size() == 0) return 0;
  const double smax = singular_values.maxCoeff();
  if (!(smax > 0.0)) return 0;
  int rank = 0;
  for (Index i = 0; i < singular_values.size(); ++i)
    if (singular_values[i] > tol * smax) ++rank;
  return rank;
}

int numerical_rank(const ObservabilityReport& report, double tol) {
  return numerical_rank(report.singular_values, tol);
}

ObservabilityReport observability_matrix(const SystemSpec& system, const Measurement& h,
                                         const Eigen::Ref<const Vector>& state, double fd_step, double rank_tol,
                                         int rows) {
  if (!(fd_step > 0.0)) throw argument_error("observability_matrix: fd_step must be positive");
  if (state.size() != system.dim) throw argument_error("observability_matrix: state dimension mismatch");
  if (!state.allFinite()) throw argument_error("observability_matrix: state must be finite");
  if (h.weights.size() != system.dim) throw argument_error("observability_matrix: measurement dimension mismatch");
  const Index n = system.dim;
  const Index m = rows > 0 ? rows : n;
  const auto order = static_cast<std::size_t>(m - 1);

  ObservabilityReport rep;
  rep.state = state;
  rep.fd_step = fd_step;
  rep.rank_tol = rank_tol;
  rep.matrix.resize(m, n);
  Vector xp = state, xm = state;
  for (Index i = 0; i < n; ++i) {
    const double step = fd_step * std::max(1.0, std::abs(state[i]));
    xp[i] = state[i] + step;
    xm[i] = state[i] - step;
    const Vector lp = lie_derivatives(system, h, xp, order);
    const Vector lm = lie_derivatives(system, h, xm, order);
    xp[i] = xm[i] = state[i];
    for (Index j = 0; j < m; ++j) {
      const double g = (lp[j] - lm[j]) / (2.0 * step);
      if (!std::isfinite(g))
        throw numerical_error("observability_matrix: Lie derivative of order " + std::to_string(j) +
                              " overflowed at coordinate " + std::to_string(i));
      rep.matrix(j, i) = g;
    }
  }
  Eigen::JacobiSVD<Matrix> svd(rep.matrix);
  rep.singular_values = svd.singularValues();
  rep.numerical_rank = numerical_rank(rep.singular_values, rank_tol);
  return rep;
}

}  // namespace sccm

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sccm/taylor.hpp"

namespace sccm {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class SymmetryKind { none, c2_rotation, reflection, c4_rotation };

std::string_view to_string(SymmetryKind kind);

/// Symmetry group generator acting linearly on the state. For C2 and
/// reflection tags the representation is an involution; for C4 it is the
/// quarter turn.
struct Symmetry {
  SymmetryKind kind = SymmetryKind::none;
  Matrix representation;
};

struct ReferenceConfig {
  Vector x0;
  double dt = 0.01;
  double t_start = 0.0;
  double t_end = 100.0;
  int tau = 1;
  int m = 3;

  /// round((t_end - t_start) / dt)
  Index n_steps() const;
  void validate() const;
};

struct Parameter {
  std::string name;
  double value;
};

using Rhs = std::function<void(std::span<const double>, std::span<double>)>;
using TaylorRhs = std::function<void(std::span<const Taylor>, std::span<Taylor>)>;

struct SystemSpec {
  std::string name;
  std::string title;
  int dim = 0;
  std::vector<std::string> variables;
  std::vector<Parameter> params;
  Rhs rhs;
  TaylorRhs rhs_taylor;
  Symmetry symmetry;
  ReferenceConfig config;
  // Catalogue rows whose equations come from outside the core benchmark set.
  bool extended = false;

  double param(std::string_view key) const;
  Index variable_index(std::string_view var) const;
};

/// Full-state samples; row i is the state at t0 + i * dt.
struct Trajectory {
  Matrix states;
  double dt = 0.0;
  double t0 = 0.0;

  Index size() const { return states.rows(); }
  Index dim() const { return states.cols(); }
};

struct TimeSeries {
  Vector values;
  double dt = 1.0;

  Index size() const { return values.size(); }
};

/// Linear measurement h(x) = weights . x. Coordinate projections are the
/// unit-vector case.
struct Measurement {
  Vector weights;

  static Measurement coordinate(Index dim, Index index);
  /// Parses "x", "z", "x+z", "x-0.5*y", "x9" against spec.variables.
  static Measurement parse(const SystemSpec& spec, std::string_view expr);

  double operator()(const Eigen::Ref<const Vector>& x) const { return weights.dot(x); }
};

// Catalogue ---------------------------------------------------------------

SystemSpec catalogue_system(std::string_view name);
std::vector<std::string> catalogue_names(bool include_extended = true);

/// dx/dt = A x, with variables x0, x1, ... and no symmetry tag.
SystemSpec linear_system(const Matrix& a);

// Vector field and integration -------------------------------------------

Vector eval_vector_field(const SystemSpec& spec, const Eigen::Ref<const Vector>& x);

/// Classical fixed-step RK4. Returns n_steps + 1 states including x0.
/// Throws divergence_error once any component exceeds 1e12 in magnitude.
Trajectory integrate_rk4(const SystemSpec& spec, const Eigen::Ref<const Vector>& x0, double dt,
                         Index n_steps);

/// Integrates the catalogue reference configuration, optionally dropping
/// the first burn_in samples.
Trajectory simulate_reference(const SystemSpec& spec, Index burn_in = 0);

TimeSeries observe(const Trajectory& traj, const Measurement& h);
TimeSeries observe(const Trajectory& traj, Index coordinate);

/// values + N(0, sigma^2) noise from NormalGenerator(seed).
TimeSeries add_noise(const TimeSeries& series, double sigma, std::uint64_t seed);

/// Taylor coefficients of the flow through x up to the given order:
/// column k holds x_k with x(t) = sum_k x_k t^k.
Matrix flow_taylor_coefficients(const SystemSpec& spec, const Eigen::Ref<const Vector>& x,
                                std::size_t order);

/// Lie derivatives L_f^j h(x) for j = 0..order.
Vector lie_derivatives(const SystemSpec& spec, const Measurement& h,
                       const Eigen::Ref<const Vector>& x, std::size_t order);

/// Right-hand side of the x-induced Lorenz63 system in the coordinates
/// u = x, v = sigma (y - x), w = sigma[(rho + sigma) x - (sigma + 1) y - x z].
Eigen::Vector3d induced_lorenz_rhs(const Eigen::Vector3d& uvw, double sigma, double rho,
                                   double beta);

/// The coordinate change (x, y, z) -> (u, v, w) used by induced_lorenz_rhs.
Eigen::Vector3d lorenz_x_coordinates(const Eigen::Vector3d& xyz, double sigma, double rho);

}  // namespace sccm

#include "sccm/dynsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sccm/error.hpp"
#include "sccm/random.hpp"

namespace sccm {

namespace {

constexpr double kDivergenceGuard = 1e12;

void require_finite(const Eigen::Ref<const Vector>& x, const char* what) {
  if (!x.allFinite()) throw argument_error(std::string(what) + " contains non-finite values");
}

}  // namespace

std::string_view to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::none: return "none";
    case SymmetryKind::c2_rotation: return "c2_rotation";
    case SymmetryKind::reflection: return "reflection";
    case SymmetryKind::c4_rotation: return "c4_rotation";
  }
  return "none";
}

Index ReferenceConfig::n_steps() const {
  return static_cast<Index>(std::llround((t_end - t_start) / dt));
}

void ReferenceConfig::validate() const {
  if (!(dt > 0.0)) throw argument_error("reference config: dt must be positive");
  if (!(t_end > t_start)) throw argument_error("reference config: t_end must exceed t_start");
  if (tau < 1) throw argument_error("reference config: tau must be >= 1");
  if (m < 1) throw argument_error("reference config: m must be >= 1");
}

double SystemSpec::param(std::string_view key) const {
  for (const auto& p : params)
    if (p.name == key) return p.value;
  throw lookup_error("system '" + name + "' has no parameter '" + std::string(key) + "'");
}

Index SystemSpec::variable_index(std::string_view var) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == var) return static_cast<Index>(i);
  std::string known;
  for (const auto& v : variables) known += (known.empty() ? "" : ", ") + v;
  throw argument_error("system '" + name + "' has no variable '" + std::string(var) +
                       "' (variables: " + known + ")");
}

Measurement Measurement::coordinate(Index dim, Index index) {
  if (index < 0 || index >= dim)
    throw argument_error("coordinate index " + std::to_string(index) + " out of range for dimension " +
                         std::to_string(dim));
  Measurement h;
  h.weights = Vector::Unit(dim, index);
  return h;
}

Measurement Measurement::parse(const SystemSpec& spec, std::string_view expr) {
  Measurement h;
  h.weights = Vector::Zero(spec.dim);
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw argument_error("empty measurement expression");

  std::size_t pos = 0;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    // Term: [number '*'] variable
    std::size_t end = pos;
    bool seen_star = false;
    while (end < s.size()) {
      const char c = s[end];
      if (c == '*') seen_star = true;
      if (c == '+' || c == '-') {
        // exponent sign inside a coefficient, e.g. 1e-3*x
        const bool exponent = !seen_star && end >= pos + 2 && (s[end - 1] == 'e' || s[end - 1] == 'E') &&
                              std::isdigit(static_cast<unsigned char>(s[end - 2]));
        if (!exponent) break;
      }
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw argument_error("malformed measurement expression '" + std::string(expr) + "'");
    double coef = 1.0;
    std::string var = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      const std::string num = term.substr(0, star);
      var = term.substr(star + 1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), coef);
      if (ec != std::errc() || ptr != num.data() + num.size())
        throw argument_error("malformed coefficient '" + num + "' in measurement expression");
    }
    h.weights[spec.variable_index(var)] += sign * coef;
    pos = end;
  }
  return h;
}

Vector eval_vector_field(const SystemSpec& spec, const Eigen::Ref<const Vector>& x) {
  if (x.size() != spec.dim)
    throw argument_error("state has dimension " + std::to_string(x.size()) + ", system '" + spec.name +
                         "' expects " + std::to_string(spec.dim));
  require_finite(x, "state");
  Vector dx(spec.dim);
  spec.rhs(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
           std::span<double>(dx.data(), static_cast<std::size_t>(dx.size())));
  return dx;
}

Trajectory integrate_rk4(const SystemSpec& spec, const Eigen::Ref<const Vector>& x0, double dt,
                         Index n_steps) {
  if (!(dt > 0.0)) throw argument_error("integrate_rk4: dt must be positive");
  if (n_steps < 1) throw argument_error("integrate_rk4: n_steps must be >= 1");
  if (x0.size() != spec.dim)
    throw argument_error("integrate_rk4: x0 has dimension " + std::to_string(x0.size()) + ", expected " +
                         std::to_string(spec.dim));
  require_finite(x0, "x0");

  const auto n = static_cast<std::size_t>(spec.dim);
  Trajectory traj;
  traj.dt = dt;
  traj.t0 = 0.0;
  // Column-major storage with one state per row would stride every write;
  // integrate into a row-major buffer and copy once.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> buf(n_steps + 1, spec.dim);
  buf.row(0) = x0.transpose();

  Vector x = x0, k1(spec.dim), k2(spec.dim), k3(spec.dim), k4(spec.dim), tmp(spec.dim);
  auto f = [&](const Vector& in, Vector& out) {
    spec.rhs(std::span<const double>(in.data(), n), std::span<double>(out.data(), n));
  };
  const double half = 0.5 * dt;
  for (Index step = 1; step <= n_steps; ++step) {
    f(x, k1);
    tmp = x + half * k1;
    f(tmp, k2);
    tmp = x + half * k2;
    f(tmp, k3);
    tmp = x + dt * k3;
    f(tmp, k4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
      std::ostringstream msg;
      msg << "system '" << spec.name << "' diverged at step " << step << " (t = " << step * dt
          << "): state magnitude exceeded " << kDivergenceGuard;
      throw divergence_error(msg.str(), static_cast<long>(step));
    }
    buf.row(step) = x.transpose();
  }
  traj.states = buf;
  return traj;
}

Trajectory simulate_reference(const SystemSpec& spec, Index burn_in) {
  spec.config.validate();
  if (burn_in < 0) throw argument_error("burn_in must be non-negative");
  Trajectory traj = integrate_rk4(spec, spec.config.x0, spec.config.dt, spec.config.n_steps());
  traj.t0 = spec.config.t_start;
  if (burn_in > 0) {
    if (burn_in >= traj.size() - 1)
      throw argument_error("burn_in " + std::to_string(burn_in) + " leaves fewer than 2 samples");
    Matrix kept = traj.states.bottomRows(traj.size() - burn_in);
    traj.states = std::move(kept);
    traj.t0 += static_cast<double>(burn_in) * traj.dt;
  }
  return traj;
}

TimeSeries observe(const Trajectory& traj, const Measurement& h) {
  if (h.weights.size() != traj.dim())
    throw argument_error("measurement has dimension " + std::to_string(h.weights.size()) +
                         ", trajectory has " + std::to_string(traj.dim()));
  TimeSeries s;
  s.values = traj.states * h.weights;
  s.dt = traj.dt;
  return s;
}

TimeSeries observe(const Trajectory& traj, Index coordinate) {
  return observe(traj, Measurement::coordinate(traj.dim(), coordinate));
}

TimeSeries add_noise(const TimeSeries& series, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw argument_error("noise sigma must be non-negative");
  TimeSeries out = series;
  if (sigma == 0.0) return out;
  NormalGenerator gen(seed);
  for (Index i = 0; i < out.values.size(); ++i) out.values[i] += sigma * gen();
  return out;
}

Matrix flow_taylor_coefficients(const SystemSpec& spec, const Eigen::Ref<const Vector>& x,
                                std::size_t order) {
  if (x.size() != spec.dim) throw argument_error("flow_taylor_coefficients: state dimension mismatch");
  require_finite(x, "state");
  if (!spec.rhs_taylor) throw unsupported_error("system '" + spec.name + "' has no series evaluation");
  const auto n = static_cast<std::size_t>(spec.dim);
  std::vector<Taylor> xs(n, Taylor(0.0, order)), dxs(n, Taylor(0.0, order));
  for (std::size_t i = 0; i < n; ++i) xs[i][0] = x[static_cast<Index>(i)];
  // Coefficient k of v(x(t)) depends only on x_0..x_k, so each pass fixes
  // one more coefficient: x_{k+1} = [v(x(t))]_k / (k + 1).
  for (std::size_t k = 0; k < order; ++k) {
    spec.rhs_taylor(xs, dxs);
    for (std::size_t i = 0; i < n; ++i) xs[i][k + 1] = dxs[i][k] / static_cast<double>(k + 1);
  }
  Matrix coeffs(spec.dim, static_cast<Index>(order + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= order; ++k) coeffs(static_cast<Index>(i), static_cast<Index>(k)) = xs[i][k];
  return coeffs;
}

Vector lie_derivatives(const SystemSpec& spec, const Measurement& h, const Eigen::Ref<const Vector>& x,
                       std::size_t order) {
  if (h.weights.size() != spec.dim) throw argument_error("lie_derivatives: measurement dimension mismatch");
  const Matrix coeffs = flow_taylor_coefficients(spec, x, order);
  Vector out = coeffs.transpose() * h.weights;
  double factorial = 1.0;
  for (Index j = 1; j < out.size(); ++j) {
    factorial *= static_cast<double>(j);
    out[j] *= factorial;
  }
  return out;
}

Eigen::Vector3d induced_lorenz_rhs(const Eigen::Vector3d& uvw, double sigma, double rho, double beta) {
  const double u = uvw[0], v = uvw[1], w = uvw[2];
  const double wdot = beta * sigma * (rho - 1.0) * u - beta * (sigma + 1.0) * v -
                      (1.0 + beta + sigma) * w - u * u * v - sigma * u * u * u +
                      (v / u) * (w + (1.0 + sigma) * v);
  return {v, w, wdot};
}

Eigen::Vector3d lorenz_x_coordinates(const Eigen::Vector3d& xyz, double sigma, double rho) {
  const double x = xyz[0], y = xyz[1], z = xyz[2];
  return {x, sigma * (y - x), sigma * ((rho + sigma) * x - (sigma + 1.0) * y - x * z)};
}

}  // namespace sccm

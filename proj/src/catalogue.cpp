#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "sccm/dynsys.hpp"
#include "sccm/error.hpp"

namespace sccm {

namespace {

// Each field is a functor with a templated call operator so the same
// equations serve double-precision integration and Taylor-series Lie
// derivatives.
template <class Field>
void bind_field(SystemSpec& spec, Field field) {
  spec.rhs = [field](std::span<const double> x, std::span<double> dx) { field(x, dx); };
  spec.rhs_taylor = [field](std::span<const Taylor> x, std::span<Taylor> dx) { field(x, dx); };
}

Matrix diagonal(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double e : d) v[i++] = e;
  return v.asDiagonal();
}

Vector vec(std::initializer_list<double> d) {
  Vector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double e : d) v[i++] = e;
  return v;
}

ReferenceConfig config(Vector x0, double dt, double t_end, int tau, int m) {
  ReferenceConfig c;
  c.x0 = std::move(x0);
  c.dt = dt;
  c.t_start = 0.0;
  c.t_end = t_end;
  c.tau = tau;
  c.m = m;
  return c;
}

struct Lorenz63 {
  double sigma, rho, beta;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = sigma * (y - x);
    d[1] = rho * x - y - x * z;
    d[2] = x * y - beta * z;
  }
};

struct ChenUeta {
  double alpha, beta, gamma;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = alpha * (y - x);
    d[1] = (gamma - alpha) * x - x * z + gamma * y;
    d[2] = x * y - beta * z;
  }
};

struct BurkeShaw {
  double alpha, beta;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = -alpha * (x + y);
    d[1] = -y - alpha * x * z;
    d[2] = beta + alpha * x * y;
  }
};

struct ThreeScroll {
  double a, b, c, d, e, f;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> out) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    out[0] = a * (y - x) + b * x * z;
    out[1] = c * x + d * y - x * z;
    out[2] = -e * x * x + x * y + f * z;
  }
};

// Reflection-equivariant flow whose symmetric attractor pair touches x = 0.
struct Kissing {
  double a;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = x - x * y;
    d[1] = z;
    d[2] = -y - a * z + x * x;
  }
};

struct InducedLorenz {
  double sigma, rho, beta;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &u = s[0], &v = s[1], &w = s[2];
    d[0] = v;
    d[1] = w;
    d[2] = beta * sigma * (rho - 1.0) * u - beta * (sigma + 1.0) * v - (1.0 + beta + sigma) * w -
           u * u * v - sigma * u * u * u + (v / u) * (w + (1.0 + sigma) * v);
  }
};

// Image of Burke-Shaw under u = x^2 - y^2, v = 2xy, w = z.
struct InvariantBurkeShaw {
  double alpha, beta;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    using std::sqrt;
    const T &u = s[0], &v = s[1], &w = s[2];
    const T r = sqrt(u * u + v * v);
    d[0] = -(alpha + 1.0) * u - alpha * (1.0 - w) * v + (1.0 - alpha) * r;
    d[1] = alpha * (1.0 - w) * u - alpha * (1.0 + w) * r - (alpha + 1.0) * v;
    d[2] = (alpha / 2.0) * v + beta;
  }
};

struct FourfoldBurkeShaw {
  double S, V;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    const T r2 = x * x + y * y;
    const T u3 = x * x * x - 3.0 * x * y * y;
    const T v3 = 3.0 * x * x * y - y * y * y;
    const T v4 = 4.0 * x * x * x * y - 4.0 * x * y * y * y;
    d[0] = -(S + 1.0) * x / 4.0 - S * (1.0 - z) * y / 4.0 +
           (u3 * (1.0 - S) - S * v3 * (1.0 + z)) / (4.0 * r2);
    d[1] = S * (1.0 - z) * x / 4.0 - (S + 1.0) * y / 4.0 -
           (v3 * (1.0 - S) + S * u3 * (1.0 + z)) / (4.0 * r2);
    d[2] = V + (S / 2.0) * v4;
  }
};

// Self-excited oscillatory modular circuit.
struct Circuit4D {
  double a, b, c;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2], &w = s[3];
    d[0] = a * (y - x);
    d[1] = x * z + w;
    d[2] = b - x * y;
    d[3] = y * z - c * w;
  }
};

struct HyperLorenz4D {
  double k1, k2;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    const T& w = s[3];
    d[0] = 10.0 * (y - x);
    d[1] = 28.0 * x - y - x * z + w;
    d[2] = -(8.0 / 3.0) * z + x * y;
    d[3] = k1 * x + k2 * y;
  }
};

struct HyperLorenz5D {
  double k1, k2;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2], &u = s[3], &v = s[4];
    d[0] = 10.0 * (y - x) + u;
    d[1] = 28.0 * x - y - x * z - v;
    d[2] = -(8.0 / 3.0) * z + x * y;
    d[3] = -x * z + k1 * u;
    d[4] = k2 * y;
  }
};

struct Lorenz9D {
  double sigma, r, b1, b2, b3, b4, b5, b6;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x1 = s[0], &x2 = s[1], &x3 = s[2], &x4 = s[3], &x5 = s[4], &x6 = s[5], &x7 = s[6],
            &x8 = s[7], &x9 = s[8];
    d[0] = -sigma * (b1 * x1 + b2 * x7) + x4 * (b4 * x4 - x2) + b3 * x3 * x5;
    d[1] = -sigma * x2 + x1 * x4 - x2 * x5 + x4 * x5 - (2.0 / sigma) * x9;
    d[2] = sigma * (b2 * x8 - b1 * x3) + x2 * x4 - b4 * x2 * x2 - (b3 / sigma) * x1 * x5;
    d[3] = -sigma * x4 - x2 * x3 - x2 * x5 + x4 * x5 + 0.5 * x9;
    d[4] = -sigma * b5 * x5 + 0.5 * x2 * x2 - 0.5 * x4 * x4;
    d[5] = -b6 * x6 + x2 * x9 - x4 * x9;
    d[6] = -b1 * x7 - r * x1 + 2.0 * x5 * x8 - x4 * x9;
    d[7] = -b1 * x8 + r * x3 - 2.0 * x5 * x7 + x2 * x9;
    d[8] = -x9 + (r + 2.0 * x6) * (x4 - x2) + x4 * x7 - x2 * x8;
  }
};

struct Rossler {
  double a, b, c;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = -y - z;
    d[1] = x + a * y;
    d[2] = b + x * z - c * z;
  }
};

// Ramp x(t) = t / 2000 and sine y(t) = sin(pi t / 50) written as an
// autonomous flow; q carries cos(pi t / 50).
struct RampSine {
  double slope, omega;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &y = s[1], &q = s[2];
    d[0] = 0.0 * s[0] + slope;
    d[1] = omega * q;
    d[2] = -omega * y;
  }
};

struct SprottB {
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = y * z;
    d[1] = x - y;
    d[2] = 1.0 - x * y;
  }
};

struct SprottC {
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = y * z;
    d[1] = x - y;
    d[2] = 1.0 - x * x;
  }
};

struct Rucklidge {
  double kappa, lambda;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = -kappa * x + lambda * y - y * z;
    d[1] = 1.0 * x;
    d[2] = -z + y * y;
  }
};

struct ShimizuMorioka {
  double alpha, lambda;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = 1.0 * y;
    d[1] = x - lambda * y - x * z;
    d[2] = -alpha * z + x * x;
  }
};

struct Rikitake {
  double mu, a;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    const T &x = s[0], &y = s[1], &z = s[2];
    d[0] = -mu * x + z * y;
    d[1] = -mu * y + (z - a) * x;
    d[2] = 1.0 - x * y;
  }
};

using Builder = SystemSpec (*)();

SystemSpec lorenz63() {
  SystemSpec s;
  s.name = "lorenz63";
  s.title = "Lorenz63";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double sigma = 10.0, rho = 28.0, beta = 8.0 / 3.0;
  s.params = {{"sigma", sigma}, {"rho", rho}, {"beta", beta}};
  bind_field(s, Lorenz63{sigma, rho, beta});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({1, 1, 1}), 0.01, 100.0, 9, 3);
  return s;
}

SystemSpec chen_ueta() {
  SystemSpec s;
  s.name = "chen_ueta";
  s.title = "Chen & Ueta";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double alpha = 35.0, beta = 3.0, gamma = 28.0;
  s.params = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
  bind_field(s, ChenUeta{alpha, beta, gamma});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({-10, 0, 37}), 0.005, 50.0, 20, 3);
  return s;
}

SystemSpec burke_shaw_with(double alpha) {
  SystemSpec s;
  s.name = "burke_shaw";
  s.title = "Burke & Shaw";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double beta = 4.272;
  s.params = {{"alpha", alpha}, {"beta", beta}};
  bind_field(s, BurkeShaw{alpha, beta});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({0.5, 0.5, 0.5}), 0.01, 100.0, 10, 3);
  return s;
}

// alpha = +10 is the dissipative sign (divergence -alpha - 1 < 0) and the one
// for which the invariant image below is the exact pushforward.
SystemSpec burke_shaw() { return burke_shaw_with(10.0); }

// Negative alpha: volume-expanding, diverges within a few hundred steps.
SystemSpec burke_shaw_negative() {
  SystemSpec s = burke_shaw_with(-10.0);
  s.name = "burke_shaw_negative";
  s.title = "Burke & Shaw with alpha = -10 (volume-expanding)";
  s.extended = true;
  return s;
}

SystemSpec three_scroll() {
  SystemSpec s;
  s.name = "three_scroll";
  s.title = "Three-scroll chaotic attractor";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  ThreeScroll f{40.0, 0.16, 55.0, 20.0, 0.65, 11.0 / 6.0};
  s.params = {{"a", f.a}, {"b", f.b}, {"c", f.c}, {"d", f.d}, {"e", f.e}, {"f", f.f}};
  bind_field(s, f);
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({2, 2, 2}), 0.0015, 150.0, 20, 3);
  return s;
}

SystemSpec kissing() {
  SystemSpec s;
  s.name = "kissing";
  s.title = "Reflection-symmetric kissing attractor";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  s.params = {{"a", 0.7}};
  bind_field(s, Kissing{0.7});
  s.symmetry = {SymmetryKind::reflection, diagonal({-1, 1, 1})};
  s.config = config(vec({2, 2, 0}), 0.01, 200.0, 10, 3);
  return s;
}

SystemSpec induced_lorenz() {
  SystemSpec s;
  s.name = "induced_lorenz";
  s.title = "x-induced Lorenz63 (defined for u != 0)";
  s.dim = 3;
  s.variables = {"u", "v", "w"};
  const double sigma = 10.0, rho = 28.0, beta = 8.0 / 3.0;
  s.params = {{"sigma", sigma}, {"rho", rho}, {"beta", beta}};
  bind_field(s, InducedLorenz{sigma, rho, beta});
  // Image of the Lorenz63 initial state (1, 1, 1); short span because the
  // field is singular on u = 0.
  s.config = config(vec({1.0, 0.0, 260.0}), 0.001, 0.1, 1, 3);
  return s;
}

SystemSpec invariant_burke_shaw() {
  SystemSpec s;
  s.name = "invariant_burke_shaw";
  s.title = "Burke & Shaw image under (x^2 - y^2, 2xy, z)";
  s.dim = 3;
  s.variables = {"u", "v", "w"};
  const double alpha = 10.0, beta = 4.272;
  s.params = {{"alpha", alpha}, {"beta", beta}};
  bind_field(s, InvariantBurkeShaw{alpha, beta});
  s.config = config(vec({0.0, 0.5, 0.5}), 0.01, 100.0, 10, 3);
  return s;
}

SystemSpec fourfold_burke_shaw() {
  SystemSpec s;
  s.name = "fourfold_burke_shaw";
  s.title = "Four-fold Burke & Shaw";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double S = 10.0, V = 4.271;
  s.params = {{"S", S}, {"V", V}};
  bind_field(s, FourfoldBurkeShaw{S, V});
  Matrix quarter_turn(3, 3);
  quarter_turn << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  s.symmetry = {SymmetryKind::c4_rotation, quarter_turn};
  s.config = config(vec({0.1, 0.1, 0.1}), 0.01, 100.0, 10, 3);
  return s;
}

SystemSpec circuit_4d() {
  SystemSpec s;
  s.name = "circuit_4d";
  s.title = "4D dissipative modular circuit";
  s.dim = 4;
  s.variables = {"x", "y", "z", "w"};
  const double a = 6.0, b = 11.0, c = 5.0;
  s.params = {{"a", a}, {"b", b}, {"c", c}};
  bind_field(s, Circuit4D{a, b, c});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1, -1})};
  s.config = config(vec({10, 10, 0, 0}), 0.01, 100.0, 50, 4);
  return s;
}

SystemSpec hyperchaotic_lorenz_4d() {
  SystemSpec s;
  s.name = "hyperchaotic_lorenz_4d";
  s.title = "4D Lorenz-like hyperchaotic system";
  s.dim = 4;
  s.variables = {"x", "y", "z", "w"};
  const double k1 = -9.3, k2 = -5.0;
  s.params = {{"k1", k1}, {"k2", k2}};
  bind_field(s, HyperLorenz4D{k1, k2});
  // With dw/dt = -k1 x - k2 y and these values the state drifts off to
  // infinity on one wing; the opposite feedback sign gives a bounded
  // two-wing attractor. w enters dy/dt linearly and is driven by x and y,
  // so it flips sign with them under the half-turn.
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1, -1})};
  s.config = config(vec({1, 1, 1, 1}), 0.005, 50.0, 15, 4);
  return s;
}

SystemSpec hyperchaotic_5d() {
  SystemSpec s;
  s.name = "hyperchaotic_5d";
  s.title = "5D Lorenz-like hyperchaotic system";
  s.dim = 5;
  s.variables = {"x", "y", "z", "u", "v"};
  const double k1 = 1.0, k2 = 30.0;
  s.params = {{"k1", k1}, {"k2", k2}};
  bind_field(s, HyperLorenz5D{k1, k2});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1, -1, -1})};
  s.config = config(vec({1, 1, 1, 1, 1}), 0.01, 100.0, 60, 5);
  return s;
}

SystemSpec lorenz9d() {
  SystemSpec s;
  s.name = "lorenz9d";
  s.title = "Nine-dimensional Lorenz system";
  s.dim = 9;
  s.variables = {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"};
  Lorenz9D f{0.5, 14.3, 5.0 / 1.5, 0.6, 1.2, 0.2, 2.0 / 1.5, 4.0 / 1.5};
  s.params = {{"sigma", f.sigma}, {"R", f.r},   {"b1", f.b1}, {"b2", f.b2},
              {"b3", f.b3},       {"b4", f.b4}, {"b5", f.b5}, {"b6", f.b6}};
  bind_field(s, f);
  s.config = config(vec({0.01, 0, 0.01, 0, 0, 0, 0, 0, 0.01}), 0.02, 800.0, 12, 9);
  return s;
}

SystemSpec rossler() {
  SystemSpec s;
  s.name = "rossler";
  s.title = "Rossler";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double a = 0.2, b = 0.2, c = 5.7;
  s.params = {{"a", a}, {"b", b}, {"c", c}};
  bind_field(s, Rossler{a, b, c});
  s.config = config(vec({1, 1, 0}), 0.01, 4000.0, 40, 3);
  return s;
}

SystemSpec ramp_sine() {
  SystemSpec s;
  s.name = "ramp_sine";
  s.title = "Monotone ramp and periodic sine";
  s.dim = 3;
  s.variables = {"x", "y", "q"};
  const double slope = 1.0 / 2000.0, omega = std::numbers::pi / 50.0;
  s.params = {{"slope", slope}, {"omega", omega}};
  bind_field(s, RampSine{slope, omega});
  // 2000 samples spread evenly over t in [0, 2000] (20 periods of the sine).
  s.config = config(vec({0, 0, 1}), 2000.0 / 1999.0, 2000.0, 1, 2);
  return s;
}

SystemSpec sprott_b() {
  SystemSpec s;
  s.name = "sprott_b";
  s.title = "Sprott B";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  bind_field(s, SprottB{});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({0.1, 0.1, 0.1}), 0.01, 200.0, 15, 3);
  s.extended = true;
  return s;
}

SystemSpec sprott_c() {
  SystemSpec s;
  s.name = "sprott_c";
  s.title = "Sprott C";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  bind_field(s, SprottC{});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({0.1, 0.1, 0.1}), 0.01, 200.0, 15, 3);
  s.extended = true;
  return s;
}

SystemSpec rucklidge() {
  SystemSpec s;
  s.name = "rucklidge";
  s.title = "Rucklidge";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double kappa = 2.0, lambda = 6.7;
  s.params = {{"kappa", kappa}, {"lambda", lambda}};
  bind_field(s, Rucklidge{kappa, lambda});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({1, 0, 4.5}), 0.01, 200.0, 15, 3);
  s.extended = true;
  return s;
}

SystemSpec shimizu_morioka() {
  SystemSpec s;
  s.name = "shimizu_morioka";
  s.title = "Shimizu & Morioka";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double alpha = 0.375, lambda = 0.81;
  s.params = {{"alpha", alpha}, {"lambda", lambda}};
  bind_field(s, ShimizuMorioka{alpha, lambda});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({0.1, 0, 0}), 0.01, 300.0, 20, 3);
  s.extended = true;
  return s;
}

SystemSpec rikitake() {
  SystemSpec s;
  s.name = "rikitake";
  s.title = "Rikitake dynamo";
  s.dim = 3;
  s.variables = {"x", "y", "z"};
  const double mu = 2.0, a = 5.0;
  s.params = {{"mu", mu}, {"a", a}};
  bind_field(s, Rikitake{mu, a});
  s.symmetry = {SymmetryKind::c2_rotation, diagonal({-1, -1, 1})};
  s.config = config(vec({1, 0, 0.5}), 0.01, 200.0, 15, 3);
  s.extended = true;
  return s;
}

struct LinearField {
  Matrix a;
  template <class T>
  void operator()(std::span<const T> s, std::span<T> d) const {
    for (Index i = 0; i < a.rows(); ++i) {
      T acc = s[0] * a(i, 0);
      for (Index j = 1; j < a.cols(); ++j) acc = acc + s[static_cast<std::size_t>(j)] * a(i, j);
      d[static_cast<std::size_t>(i)] = acc;
    }
  }
};

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> systems = {
      {"lorenz63", lorenz63},
      {"chen_ueta", chen_ueta},
      {"burke_shaw", burke_shaw},
      {"burke_shaw_negative", burke_shaw_negative},
      {"three_scroll", three_scroll},
      {"kissing", kissing},
      {"induced_lorenz", induced_lorenz},
      {"invariant_burke_shaw", invariant_burke_shaw},
      {"fourfold_burke_shaw", fourfold_burke_shaw},
      {"circuit_4d", circuit_4d},
      {"hyperchaotic_lorenz_4d", hyperchaotic_lorenz_4d},
      {"hyperchaotic_5d", hyperchaotic_5d},
      {"lorenz9d", lorenz9d},
      {"rossler", rossler},
      {"ramp_sine", ramp_sine},
      {"sprott_b", sprott_b},
      {"sprott_c", sprott_c},
      {"rucklidge", rucklidge},
      {"shimizu_morioka", shimizu_morioka},
      {"rikitake", rikitake},
  };
  return systems;
}

// Alternate names accepted by catalogue_system.
const std::map<std::string, std::string, std::less<>>& aliases() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"lorenz", "lorenz63"},
      {"monotone_periodic", "ramp_sine"},
      {"rossler3d", "rossler"},
  };
  return table;
}

}  // namespace

SystemSpec linear_system(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw argument_error("linear_system: matrix must be square and non-empty");
  if (!a.allFinite()) throw argument_error("linear_system: matrix must be finite");
  SystemSpec s;
  s.name = "linear";
  s.title = "Linear system dx/dt = A x";
  s.dim = static_cast<int>(a.rows());
  for (Index i = 0; i < a.rows(); ++i) s.variables.push_back("x" + std::to_string(i));
  bind_field(s, LinearField{a});
  s.config = config(Vector::Ones(a.rows()), 0.01, 10.0, 1, s.dim);
  return s;
}

SystemSpec catalogue_system(std::string_view name) {
  std::string_view key = name;
  if (auto it = aliases().find(name); it != aliases().end()) key = it->second;
  for (const auto& [id, build] : registry()) {
    if (id == key) {
      SystemSpec spec = build();
      spec.config.validate();
      return spec;
    }
  }
  std::string known;
  for (const auto& [id, build] : registry()) known += (known.empty() ? "" : ", ") + id;
  throw lookup_error("unknown system '" + std::string(name) + "'; available systems: " + known);
}

std::vector<std::string> catalogue_names(bool include_extended) {
  std::vector<std::string> names;
  for (const auto& [id, build] : registry())
    if (include_extended || !build().extended) names.push_back(id);
  return names;
}

}  // namespace sccm

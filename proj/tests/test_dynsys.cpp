#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sccm/error.hpp"
#include "sccm/io.hpp"
#include "sccm/random.hpp"
#include "test_util.hpp"

using namespace sccm;

TEST_SUITE("dynsys") {

TEST_CASE("lorenz63 catalogue entry") {
  const SystemSpec s = catalogue_system("lorenz63");
  CHECK(s.dim == 3);
  CHECK(s.param("sigma") == 10.0);
  CHECK(s.param("rho") == 28.0);
  CHECK(s.param("beta") == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(s.config.x0 == Vector::Ones(3));
  CHECK(s.config.dt == 0.01);
  CHECK(s.config.t_start == 0.0);
  CHECK(s.config.t_end == 100.0);
  CHECK(s.config.tau == 9);
  CHECK(s.config.m == 3);
  CHECK(s.config.n_steps() == 10000);
  CHECK(s.symmetry.kind == SymmetryKind::c2_rotation);
}

TEST_CASE("burke_shaw entries: dissipative sign and the printed sign") {
  const SystemSpec s = catalogue_system("burke_shaw");
  CHECK(s.param("alpha") == 10.0);
  CHECK(s.param("beta") == 4.272);
  CHECK(s.config.x0 == Vector::Constant(3, 0.5));
  CHECK(s.config.dt == 0.01);
  CHECK(s.config.tau == 10);
  CHECK(s.config.m == 3);
  const SystemSpec neg = catalogue_system("burke_shaw_negative");
  CHECK(neg.param("alpha") == -10.0);
  CHECK(neg.extended);
}

TEST_CASE("fourfold_burke_shaw entry") {
  const SystemSpec s = catalogue_system("fourfold_burke_shaw");
  CHECK(s.param("S") == 10.0);
  CHECK(s.param("V") == 4.271);
  CHECK(s.config.x0 == Vector::Constant(3, 0.1));
  CHECK(s.config.dt == 0.01);
  CHECK(s.config.tau == 10);
  CHECK(s.config.m == 3);
  CHECK(s.symmetry.kind == SymmetryKind::c4_rotation);
}

TEST_CASE("unknown system names list the catalogue") {
  try {
    (void)catalogue_system("no_such_system");
    FAIL("expected lookup_error");
  } catch (const lookup_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("lorenz63") != std::string::npos);
    CHECK(msg.find("burke_shaw") != std::string::npos);
  }
}

TEST_CASE("aliases resolve") {
  CHECK(catalogue_system("lorenz").name == "lorenz63");
  CHECK(catalogue_system("monotone_periodic").name == "ramp_sine");
}

TEST_CASE("every catalogue entry evaluates and has a valid config") {
  for (const auto& name : catalogue_names(true)) {
    CAPTURE(name);
    const SystemSpec s = catalogue_system(name);
    CHECK(static_cast<int>(s.variables.size()) == s.dim);
    CHECK_NOTHROW(s.config.validate());
    const Vector v = eval_vector_field(s, s.config.x0);
    CHECK(v.size() == s.dim);
    CHECK(v.allFinite());
  }
}

TEST_CASE("vector field: hand-substituted values") {
  const SystemSpec lorenz = catalogue_system("lorenz63");
  const Vector d = eval_vector_field(lorenz, Vector::Ones(3));
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 26.0);
  CHECK(d[2] == doctest::Approx(-5.0 / 3.0).epsilon(1e-15));
  CHECK(eval_vector_field(lorenz, Vector::Zero(3)) == Vector::Zero(3));

  // Printed sign: dx = -a(x+y) = 10, dy = -y - a x z = 2, dz = b + a x y = 1.772.
  const Vector b = eval_vector_field(catalogue_system("burke_shaw_negative"), Vector::Constant(3, 0.5));
  CHECK(b[0] == doctest::Approx(10.0));
  CHECK(b[1] == doctest::Approx(2.0));
  CHECK(b[2] == doctest::Approx(1.772));
  // Dissipative sign a = +10 at the same state.
  const Vector c = eval_vector_field(catalogue_system("burke_shaw"), Vector::Constant(3, 0.5));
  CHECK(c[0] == doctest::Approx(-10.0));
  CHECK(c[1] == doctest::Approx(-3.0));
  CHECK(c[2] == doctest::Approx(6.772));
}

TEST_CASE("vector field rejects bad states") {
  const SystemSpec lorenz = catalogue_system("lorenz63");
  CHECK_THROWS_AS((void)eval_vector_field(lorenz, Vector::Ones(2)), argument_error);
  Vector bad = Vector::Ones(3);
  bad[1] = std::nan("");
  CHECK_THROWS_AS((void)eval_vector_field(lorenz, bad), argument_error);
}

TEST_CASE("RK4 on dx/dt = -x matches the exponential") {
  const SystemSpec decay = linear_system(Matrix::Constant(1, 1, -1.0));
  const Trajectory t = integrate_rk4(decay, Vector::Ones(1), 0.1, 10);
  CHECK(t.size() == 11);
  CHECK(std::abs(t.states(10, 0) - std::exp(-1.0)) < 1e-5);
}

TEST_CASE("RK4 global error shrinks about 16x when dt halves") {
  const SystemSpec decay = linear_system(Matrix::Constant(1, 1, -1.0));
  const double e1 = std::abs(integrate_rk4(decay, Vector::Ones(1), 0.1, 10).states(10, 0) - std::exp(-1.0));
  const double e2 = std::abs(integrate_rk4(decay, Vector::Ones(1), 0.05, 20).states(20, 0) - std::exp(-1.0));
  const double factor = e1 / e2;
  CHECK(factor >= 12.0);
  CHECK(factor <= 20.0);
}

TEST_CASE("zero field keeps the initial state") {
  const SystemSpec zero = linear_system(Matrix::Zero(3, 3));
  Vector x0(3);
  x0 << 1.5, -2.0, 0.25;
  const Trajectory t = integrate_rk4(zero, x0, 0.1, 50);
  for (Index i = 0; i < t.size(); ++i) CHECK(t.states.row(i).transpose() == x0);
}

TEST_CASE("RK4 argument checks and divergence guard") {
  const SystemSpec grow = linear_system(Matrix::Constant(1, 1, 50.0));
  CHECK_THROWS_AS((void)integrate_rk4(grow, Vector::Ones(1), 0.0, 10), argument_error);
  CHECK_THROWS_AS((void)integrate_rk4(grow, Vector::Ones(1), 0.1, 0), argument_error);
  try {
    (void)integrate_rk4(grow, Vector::Ones(1), 0.1, 1000);
    FAIL("expected divergence_error");
  } catch (const divergence_error& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() < 1000);
  }
}

TEST_CASE("lorenz63 reference trajectory is bounded and z stays positive") {
  const Trajectory& t = test::reference("lorenz63");
  CHECK(t.size() == 10001);
  CHECK(t.states.cwiseAbs().maxCoeff() < 60.0);
  CHECK(t.states.col(2).tail(t.size() - 500).minCoeff() > 0.0);
}

TEST_CASE("reference simulations of the benchmark systems stay finite") {
  for (const char* name : {"chen_ueta", "burke_shaw", "three_scroll", "circuit_4d", "hyperchaotic_lorenz_4d",
                           "hyperchaotic_5d", "fourfold_burke_shaw"}) {
    CAPTURE(name);
    const Trajectory& t = test::reference(name);
    CHECK(t.states.allFinite());
    CHECK(t.states.cwiseAbs().maxCoeff() < 1e4);
  }
}

TEST_CASE("integration is deterministic") {
  const SystemSpec s = catalogue_system("chen_ueta");
  const Trajectory a = integrate_rk4(s, s.config.x0, s.config.dt, 2000);
  const Trajectory b = integrate_rk4(s, s.config.x0, s.config.dt, 2000);
  CHECK(a.states == b.states);
}

TEST_CASE("observe: projections and linear measurements") {
  Trajectory t;
  t.states.resize(2, 3);
  t.states << 1, 2, 3, 4, 5, 6;
  t.dt = 0.5;
  const TimeSeries z = observe(t, 2);
  CHECK(z.values == (Vector(2) << 3, 6).finished());
  CHECK(z.dt == 0.5);
  const TimeSeries xz = observe(t, Measurement::parse(catalogue_system("lorenz63"), "x+z"));
  CHECK(xz.values == (Vector(2) << 4, 10).finished());
  CHECK_THROWS_AS((void)observe(t, 3), argument_error);
  CHECK_THROWS_AS((void)observe(t, -1), argument_error);
}

TEST_CASE("measurement parsing") {
  const SystemSpec s = catalogue_system("lorenz63");
  CHECK(Measurement::parse(s, "x-0.5*y").weights == (Vector(3) << 1, -0.5, 0).finished());
  CHECK(Measurement::parse(catalogue_system("lorenz9d"), "x9").weights[8] == 1.0);
  CHECK_THROWS((void)Measurement::parse(s, "q"));
}

TEST_CASE("add_noise") {
  const TimeSeries s = observe(test::reference("lorenz63"), 0);
  CHECK(add_noise(s, 0.0, 7).values == s.values);
  CHECK_THROWS_AS((void)add_noise(s, -1.0, 7), argument_error);

  TimeSeries zeros;
  zeros.values = Vector::Zero(100000);
  const Vector n = add_noise(zeros, 1.0, 42).values;
  const double mean = n.mean();
  const double sd = std::sqrt((n.array() - mean).square().sum() / static_cast<double>(n.size() - 1));
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sd - 1.0) < 0.02);
  CHECK(add_noise(zeros, 1.0, 42).values == n);
  CHECK(add_noise(zeros, 1.0, 43).values != n);
}

TEST_CASE("C2-tagged systems are exactly equivariant") {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> nd(0.0, 5.0);
  for (const auto& name : catalogue_names(true)) {
    const SystemSpec s = catalogue_system(name);
    if (s.symmetry.kind != SymmetryKind::c2_rotation) continue;
    CAPTURE(name);
    const Matrix& r = s.symmetry.representation;
    CHECK((r * r - Matrix::Identity(s.dim, s.dim)).cwiseAbs().maxCoeff() == 0.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vector x(s.dim);
      for (Index i = 0; i < s.dim; ++i) x[i] = nd(rng);
      worst = std::max(worst, (eval_vector_field(s, r * x) - r * eval_vector_field(s, x)).cwiseAbs().maxCoeff());
    }
    CHECK(worst == 0.0);
  }
}

TEST_CASE("four-fold system is equivariant under the quarter turn") {
  const SystemSpec s = catalogue_system("fourfold_burke_shaw");
  const Matrix& r = s.symmetry.representation;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    Vector x(3);
    for (Index i = 0; i < 3; ++i) x[i] = nd(rng);
    const Vector lhs = eval_vector_field(s, r * x), rhs = r * eval_vector_field(s, x);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("kissing attractor never crosses x = 0") {
  const SystemSpec s = catalogue_system("kissing");
  CHECK(s.param("a") == 0.7);
  CHECK(s.config.x0 == (Vector(3) << 2, 2, 0).finished());
  CHECK(s.config.t_end == 200.0);
  const Trajectory t = simulate_reference(s);
  CHECK(t.states.col(0).minCoeff() > 0.0);
}

TEST_CASE("induced Lorenz field matches finite differences of the transformed trajectory") {
  const SystemSpec l = catalogue_system("lorenz63");
  const double sigma = l.param("sigma"), rho = l.param("rho"), beta = l.param("beta");
  const double dt = 0.001;
  const Trajectory t = integrate_rk4(l, l.config.x0, dt, 20000);
  std::vector<Eigen::Vector3d> uvw(static_cast<std::size_t>(t.size()));
  for (Index i = 0; i < t.size(); ++i)
    uvw[static_cast<std::size_t>(i)] = lorenz_x_coordinates(t.states.row(i).transpose(), sigma, rho);
  double worst = 0.0;
  int used = 0;
  for (std::size_t i = 1000; i + 1 < uvw.size(); ++i) {
    if (std::abs(uvw[i][0]) <= 0.5) continue;
    const Eigen::Vector3d fd = (uvw[i + 1] - uvw[i - 1]) / (2.0 * dt);
    const Eigen::Vector3d rhs = induced_lorenz_rhs(uvw[i], sigma, rho, beta);
    worst = std::max(worst, (fd - rhs).norm() / rhs.norm());
    ++used;
  }
  CHECK(used > 10000);
  CHECK(worst < 0.01);
}

TEST_CASE("Lie derivatives of x under Lorenz63 match the hand expansion") {
  const SystemSpec l = catalogue_system("lorenz63");
  const double s = 10, r = 28, b = 8.0 / 3.0;
  Vector x(3);
  x << 1.3, -0.7, 22.0;
  const Vector lie = lie_derivatives(l, Measurement::coordinate(3, 0), x, 2);
  const double X = x[0], Y = x[1], Z = x[2];
  const double dx = s * (Y - X), dy = X * (r - Z) - Y, dz = X * Y - b * Z;
  CHECK(lie[0] == doctest::Approx(X));
  CHECK(lie[1] == doctest::Approx(dx));
  CHECK(lie[2] == doctest::Approx(s * (dy - dx)));
  (void)dz;
}

TEST_CASE("trajectory CSV round trip is exact") {
  const SystemSpec s = catalogue_system("lorenz63");
  const Trajectory t = integrate_rk4(s, s.config.x0, s.config.dt, 50);
  std::stringstream ss;
  io::write_trajectory_csv(ss, t, s.variables);
  const Trajectory back = io::read_trajectory_csv(ss);
  CHECK(back.states == t.states);
  CHECK(back.dt == doctest::Approx(t.dt));
}

TEST_CASE("series CSV round trip is exact") {
  TimeSeries s = observe(test::reference("lorenz63"), 1);
  s.values.conservativeResize(100);
  std::stringstream ss;
  io::write_series_csv(ss, s);
  const TimeSeries back = io::read_series_csv(ss);
  CHECK(back.values == s.values);
}

}  // TEST_SUITE

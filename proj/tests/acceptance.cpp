// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sccm/bench.hpp"
#include "sccm/kdtree.hpp"
#include "sccm/symmetry.hpp"

using namespace sccm;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string cells_text(const BenchRow& r) {
  std::string s;
  const char* names[] = {"ccm_ab", "ccm_ba", "sccm_ab", "sccm_ba"};
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const auto& c = r.cells[i];
    s += std::string(i ? ", " : "") + names[i] + " " + fmt(c.measured) + " vs " + fmt(c.reference) + "+-" +
         fmt(c.tolerance, 2);
  }
  return s;
}

std::vector<const ReferenceRow*> rows_of(const std::string& table) {
  std::vector<const ReferenceRow*> out;
  for (const auto& r : reference_rows())
    if (r.table == table && !r.extended) out.push_back(&r);
  return out;
}

TimeSeries reference_series(const std::string& system, const std::string& var) {
  const SystemSpec spec = catalogue_system(system);
  return observe(simulate_reference(spec), spec.variable_index(var));
}

// 1. Core table rows: CCM finds only z => x, sCCM finds both directions.
Outcome core_rows() {
  Outcome o;
  for (const ReferenceRow* ref : rows_of("t2")) {
    const auto t0 = Clock::now();
    const BenchRow r = run_bench_row(*ref);
    const double secs = seconds_since(t0);
    const std::string id = ref->system + " (" + ref->var_a + "," + ref->var_b + ")";
    o.check(r.error.empty(), id + " ran" + (r.error.empty() ? "" : ": " + r.error));
    o.check(r.ccm_verdict == Direction::y_causes_x,
            id + " CCM verdict " + direction_label(r.ccm_verdict, r.var_a, r.var_b));
    o.check(r.sccm_verdict == Direction::bidirectional,
            id + " sCCM verdict " + direction_label(r.sccm_verdict, r.var_a, r.var_b));
    o.check(r.bands_ok(), id + " bands: " + cells_text(r));
    o.check(secs < 120.0, id + " runtime " + fmt(secs, 1) + " s (< 120 s)");
  }
  return o;
}

// 2. Noise robustness on lorenz63.
Outcome noise_rows() {
  Outcome o;
  for (const ReferenceRow* ref : rows_of("t3")) {
    const BenchRow r = run_bench_row(*ref);
    const std::string id = ref->var_a + "," + ref->var_b + " sigma=" + fmt(ref->noise, 1);
    o.check(r.error.empty() && r.verdict_match,
            id + " verdicts CCM " + direction_label(r.ccm_verdict, r.var_a, r.var_b) + ", sCCM " +
                direction_label(r.sccm_verdict, r.var_a, r.var_b));
    if (ref->var_a == "x") {
      o.check(r.measured_sccm.first >= 0.90, id + " sCCM rho_xz " + fmt(r.measured_sccm.first) + " >= 0.90");
      o.check(r.measured_ccm.first <= 0.40, id + " CCM rho_xz " + fmt(r.measured_ccm.first) + " <= 0.40");
    }
  }
  return o;
}

// 3. High-dimensional rows flip from one direction to both.
Outcome highdim_rows() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const ReferenceRow* ref : rows_of("t4")) {
    const BenchRow r = run_bench_row(*ref);
    const std::string id = ref->system + " (" + ref->var_a + "," + ref->var_b + ")";
    const bool uni = r.ccm_verdict == Direction::x_causes_y || r.ccm_verdict == Direction::y_causes_x;
    o.check(r.error.empty() && uni && r.sccm_verdict == Direction::bidirectional,
            id + " CCM " + direction_label(r.ccm_verdict, r.var_a, r.var_b) + " -> sCCM " +
                direction_label(r.sccm_verdict, r.var_a, r.var_b));
    o.check(r.bands_ok(), id + " bands: " + cells_text(r));
  }
  const double secs = seconds_since(t0);
  o.check(secs < 600.0, "total runtime " + fmt(secs, 1) + " s (< 600 s)");
  return o;
}

// 4. Four-fold system: both manifolds symmetric, plain CCM finds both directions.
Outcome fourfold_row() {
  Outcome o;
  for (const ReferenceRow* ref : rows_of("t5")) {
    const BenchRow r = run_bench_row(*ref);
    o.check(r.error.empty() && r.sccm_method == Method::ccm, "symmetry test routes to plain CCM (method " +
                                                                 std::string(to_string(r.sccm_method)) + ")");
    o.check(r.ccm_verdict == Direction::bidirectional,
            "CCM verdict " + direction_label(r.ccm_verdict, r.var_a, r.var_b));
    o.check(r.bands_ok(), "bands: " + cells_text(r));
  }
  return o;
}

// 5. Parity of the differential map.
Outcome parity() {
  Outcome o;
  const std::pair<const char*, const char*> cases[] = {{"lorenz63", "x"}, {"lorenz63", "z"}, {"burke_shaw", "z"}};
  for (const auto& [sys, var] : cases) {
    const SystemSpec spec = catalogue_system(sys);
    const ParityResult p = parity_check_differential(spec, Measurement::parse(spec, var), 100, 0);
    o.check(p.passed && p.points == 100, std::string(sys) + " h=" + var + " parity " + (p.parity > 0 ? "even" : "odd") +
                                             ", max residual " + fmt(p.max_residual, 17));
  }
  return o;
}

// 6. Induced-system residual along a fine trajectory.
Outcome induced_system() {
  Outcome o;
  const SystemSpec l = catalogue_system("lorenz63");
  const double sigma = l.param("sigma"), rho = l.param("rho"), beta = l.param("beta");
  const double dt = 0.001;
  const Trajectory t = integrate_rk4(l, l.config.x0, dt, 20000);
  std::vector<Eigen::Vector3d> uvw;
  for (Index i = 0; i < t.size(); ++i) uvw.push_back(lorenz_x_coordinates(t.states.row(i).transpose(), sigma, rho));
  double worst = 0.0;
  int used = 0;
  for (std::size_t i = 1000; i + 1 < uvw.size(); ++i) {
    if (std::abs(uvw[i][0]) <= 0.5) continue;
    const Eigen::Vector3d fd = (uvw[i + 1] - uvw[i - 1]) / (2.0 * dt);
    const Eigen::Vector3d rhs = induced_lorenz_rhs(uvw[i], sigma, rho, beta);
    worst = std::max(worst, (fd - rhs).norm() / rhs.norm());
    ++used;
  }
  o.check(worst < 0.01, "max relative residual " + fmt(worst, 6) + " over " + std::to_string(used) + " states with |u| > 0.5");
  return o;
}

// 7. Observability ranks.
Outcome observability() {
  Outcome o;
  const SystemSpec lor = catalogue_system("lorenz63");
  const auto r3 = observability_matrix(lor, Measurement::parse(lor, "x"), Eigen::Vector3d(1, 1, 1));
  o.check(r3.numerical_rank == 3, "lorenz63 h=x rank " + std::to_string(r3.numerical_rank));

  const SystemSpec nine = catalogue_system("lorenz9d");
  const Trajectory tr = simulate_reference(nine);
  const auto r9 = observability_matrix(nine, Measurement::parse(nine, "x9"), tr.states.row(tr.size() - 1).transpose());
  o.check(r9.numerical_rank < 9, "lorenz9d h=x9 rank " + std::to_string(r9.numerical_rank) + " (< 9)");

  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a(4, 4);
    Vector c(4), x(4);
    for (Index i = 0; i < 4; ++i) {
      for (Index j = 0; j < 4; ++j) a(i, j) = nd(rng);
      c[i] = nd(rng);
      x[i] = nd(rng);
    }
    Measurement h;
    h.weights = c;
    const auto r = observability_matrix(linear_system(a), h, x);
    Matrix expect(4, 4);
    Eigen::RowVectorXd row = c.transpose();
    for (Index j = 0; j < 4; ++j, row = row * a) expect.row(j) = row;
    worst = std::max(worst, (r.matrix - expect).norm() / expect.norm());
  }
  o.check(worst < 1e-6, "linear systems vs closed form: max relative error " + fmt(worst * 1e9, 3) + "e-9");
  return o;
}

// 8. Monotone ramp and sine: recurrence and the misleading CCM skill.
Outcome ramp_sine() {
  Outcome o;
  const SystemSpec spec = catalogue_system("ramp_sine");
  const EmbeddingParams p{spec.config.tau, spec.config.m};
  const TimeSeries x = reference_series("ramp_sine", "x");
  const TimeSeries y = reference_series("ramp_sine", "y");
  const RecurrenceResult rx = recurrence_check(delay_embed(x, p));
  const RecurrenceResult ry = recurrence_check(delay_embed(y, p));
  o.check(!rx.recurrent, "ramp recurrent=" + std::string(rx.recurrent ? "true" : "false") + " (" + rx.status + ")");
  o.check(ry.recurrent, "sine recurrent=" + std::string(ry.recurrent ? "true" : "false"));
  SegmentCcmConfig cfg;
  cfg.name_a = "x";
  cfg.name_b = "y";
  const CausalReport r = plain_ccm(x, y, p, p, cfg);
  o.check(std::abs(r.rho_ab - 0.965) <= 0.05, "CCM rho_xy " + fmt(r.rho_ab) + " vs 0.965+-0.05");
  const bool rising = r.combined.xy.rho.back() > r.combined.xy.rho.front();
  o.check(rising, "rho_xy rises with library size (" + fmt(r.combined.xy.rho.front()) + " -> " +
                      fmt(r.combined.xy.rho.back()) + ")");
  const bool warned = std::any_of(r.warnings.begin(), r.warnings.end(),
                                  [](const std::string& w) { return w.find("series x") != std::string::npos; });
  o.check(warned, "non-recurrence warning emitted");
  return o;
}

// 9. Property suites.
Outcome properties() {
  Outcome o;
  const TimeSeries x = reference_series("lorenz63", "x");
  const TimeSeries z = reference_series("lorenz63", "z");
  const ShadowManifold mx = delay_embed(x, {9, 3});
  const ShadowManifold mz = delay_embed(z, {9, 3});

  {  // weights over real neighbour sets of 10^4 random queries
    const KdTree tree(mx.points);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<Index> pick(0, mx.size() - 1);
    bool ok = true;
    for (int q = 0; q < 10000; ++q) {
      const Index row = pick(rng);
      const auto nb = tree.knn(mx.points.row(row).transpose(), 4, row);
      std::vector<double> d;
      for (const auto& n : nb) d.push_back(n.distance);
      const Vector w = neighbor_weights(d);
      ok = ok && std::abs(w.sum() - 1.0) < 1e-12 && (w.array() > 0.0).all();
    }
    o.check(ok, "weights sum to 1 and are positive on 10^4 random queries");
  }

  {  // segmentation partition and index transport
    const SegmentLabels labels = kmeans2(mx);
    std::set<Index> seen;
    bool disjoint = true;
    for (int lab : {1, 2})
      for (Index r : labels.rows(lab)) disjoint = seen.insert(mx.time_index[static_cast<std::size_t>(r)]).second && disjoint;
    o.check(disjoint && static_cast<Index>(seen.size()) == mx.size(), "segments partition the manifold time indices");
    SegmentCcmConfig cfg;
    const CausalReport rep = segment_ccm(x, z, {9, 3}, {9, 3}, cfg);
    bool transported = rep.segments.size() == 2;
    std::vector<std::vector<Index>> rows = {labels.rows(1), labels.rows(2)};
    if (rows[1].front() < rows[0].front()) std::swap(rows[0], rows[1]);
    for (std::size_t s = 0; transported && s < 2; ++s) {
      std::vector<Index> zr;
      for (Index r : rows[s]) zr.push_back(mz.row_of(mx.time_index[static_cast<std::size_t>(r)]));
      const ShadowManifold sx = mx.restrict_rows(rows[s]);
      std::vector<Index> lib(rows[s].size());
      std::iota(lib.begin(), lib.end(), Index{0});
      const auto eval = evaluation_rows(static_cast<Index>(lib.size()), 2000);
      Vector actual(static_cast<Index>(eval.size()));
      for (std::size_t i = 0; i < eval.size(); ++i)
        actual[static_cast<Index>(i)] = z.values[sx.time_index[static_cast<std::size_t>(eval[i])]];
      const double rho = forecast_skill(cross_map_estimate(sx, z.values, lib, eval), actual).rho;
      const ShadowManifold sz = mz.restrict_rows(zr);
      transported = transported && sz.time_index == sx.time_index &&
                    std::abs(rep.segments[s].sweep.yx.final_rho() - rho) < 1e-12;
    }
    o.check(transported, "segment time sets carried from M_x to M_z reproduce the segment skills");
  }

  std::vector<Index> lib(static_cast<std::size_t>(mx.size()));
  std::iota(lib.begin(), lib.end(), Index{0});
  const auto eval = evaluation_rows(mx.size(), 2000);
  Vector actual(static_cast<Index>(eval.size()));
  for (std::size_t i = 0; i < eval.size(); ++i)
    actual[static_cast<Index>(i)] = x.values[mx.time_index[static_cast<std::size_t>(eval[i])]];
  const double self = forecast_skill(cross_map_estimate(mx, x.values, lib, eval), actual).rho;
  o.check(self > 0.999, "self cross-map rho " + fmt(self, 5) + " > 0.999");

  std::vector<Index> perm(static_cast<std::size_t>(x.size()));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  Vector shuffled(x.size());
  for (Index i = 0; i < x.size(); ++i) shuffled[i] = x.values[perm[static_cast<std::size_t>(i)]];
  Vector sa(static_cast<Index>(eval.size()));
  for (std::size_t i = 0; i < eval.size(); ++i) sa[static_cast<Index>(i)] = shuffled[mx.time_index[static_cast<std::size_t>(eval[i])]];
  const double shuf = forecast_skill(cross_map_estimate(mx, shuffled, lib, eval), sa).rho;
  o.check(shuf < 0.2, "shuffled target rho " + fmt(shuf, 4) + " < 0.2");

  const SystemSpec decay = linear_system(Matrix::Constant(1, 1, -1.0));
  const double e1 = std::abs(integrate_rk4(decay, Vector::Ones(1), 0.1, 10).states(10, 0) - std::exp(-1.0));
  const double e2 = std::abs(integrate_rk4(decay, Vector::Ones(1), 0.05, 20).states(20, 0) - std::exp(-1.0));
  o.check(e1 / e2 >= 12.0 && e1 / e2 <= 20.0, "RK4 error factor " + fmt(e1 / e2, 2) + " in [12, 20]");

  const Trajectory k = simulate_reference(catalogue_system("kissing"));
  const double min_x = k.states.col(0).minCoeff();
  o.check(min_x > 0.0, "kissing attractor min x " + fmt(min_x, 4) + " > 0");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"core table: CCM misses, sCCM recovers both directions", core_rows},
      {"noise robustness on lorenz63", noise_rows},
      {"high-dimensional systems flip to bidirectional", highdim_rows},
      {"four-fold system takes the plain-CCM branch", fourfold_row},
      {"parity of the differential map", parity},
      {"induced-system residual", induced_system},
      {"observability ranks", observability},
      {"ramp and sine: recurrence and misleading skill", ramp_sine},
      {"property suites", properties},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.check(false, std::string("threw: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << fmt(seconds_since(t0), 1)
              << " s)\n";
    for (const auto& note : o.notes) std::cout << "    " << note << "\n";
    std::cout.flush();
  }
  std::cout << (n - failed) << "/" << n << " criteria passed\n";
  return failed;
}

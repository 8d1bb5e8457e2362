#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sccm/kdtree.hpp"
#include "test_util.hpp"

using namespace sccm;

namespace {

// Independent histogram MI: equal-width bins over [min, max] of the whole
// series, pairs (s[t], s[t + lag]).
double oracle_mi(const Vector& s, int lag, int bins) {
  const double lo = s.minCoeff(), hi = s.maxCoeff();
  auto bin = [&](double v) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    return std::min(std::max(b, 0), bins - 1);
  };
  const Index n = s.size() - lag;
  Matrix joint = Matrix::Zero(bins, bins);
  for (Index t = 0; t < n; ++t) joint(bin(s[t]), bin(s[t + lag])) += 1.0;
  joint /= static_cast<double>(n);
  const Vector pa = joint.rowwise().sum(), pb = joint.colwise().sum().transpose();
  double mi = 0.0;
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j)
      if (joint(i, j) > 0) mi += joint(i, j) * std::log(joint(i, j) / (pa[i] * pb[j]));
  return mi;
}

TimeSeries sine(Index n, double period) {
  TimeSeries s;
  s.values.resize(n);
  for (Index i = 0; i < n; ++i) s.values[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period);
  return s;
}

}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("delay_embed small examples") {
  const ShadowManifold a = delay_embed(test::series_of({1, 2, 3, 4, 5}), {1, 2});
  Matrix expect(4, 2);
  expect << 2, 1, 3, 2, 4, 3, 5, 4;
  CHECK(a.points == expect);
  CHECK(a.time_index == std::vector<Index>{1, 2, 3, 4});

  const ShadowManifold b = delay_embed(test::series_of({1, 2, 3, 4, 5, 6}), {2, 3});
  Matrix expect_b(2, 3);
  expect_b << 5, 3, 1, 6, 4, 2;
  CHECK(b.points == expect_b);
  CHECK(b.time_index == std::vector<Index>{4, 5});

  const TimeSeries s = test::series_of({3, 1, 4, 1, 5});
  const ShadowManifold c = delay_embed(s, {1, 1});
  CHECK(c.points.col(0) == s.values);
}

TEST_CASE("delay_embed rejects short series and bad parameters") {
  CHECK_THROWS_AS((void)delay_embed(test::series_of({1, 2, 3}), {2, 3}), argument_error);
  try {
    (void)delay_embed(test::series_of({1, 2, 3}), {2, 3});
  } catch (const argument_error& e) {
    CHECK(std::string(e.what()).find("at least 5") != std::string::npos);
  }
  CHECK_THROWS_AS((void)delay_embed(test::series_of({1, 2, 3}), {0, 2}), argument_error);
  CHECK_THROWS_AS((void)delay_embed(test::series_of({1, 2, 3}), {1, 0}), argument_error);
}

TEST_CASE("manifold invariants on reference data") {
  const TimeSeries x = test::reference_series("lorenz63", "x");
  for (int tau : {1, 4, 9}) {
    for (int m : {1, 2, 3, 5}) {
      const ShadowManifold mf = delay_embed(x, {tau, m});
      const Index span = static_cast<Index>(m - 1) * tau;
      CHECK(mf.size() == x.size() - span);
      CHECK(mf.time_index.front() == span);
      CHECK(std::is_sorted(mf.time_index.begin(), mf.time_index.end()));
      // Round trip: column 0 is the series from (m-1) tau on.
      CHECK(mf.points.col(0) == x.values.tail(x.size() - span));
      for (Index j : {Index{0}, mf.size() / 2, mf.size() - 1})
        for (int c = 0; c < m; ++c)
          CHECK(mf.points(j, c) == x.values[mf.time_index[static_cast<std::size_t>(j)] - c * tau]);
    }
  }
}

TEST_CASE("embeddings nest as m grows") {
  const TimeSeries x = test::reference_series("lorenz63", "x");
  const ShadowManifold m3 = delay_embed(x, {9, 3});
  const ShadowManifold m4 = delay_embed(x, {9, 4});
  for (Index j = 0; j < m4.size(); ++j) {
    const Index r = m3.row_of(m4.time_index[static_cast<std::size_t>(j)]);
    REQUIRE(r >= 0);
    CHECK(m3.points.row(r) == m4.points.row(j).head(3));
  }
}

TEST_CASE("align_manifolds keeps shared time indices in order") {
  const TimeSeries x = test::reference_series("lorenz63", "x");
  const auto [a, b] = align_manifolds(delay_embed(x, {9, 3}), delay_embed(x, {4, 2}));
  CHECK(a.time_index == b.time_index);
  CHECK(a.time_index.front() == 18);
  CHECK(a.size() == x.size() - 18);
}

TEST_CASE("restrict_rows and row_of") {
  const ShadowManifold mf = delay_embed(test::series_of({1, 2, 3, 4, 5, 6}), {1, 2});
  const std::vector<Index> rows{4, 0, 2};
  const ShadowManifold r = mf.restrict_rows(rows);
  CHECK(r.time_index == std::vector<Index>{5, 1, 3});
  CHECK(r.points.row(0) == mf.points.row(4));
  CHECK(mf.row_of(3) == 2);
  CHECK(mf.row_of(0) == -1);
}

TEST_CASE("mutual information matches an independent histogram estimate") {
  const TimeSeries s = test::reference_series("lorenz63", "x");
  for (int lag : {0, 1, 5, 9, 20})
    CHECK(mutual_information(s.values, lag, 16) == doctest::Approx(oracle_mi(s.values, lag, 16)).epsilon(1e-9));
}

TEST_CASE("lag selection on a sine finds the quarter period") {
  const LagSelection sel = select_lag_mutual_info(sine(6000, 100.0), 60, 16);
  REQUIRE(sel.has_minimum());
  CHECK(*sel.lag >= 23);
  CHECK(*sel.lag <= 27);
  CHECK(sel.mi.size() == 61);
  // Curve agrees with the oracle and the self-information is maximal.
  const Vector s = sine(6000, 100.0).values;
  for (int l = 0; l <= 60; l += 10) CHECK(sel.mi[l] == doctest::Approx(oracle_mi(s, l, 16)).epsilon(1e-9));
  for (Index l = 1; l < sel.mi.size(); ++l) CHECK(sel.mi[0] >= sel.mi[l]);
}

TEST_CASE("lag selection on a ramp reports no minimum") {
  TimeSeries ramp;
  ramp.values = Vector::LinSpaced(5000, 0.0, 1.0);
  const LagSelection sel = select_lag_mutual_info(ramp, 100, 16);
  CHECK_FALSE(sel.has_minimum());
  for (Index l = 1; l < sel.mi.size(); ++l) CHECK(sel.mi[l] < sel.mi[l - 1]);
  for (int l = 0; l <= 100; l += 25) CHECK(sel.mi[l] == doctest::Approx(oracle_mi(ramp.values, l, 16)).epsilon(1e-9));
}

TEST_CASE("lag selection on lorenz63 x lands near the catalogue value") {
  const LagSelection sel = select_lag_mutual_info(test::reference_series("lorenz63", "x"), 100, 16);
  REQUIRE(sel.has_minimum());
  CHECK(*sel.lag >= 5);
  CHECK(*sel.lag <= 20);
}

TEST_CASE("lag selection argument checks") {
  CHECK_THROWS_AS((void)select_lag_mutual_info(sine(100, 20.0), 60, 16), argument_error);
  CHECK_THROWS_AS((void)select_lag_mutual_info(sine(6000, 100.0), 60, 1), argument_error);
}

TEST_CASE("FNN dimension for a sine is 2") {
  const DimSelection d = select_dim_fnn(sine(5000, 100.0), 25, 6);
  REQUIRE(d.dimension.has_value());
  CHECK(*d.dimension == 2);
  CHECK(d.fnn_fraction[*d.dimension - 1] <= d.fnn_fraction[0]);
}

TEST_CASE("FNN dimension for lorenz63 x is 3") {
  const DimSelection d = select_dim_fnn(test::reference_series("lorenz63", "x"), 9, 6);
  REQUIRE(d.dimension.has_value());
  CHECK(*d.dimension == 3);
  CHECK(d.fnn_fraction[*d.dimension - 1] <= d.fnn_fraction[0]);
}

TEST_CASE("FNN on a constant series is degenerate") {
  TimeSeries c;
  c.values = Vector::Constant(500, 2.0);
  CHECK_THROWS_AS((void)select_dim_fnn(c, 1, 4), degenerate_input_error);
}

}  // TEST_SUITE

TEST_SUITE("kdtree") {

TEST_CASE("kNN agrees with the brute-force scan") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd pts(3000, 3);
  for (Index i = 0; i < pts.rows(); ++i)
    for (Index j = 0; j < 3; ++j) pts(i, j) = nd(rng);
  std::vector<Index> subset;
  for (Index i = 0; i < pts.rows(); i += 3) subset.push_back(i);

  const KdTree full(pts);
  const KdTree part(pts, subset);
  CHECK(full.size() == 3000);
  CHECK(part.size() == 1000);
  for (int q = 0; q < 200; ++q) {
    const Index qi = q * 13;
    const Eigen::VectorXd query = pts.row(qi).transpose();
    for (int k : {1, 4, 10}) {
      const auto a = full.knn(query, k, qi);
      const auto b = brute_force_knn(pts, {}, query, k, qi);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].distance == doctest::Approx(b[i].distance).epsilon(1e-12));
        CHECK(a[i].id != qi);
      }
      const auto c = part.knn(query, k, qi);
      const auto d = brute_force_knn(pts, subset, query, k, qi);
      REQUIRE(c.size() == d.size());
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].id == d[i].id);
    }
  }
}

TEST_CASE("ties resolve by id and radius search is inclusive") {
  Eigen::MatrixXd pts(5, 1);
  pts << 0, 1, -1, 2, 1;
  const KdTree tree(pts);
  const auto nn = tree.knn(Eigen::VectorXd::Zero(1), 3);
  CHECK(nn[0].id == 0);
  CHECK(nn[1].id == 1);
  CHECK(nn[2].id == 2);
  std::vector<Neighbor> out;
  const double q = 0.0;
  tree.radius_search(&q, 1.0, 0, out);
  CHECK(out.size() == 3);
}

TEST_CASE("small trees return every point") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 1;
  const KdTree tree(pts);
  CHECK(tree.knn(Eigen::VectorXd::Zero(2), 10).size() == 3);
  CHECK(tree.knn(Eigen::VectorXd::Zero(2), 10, 0).size() == 2);
}

}  // TEST_SUITE

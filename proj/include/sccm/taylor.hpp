#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sccm {

/// Truncated power series c_0 + c_1 t + ... + c_K t^K.
///
/// Vector fields in the catalogue are written once as templates over the
/// scalar type; evaluating them on Taylor values propagates the time
/// expansion of a trajectory through the field, which is how Lie
/// derivatives along the flow are obtained without finite differences in
/// time. All operands in one expression must share the same order.
class Taylor {
public:
  Taylor() = default;
  Taylor(double constant, std::size_t order) : c_(order + 1, 0.0) {
    c_[0] = constant;
  }

  std::size_t order() const { return c_.size() - 1; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  const std::vector<double>& coefficients() const { return c_; }

  Taylor& operator+=(const Taylor& o) {
    assert(o.c_.size() == c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    assert(o.c_.size() == c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Taylor& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  Taylor& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Taylor operator-(Taylor a) {
    for (double& v : a.c_) v = -v;
    return a;
  }
  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator+(Taylor a, double s) { return a += s; }
  friend Taylor operator+(double s, Taylor a) { return a += s; }
  friend Taylor operator-(Taylor a, double s) { return a += -s; }
  friend Taylor operator-(double s, const Taylor& a) { return (-a) += s; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator/(Taylor a, double s) { return a *= (1.0 / s); }

  // Cauchy product truncated at the common order.
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    assert(a.c_.size() == b.c_.size());
    Taylor r;
    r.c_.assign(a.c_.size(), 0.0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    assert(a.c_.size() == b.c_.size());
    Taylor r;
    r.c_.assign(a.c_.size(), 0.0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }

  friend Taylor operator/(double s, const Taylor& b) {
    return Taylor(s, b.order()) / b;
  }

  friend Taylor sqrt(const Taylor& a) {
    Taylor r;
    r.c_.assign(a.c_.size(), 0.0);
    r.c_[0] = std::sqrt(a.c_[0]);
    for (std::size_t k = 1; k < a.c_.size(); ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j < k; ++j) s -= r.c_[j] * r.c_[k - j];
      r.c_[k] = s / (2.0 * r.c_[0]);
    }
    return r;
  }

private:
  std::vector<double> c_{0.0};
};

}  // namespace sccm

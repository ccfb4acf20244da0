#pragma once

// Second-order forward-mode jets: a value carried together with its gradient
// and Hessian with respect to the 2n ambient coordinates. Zoo defining
// functions are written once over Jet and evaluated to exact (round-off
// level) first and second derivatives.

#include <cmath>

#include <Eigen/Dense>

namespace leviscope {

inline constexpr int kMaxJetVars = 8;  // 2n with n <= 4

class Jet {
 public:
  using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxJetVars, 1>;
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxJetVars, kMaxJetVars>;

  Jet(double value, int vars) : v_(value), g_(Vector::Zero(vars)), h_(Matrix::Zero(vars, vars)) {}

  static Jet variable(double value, int index, int vars) {
    Jet x(value, vars);
    x.g_[index] = 1.0;
    return x;
  }

  double value() const { return v_; }
  const Vector& gradient() const { return g_; }
  const Matrix& hessian() const { return h_; }
  int vars() const { return static_cast<int>(g_.size()); }

  // Chain rule for a scalar map with derivatives (f, f', f'').
  Jet compose(double f, double df, double d2f) const {
    Jet out(f, vars());
    out.g_ = df * g_;
    out.h_ = df * h_ + d2f * (g_ * g_.transpose());
    return out;
  }

  Jet& operator+=(const Jet& o) { v_ += o.v_; g_ += o.g_; h_ += o.h_; return *this; }
  Jet& operator-=(const Jet& o) { v_ -= o.v_; g_ -= o.g_; h_ -= o.h_; return *this; }
  Jet& operator+=(double c) { v_ += c; return *this; }
  Jet& operator*=(double c) { v_ *= c; g_ *= c; h_ *= c; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a += -c; }
  friend Jet operator*(Jet a, double c) { return a *= c; }
  friend Jet operator*(double c, Jet a) { return a *= c; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out(a.v_ * b.v_, a.vars());
    out.g_ = a.g_ * b.v_ + b.g_ * a.v_;
    out.h_ = a.h_ * b.v_ + b.h_ * a.v_ + a.g_ * b.g_.transpose() + b.g_ * a.g_.transpose();
    return out;
  }

 private:
  double v_;
  Vector g_;
  Matrix h_;
};

inline Jet square(const Jet& a) { return a * a; }
inline Jet sin(const Jet& a) {
  return a.compose(std::sin(a.value()), std::cos(a.value()), -std::sin(a.value()));
}
inline Jet cos(const Jet& a) {
  return a.compose(std::cos(a.value()), -std::sin(a.value()), -std::cos(a.value()));
}
inline Jet log(const Jet& a) {
  const double x = a.value();
  return a.compose(std::log(x), 1.0 / x, -1.0 / (x * x));
}
inline Jet pow(const Jet& a, int k) {
  const double x = a.value();
  if (k == 0) return Jet(1.0, a.vars());
  if (k == 1) return a;
  return a.compose(std::pow(x, k), k * std::pow(x, k - 1), k * (k - 1) * std::pow(x, k - 2));
}

}  // namespace leviscope

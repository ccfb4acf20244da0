#pragma once

#include <initializer_list>
#include <random>

#include "leviscope/linalg.hpp"

namespace test {

inline leviscope::AmbientPoint pt(std::initializer_list<double> xs) {
  leviscope::RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return leviscope::AmbientPoint(v);
}

inline leviscope::ComplexVector cvec(std::initializer_list<leviscope::Complex> xs) {
  leviscope::ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

inline leviscope::RealMatrix random_symmetric(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  leviscope::RealMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = g(rng);
  return 0.5 * (a + a.transpose());
}

inline leviscope::ComplexVector random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  leviscope::ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = {g(rng), g(rng)};
  return v;
}

}  // namespace test

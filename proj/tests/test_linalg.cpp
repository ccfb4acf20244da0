#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leviscope/error.hpp"
#include "leviscope/linalg.hpp"
#include "support.hpp"

using namespace leviscope;
using test::cvec;
using test::pt;

TEST_CASE("interleaved layout and complex structure") {
  const AmbientPoint p = pt({1, 2, 3, 4});
  CHECK(p.dimension() == 2);
  const ComplexVector z = p.complex_view();
  CHECK(z[0] == Complex(1, 2));
  CHECK(z[1] == Complex(3, 4));
  CHECK((AmbientPoint::from_complex(z).coords() - p.coords()).norm() == 0.0);

  // J is multiplication by i.
  const RealVector jw = apply_j(p.coords());
  CHECK((complexify(jw) - Complex(0, 1) * z).norm() < 1e-15);
  const RealMatrix j = complex_structure(2);
  CHECK((j * p.coords() - jw).norm() < 1e-15);
  CHECK((j * j + RealMatrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((realify(z) - p.coords()).norm() == 0.0);
}

TEST_CASE("ambient point rejects odd or empty coordinates") {
  CHECK_THROWS_AS(AmbientPoint(RealVector(3)), Error);
  CHECK_THROWS_AS(AmbientPoint(RealVector(0)), Error);
}

TEST_CASE("levi form matches the closed-form complex Hessian of |z1|^2 |z2|^2") {
  // f = |z1|^2 |z2|^2 has f_{1 1bar} = |z2|^2, f_{1 2bar} = conj(z1) z2,
  // f_{2 1bar} = z1 conj(z2), f_{2 2bar} = |z1|^2. Real Hessian by central differences.
  auto f = [](const RealVector& x) {
    return (x[0] * x[0] + x[1] * x[1]) * (x[2] * x[2] + x[3] * x[3]);
  };
  const RealVector x0 = pt({0.3, -0.7, 1.1, 0.4}).coords();
  const double h = 1e-4;
  RealMatrix hess(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const RealVector ea = RealVector::Unit(4, a) * h;
      const RealVector eb = RealVector::Unit(4, b) * h;
      hess(a, b) = (f(x0 + ea + eb) - f(x0 + ea - eb) - f(x0 - ea + eb) + f(x0 - ea - eb)) / (4 * h * h);
    }
  }
  const HermitianForm levi = levi_from_real_hessian(SymmetricRealForm(hess, AmbientPoint(x0)));
  const Complex z1(0.3, -0.7), z2(1.1, 0.4);
  ComplexMatrix expected(2, 2);
  expected << std::norm(z2), std::conj(z1) * z2, z1 * std::conj(z2), std::norm(z1);
  CHECK((levi.matrix() - expected).norm() < 1e-6);
}

TEST_CASE("4 L(w, w-bar) equals omega^T (H + J^T H J) omega") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const RealMatrix h = test::random_symmetric(2 * n, rng);
      const ComplexVector w = test::random_complex(n, rng);
      const RealVector omega = realify(w);
      const RealMatrix j = complex_structure(n);
      const double direct = omega.dot((h + j.transpose() * h * j) * omega);
      const SymmetricRealForm form(h, AmbientPoint(RealVector::Zero(2 * n)));
      CHECK(std::abs(4.0 * levi_from_real_hessian(form).quadratic(w) - direct) < 1e-10);
    }
  }
}

TEST_CASE("levi form of a pluriharmonic function vanishes") {
  // Re(z1^2) = x^2 - y^2.
  RealMatrix h = RealMatrix::Zero(2, 2);
  h(0, 0) = 2;
  h(1, 1) = -2;
  const HermitianForm levi = levi_from_real_hessian(SymmetricRealForm(h, pt({0, 0})));
  CHECK(levi.matrix().norm() < 1e-15);
}

TEST_CASE("hermitian form evaluation convention") {
  ComplexMatrix m(2, 2);
  m << 2.0, Complex(0, 1), Complex(0, -1), 3.0;
  const HermitianForm f(m, pt({0, 0, 0, 0}));
  const ComplexVector u = cvec({1.0, Complex(0, 1)});
  const ComplexVector v = cvec({Complex(1, 1), 2.0});
  Complex manual = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) manual += m(j, k) * u[j] * std::conj(v[k]);
  CHECK(std::abs(f.evaluate(u, v) - manual) < 1e-15);
  CHECK(std::abs(f.quadratic(u) - std::real(f.evaluate(u, u))) < 1e-15);
  CHECK(std::abs(f.scaled(2.0).quadratic(u) - 2.0 * f.quadratic(u)) < 1e-14);
}

TEST_CASE("eigen analysis: spectrum, null basis and threshold") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = 1e-9;
  m(2, 2) = -0.5;
  const EigenAnalysis e = eigen_analysis(HermitianForm(m, pt({0, 0, 0, 0, 0, 0})), 1e-6);
  REQUIRE(e.eigenvalues.size() == 3);
  CHECK(e.eigenvalues[0] == doctest::Approx(-0.5));
  CHECK(e.eigenvalues[1] == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(e.eigenvalues[2] == doctest::Approx(2.0));
  CHECK(e.threshold == doctest::Approx(2e-6));
  REQUIRE(e.null_basis.size() == 1);
  CHECK(std::abs(std::abs(e.null_basis[0][1]) - 1.0) < 1e-12);
}

TEST_CASE("eigenvectors satisfy F(v, .) = lambda <v, .>") {
  std::mt19937_64 rng(3);
  ComplexMatrix a(3, 3);
  for (int i = 0; i < 3; ++i) a.col(i) = test::random_complex(3, rng);
  const ComplexMatrix m = a + a.adjoint();
  const EigenAnalysis e = eigen_analysis(HermitianForm(m, pt({0, 0, 0, 0, 0, 0})), 1e-6);
  const ComplexVector probe = test::random_complex(3, rng);
  const HermitianForm f(m, pt({0, 0, 0, 0, 0, 0}));
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexVector& v = e.eigenvectors[i];
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK(std::abs(f.evaluate(v, probe) - e.eigenvalues[i] * inner(v, probe)) < 1e-10);
    CHECK(std::abs(f.quadratic(v) - e.eigenvalues[i]) < 1e-10);
  }
}

TEST_CASE("eigen analysis rejects non-hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    eigen_analysis(HermitianForm(m, pt({0, 0, 0, 0})), 1e-6);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("orthonormalize and restrict") {
  std::vector<ComplexVector> span = {cvec({1.0, 1.0, 0.0}), cvec({1.0, 0.0, Complex(0, 1)})};
  const auto q = orthonormalize(span);
  REQUIRE(q.size() == 2);
  CHECK(std::abs(inner(q[0], q[1])) < 1e-14);
  CHECK(std::abs(q[0].norm() - 1.0) < 1e-14);

  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(2, 2) = 5.0;
  const HermitianForm r = restrict_form(HermitianForm(m, pt({0, 0, 0, 0, 0, 0})), span);
  REQUIRE(r.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex expected = (q[i].transpose() * m * q[j].conjugate())(0, 0);
      CHECK(std::abs(r.matrix()(i, j) - expected) < 1e-14);
    }

  std::vector<ComplexVector> dependent = {cvec({1.0, 2.0}), cvec({2.0, 4.0})};
  CHECK_THROWS_AS(orthonormalize(dependent), Error);
}

TEST_CASE("subspace angle") {
  const std::vector<ComplexVector> basis = {cvec({1.0, 0.0})};
  CHECK(subspace_angle(cvec({1.0, 0.0}), basis) == doctest::Approx(0.0));
  CHECK(subspace_angle(cvec({Complex(0, 3), 0.0}), basis) == doctest::Approx(0.0));
  CHECK(subspace_angle(cvec({1.0, 1.0}), basis) == doctest::Approx(std::numbers::pi / 4));
  CHECK(subspace_angle(cvec({0.0, 1.0}), basis) == doctest::Approx(std::numbers::pi / 2));
  CHECK(subspace_angle(cvec({1.0, 1e-9}), basis) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(subspace_angle(cvec({1.0, 0.0}), {}) == doctest::Approx(std::numbers::pi / 2));
}

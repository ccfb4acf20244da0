#include <doctest.h>

#include <cmath>

#include "leviscope/error.hpp"
#include "leviscope/levi_geometry.hpp"
#include "support.hpp"

using namespace leviscope;
using test::cvec;
using test::pt;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("ball levi form on the tangent space is 1/(2R)") {
  for (double r : {1.0, 2.0}) {
    const DefiningFunction ball = zoo::ball(r, 2);
    const ComplexBoundaryFrame frame = boundary_frame(ball, pt({r, 0, 0, 0}));
    REQUIRE(frame.levi_tangent.size() == 1);
    CHECK(std::abs(frame.levi_tangent.matrix()(0, 0) - 0.5 / r) <= 2e-5);
    CHECK(classify(frame) == PseudoconvexClass::Strict);
    CHECK(null_space(frame).basis.empty());
  }
  const DefiningFunction ball3 = zoo::ellipsoid({1.0, 1.0, 1.0});
  const ComplexBoundaryFrame frame = boundary_frame(ball3, pt({1, 0, 0, 0, 0, 0}));
  REQUIRE(frame.levi_tangent.size() == 2);
  CHECK((frame.levi_tangent.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm() <= 2e-5);
}

TEST_CASE("frame invariants") {
  for (const std::string id : {"ball:R=1", "egg2m:m=2,n=3", "worm:a=0.5", "perturbed_ball:delta=0.1"}) {
    CAPTURE(id);
    const DefiningFunction d = zoo::parse(id);
    for (const AmbientPoint& p : d.boundary_sample(10, 3)) {
      const ComplexBoundaryFrame f = boundary_frame(d, p);
      CHECK(std::abs(f.normalization - 1.0) <= 1e-7);
      CHECK(static_cast<int>(f.tangent_basis.size()) == d.dimension() - 1);
      for (std::size_t i = 0; i < f.tangent_basis.size(); ++i) {
        CHECK(std::abs(f.dbar_pairing(f.tangent_basis[i])) <= 1e-12);
        CHECK(std::abs(f.tangent_basis[i].norm() - 1.0) <= 1e-12);
        for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(inner(f.tangent_basis[i], f.tangent_basis[j])) <= 1e-12);
      }
      // Complex normal is 2 d rho / d zbar of the unit outward normal.
      CHECK((f.complex_normal - complexify(boundary_normal(d, p))).norm() <= 1e-8);
    }
  }
}

TEST_CASE("egg null spaces") {
  const DefiningFunction egg = zoo::egg2m(2, 2);
  for (const AmbientPoint& p : egg.weak_locus_sample(5, 1)) {
    const ComplexBoundaryFrame f = boundary_frame(egg, p);
    CHECK(std::abs(f.levi_tangent.matrix()(0, 0)) <= 2e-5);
    const NullSpaceResult null = null_space(f);
    REQUIRE(null.basis.size() == 1);
    CHECK(subspace_angle(cvec({0.0, 1.0}), null.basis) <= 1e-8);
    CHECK(classify(f) == PseudoconvexClass::Weak);
  }
  const DefiningFunction egg3 = zoo::egg2m(2, 3);
  const ComplexBoundaryFrame f3 = boundary_frame(egg3, pt({1, 0, 0, 0, 0, 0}));
  const NullSpaceResult null3 = null_space(f3);
  REQUIRE(null3.basis.size() == 1);
  CHECK(subspace_angle(cvec({0.0, 0.0, 1.0}), null3.basis) <= 1e-8);
  REQUIRE(null3.levi_eigenvalues.size() == 2);
  CHECK(std::abs(null3.levi_eigenvalues[1] - 0.5) <= 2e-5);
}

TEST_CASE("Q form near the ball") {
  const DefiningFunction ball = zoo::ball(1.0, 2);
  for (double delta : {0.01, 0.05, 0.2}) {
    const double r = 1.0 - delta;
    const AmbientPoint z = pt({r, 0, 0, 0});
    const HermitianForm q = q_form(ball, z);
    const ComplexBoundaryFrame frame = level_set_frame(ball, z);
    // Distance Hessian (I - x x^T / r^2) / r gives L(e1, e1-bar) = 1 / (4 r).
    const double expected = 0.25 / r + 0.25 / delta;
    CHECK(std::abs(q.quadratic(cvec({1.0, 0.0})) - expected) <= 5e-4 / delta);
    CHECK(std::abs(frame.levi.quadratic(cvec({1.0, 0.0})) - 0.25 / r) <= 2e-5);
    const ComplexVector w = cvec({0.0, Complex(0.6, 0.8)});
    CHECK(std::abs(q.quadratic(w) - frame.levi.quadratic(w)) <= 1e-8);
  }
}

TEST_CASE("mixed terms of L and Q agree on tangent directions") {
  for (const std::string id : {"egg2m:m=2,n=2", "perturbed_ball:delta=0.1", "worm:a=0.5"}) {
    CAPTURE(id);
    const DefiningFunction d = zoo::parse(id);
    std::mt19937_64 rng(2);
    for (const AmbientPoint& p : d.boundary_sample(5, 6)) {
      const ComplexBoundaryFrame boundary = boundary_frame(d, p);
      const AmbientPoint z = normal_transport(d, p, -0.5 * d.collar_width());
      const ComplexBoundaryFrame interior = level_set_frame(d, z);
      const HermitianForm q = q_form(interior, d);
      const ComplexVector w = boundary.tangent_basis[0];
      const ComplexVector v = test::random_complex(d.dimension(), rng);
      CHECK(std::abs(interior.levi.evaluate(v, w) - q.evaluate(v, w)) <= 1e-8);
    }
  }
}

TEST_CASE("Q form is only offered strictly inside") {
  const DefiningFunction ball = zoo::ball(1.0, 2);
  CHECK(code_of([&] { q_form(ball, pt({1, 0, 0, 0})); }) == ErrorCode::WrongSide);
  CHECK(code_of([&] { q_form(ball, pt({1.1, 0, 0, 0})); }) == ErrorCode::WrongSide);
  CHECK(code_of([&] { boundary_frame(ball, pt({0.9, 0, 0, 0})); }) == ErrorCode::InvalidInput);
}

TEST_CASE("null spaces rotate with the domain") {
  const DefiningFunction egg = zoo::egg2m(2, 2);
  ComplexMatrix u(2, 2);
  const double c = std::cos(0.7), s = std::sin(0.7);
  u << c, -s * Complex(0.6, 0.8), s * Complex(0.6, -0.8), c;
  REQUIRE((u.adjoint() * u - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  const DefiningFunction moved = zoo::rotated(egg, u);
  for (const AmbientPoint& p : egg.weak_locus_sample(5, 3)) {
    const NullSpaceResult before = null_space(egg, p);
    const AmbientPoint q = AmbientPoint::from_complex(u * p.complex_view());
    const NullSpaceResult after = null_space(moved, q);
    REQUIRE(before.basis.size() == 1);
    REQUIRE(after.basis.size() == 1);
    CHECK(subspace_angle(u * before.basis[0], after.basis) <= 1e-6);
  }
  for (const AmbientPoint& p : egg.boundary_sample(5, 3)) {
    const AmbientPoint q = AmbientPoint::from_complex(u * p.complex_view());
    const auto a = null_space(egg, p).levi_eigenvalues;
    const auto b = null_space(moved, q).levi_eigenvalues;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 2e-5);
  }
}

TEST_CASE("worm boundary is pseudoconvex and flat on the annulus") {
  const DefiningFunction worm = zoo::worm(0.5);
  for (const AmbientPoint& p : worm.boundary_sample(20, 2)) {
    const ComplexBoundaryFrame f = boundary_frame(worm, p);
    CHECK(eigen_analysis(f.levi_tangent, 0.0).eigenvalues.front() >= -1e-6);
  }
  for (const AmbientPoint& p : worm.weak_locus_sample(5, 2)) {
    const ComplexBoundaryFrame f = boundary_frame(worm, p);
    CHECK(std::abs(eigen_analysis(f.levi_tangent, 0.0).eigenvalues.front()) <= 1e-4);
    CHECK(classify(f) == PseudoconvexClass::Weak);
  }
}

TEST_CASE("pseudoconvexity class names") {
  CHECK(std::string(to_string(PseudoconvexClass::Borderline)) == "borderline");
  CHECK(std::string(to_string(PseudoconvexClass::NotPseudoconvex)) == "not-pseudoconvex");
}

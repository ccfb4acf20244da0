#include "leviscope/signed_distance.hpp"

#include <cmath>
#include <sstream>

#include "leviscope/error.hpp"

namespace leviscope {

namespace {

constexpr int kNewtonIterations = 50;
constexpr double kBoundaryTolerance = 1e-10;
constexpr double kMedialAxisCondition = 1e8;

std::string describe(const RealVector& z) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (Eigen::Index i = 0; i < z.size(); ++i) out << (i ? ", " : "") << z[i];
  out << ')';
  return out.str();
}

FootPointResult solve_foot(const DefiningFunction& domain, const RealVector& z) {
  const auto dim = z.size();
  const double scale = std::max(1.0, domain.diameter());

  auto projected = domain.project_to_boundary(z);
  if (!projected) {
    throw Error(ErrorCode::FootPointFailure, "foot_point: gradient projection failed at " + describe(z));
  }
  RealVector p = std::move(*projected);
  Evaluation e = domain.evaluate(AmbientPoint(p));
  double lambda = (z - p).dot(e.gradient) / e.gradient.squaredNorm();

  RealMatrix jac(dim + 1, dim + 1);
  RealVector residual(dim + 1);
  int it = 0;
  for (; it < kNewtonIterations; ++it) {
    residual.head(dim) = p - z + lambda * e.gradient;
    residual[dim] = e.value;
    jac.topLeftCorner(dim, dim) = RealMatrix::Identity(dim, dim) + lambda * e.hessian.matrix();
    jac.topRightCorner(dim, 1) = e.gradient;
    jac.bottomLeftCorner(1, dim) = e.gradient.transpose();
    jac(dim, dim) = 0.0;
    const RealVector step = jac.fullPivLu().solve(residual);
    if (!step.allFinite()) break;
    p -= step.head(dim);
    lambda -= step[dim];
    e = domain.evaluate(AmbientPoint(p));
    if (step.head(dim).norm() <= 1e-15 * scale) {
      ++it;
      break;
    }
  }

  FootPointResult out;
  out.unit_normal = e.gradient / e.gradient.norm();
  out.signed_distance = (z - p).dot(out.unit_normal);
  out.distance = std::abs(out.signed_distance);
  out.optimality_residual = ((z - p) - out.signed_distance * out.unit_normal).norm();
  out.iterations = it;
  if (!(std::abs(e.value) <= kBoundaryTolerance) ||
      !(out.optimality_residual <= kBoundaryTolerance * scale)) {
    throw Error(ErrorCode::FootPointFailure, "foot_point: Newton did not converge at " + describe(z));
  }
  jac.topLeftCorner(dim, dim) = RealMatrix::Identity(dim, dim) + lambda * e.hessian.matrix();
  jac.topRightCorner(dim, 1) = e.gradient;
  jac.bottomLeftCorner(1, dim) = e.gradient.transpose();
  // Second-order test on the tangent space: a saddle of |z - p|^2 on the
  // boundary is a critical point but not the foot.
  const RealMatrix frame = Eigen::HouseholderQR<RealMatrix>(out.unit_normal).householderQ();
  const RealMatrix tangent = frame.rightCols(dim - 1);
  const RealMatrix curvature = tangent.transpose() * jac.topLeftCorner(dim, dim) * tangent;
  if (Eigen::SelfAdjointEigenSolver<RealMatrix>(curvature).eigenvalues().minCoeff() < -1e-8) {
    throw Error(ErrorCode::FootPointFailure,
                "foot_point: Newton reached a non-minimal critical point at " + describe(z));
  }
  const Eigen::JacobiSVD<RealMatrix> svd(jac);
  const auto& sv = svd.singularValues();
  out.jacobian_condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  out.medial_axis_warning = out.jacobian_condition > kMedialAxisCondition;
  out.foot = AmbientPoint(std::move(p));
  return out;
}

}  // namespace

void require_boundary_point(const DefiningFunction& domain, const AmbientPoint& p) {
  const double v = domain.value(p.coords());
  if (!(std::abs(v) <= kBoundaryTolerance)) {
    std::ostringstream msg;
    msg << "expected a boundary point, |rho~| = " << std::abs(v) << " at " << describe(p.coords());
    throw Error(ErrorCode::InvalidInput, msg.str());
  }
}

FootPointResult foot_point(const DefiningFunction& domain, const AmbientPoint& z) {
  if (z.dimension() != domain.dimension()) {
    throw Error(ErrorCode::InvalidInput, "foot_point: dimension mismatch");
  }
  return solve_foot(domain, z.coords());
}

RealVector distance_gradient(const DefiningFunction& domain, const RealVector& z) {
  return solve_foot(domain, z).unit_normal;
}

DistanceJet distance_jet(const DefiningFunction& domain, const AmbientPoint& z) {
  return distance_jet(domain, z, domain.fd_step());
}

DistanceJet distance_jet(const DefiningFunction& domain, const AmbientPoint& z, double h) {
  if (!(h >= 1e-9)) {
    throw Error(ErrorCode::IllConditionedStep, "distance_jet: step h below 1e-9");
  }
  const FootPointResult foot = foot_point(domain, z);
  const auto dim = z.coords().size();
  RealMatrix columns(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    RealVector shift = RealVector::Zero(dim);
    shift[k] = h;
    columns.col(k) = (distance_gradient(domain, z.coords() + shift) -
                      distance_gradient(domain, z.coords() - shift)) /
                     (2.0 * h);
  }
  DistanceJet out;
  out.point = z;
  out.signed_distance = foot.signed_distance;
  out.gradient = foot.unit_normal;
  out.hessian = SymmetricRealForm(columns, z);
  out.fd_step = h;
  return out;
}

RealVector boundary_normal(const DefiningFunction& domain, const AmbientPoint& p) {
  const Evaluation e = domain.evaluate(p);
  return e.gradient / e.gradient.norm();
}

AmbientPoint normal_transport(const DefiningFunction& domain, const AmbientPoint& p, double eps) {
  require_boundary_point(domain, p);
  if (!(std::abs(eps) < domain.collar_width())) {
    std::ostringstream msg;
    msg << "normal_transport: |eps| = " << std::abs(eps) << " is beyond the collar width "
        << domain.collar_width();
    throw Error(ErrorCode::OutOfCollar, msg.str());
  }
  return AmbientPoint(p.coords() + eps * boundary_normal(domain, p));
}

}  // namespace leviscope

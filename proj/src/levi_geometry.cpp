#include "leviscope/levi_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leviscope/error.hpp"

namespace leviscope {

const char* to_string(PseudoconvexClass c) noexcept {
  switch (c) {
    case PseudoconvexClass::Strict: return "strict";
    case PseudoconvexClass::Weak: return "weak";
    case PseudoconvexClass::Borderline: return "borderline";
    case PseudoconvexClass::NotPseudoconvex: return "not-pseudoconvex";
  }
  return "unknown";
}

Complex ComplexBoundaryFrame::dbar_pairing(const ComplexVector& w) const {
  // d rho / d z_j = conj(n_j) / 2.
  return 0.5 * (complex_normal.conjugate().transpose() * w)(0, 0);
}

std::vector<ComplexVector> complex_tangent_basis(const ComplexVector& normal) {
  const Eigen::Index n = normal.size();
  Eigen::Index pivot = 0;
  normal.cwiseAbs().maxCoeff(&pivot);
  const ComplexVector unit = normal / normal.norm();
  std::vector<ComplexVector> basis;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == pivot) continue;
    ComplexVector v = ComplexVector::Unit(n, j);
    for (int pass = 0; pass < 2; ++pass) {
      v -= inner(v, unit) * unit;
      for (const ComplexVector& q : basis) v -= inner(v, q) * q;
    }
    basis.push_back(v / v.norm());
  }
  return basis;
}

ComplexBoundaryFrame level_set_frame(const DefiningFunction& domain, const AmbientPoint& z) {
  ComplexBoundaryFrame frame;
  frame.point = z;
  frame.jet = distance_jet(domain, z);
  frame.complex_normal = complexify(frame.jet.gradient);
  frame.normalization = frame.complex_normal.squaredNorm();
  frame.tangent_basis = complex_tangent_basis(frame.complex_normal);
  frame.levi = levi_from_real_hessian(frame.jet.hessian);
  frame.levi_tangent = frame.tangent_basis.empty()
                           ? HermitianForm(ComplexMatrix(0, 0), z)
                           : restrict_form(frame.levi, frame.tangent_basis);
  return frame;
}

ComplexBoundaryFrame boundary_frame(const DefiningFunction& domain, const AmbientPoint& p) {
  require_boundary_point(domain, p);
  return level_set_frame(domain, p);
}

NullSpaceResult null_space(const ComplexBoundaryFrame& frame, double tol_rel) {
  NullSpaceResult out;
  out.tol_rel = tol_rel;
  if (frame.tangent_basis.empty()) return out;
  const EigenAnalysis eig = eigen_analysis(frame.levi_tangent, tol_rel);
  out.levi_eigenvalues = eig.eigenvalues;
  out.tolerance = eig.threshold;
  out.tangent_coordinates = eig.null_basis;
  for (const ComplexVector& c : eig.null_basis) {
    ComplexVector w = ComplexVector::Zero(frame.complex_normal.size());
    for (std::size_t i = 0; i < frame.tangent_basis.size(); ++i) {
      w += c[static_cast<Eigen::Index>(i)] * frame.tangent_basis[i];
    }
    out.basis.push_back(w);
  }
  return out;
}

NullSpaceResult null_space(const DefiningFunction& domain, const AmbientPoint& p, double tol_rel) {
  return null_space(boundary_frame(domain, p), tol_rel);
}

PseudoconvexClass classify(const ComplexBoundaryFrame& frame) {
  if (frame.tangent_basis.empty()) return PseudoconvexClass::Strict;
  const double lambda_min = eigen_analysis(frame.levi_tangent, 0.0).eigenvalues.front();
  if (lambda_min < -kWeakPseudoconvexThreshold) return PseudoconvexClass::NotPseudoconvex;
  if (lambda_min <= kWeakPseudoconvexThreshold) return PseudoconvexClass::Weak;
  // Within two orders of the threshold the finite-difference error may decide.
  if (lambda_min <= 100.0 * kWeakPseudoconvexThreshold) return PseudoconvexClass::Borderline;
  return PseudoconvexClass::Strict;
}

HermitianForm q_form(const ComplexBoundaryFrame& frame, const DefiningFunction& domain) {
  const double rho = frame.jet.signed_distance;
  if (!(rho <= -1e-6 * domain.diameter())) {
    std::ostringstream msg;
    msg << "q_form: needs an interior point, got signed distance " << rho;
    throw Error(ErrorCode::WrongSide, msg.str());
  }
  const ComplexVector& n = frame.complex_normal;
  // rho_j rho_kbar = conj(n_j) n_k / 4.
  const ComplexMatrix outer = n.conjugate() * n.transpose();
  return HermitianForm(frame.levi.matrix() - (0.25 / rho) * outer, frame.point);
}

HermitianForm q_form(const DefiningFunction& domain, const AmbientPoint& z) {
  return q_form(level_set_frame(domain, z), domain);
}

}  // namespace leviscope

#pragma once

// Signed boundary distance rho_d built from a zoo defining function:
// rho_d = -dist(z, b Omega) inside, +dist outside, valid on the declared
// collar |rho_d| < collar_width. Gradients come from foot points; Hessians
// from central differences of the gradient field.

#include "leviscope/domain_zoo.hpp"
#include "leviscope/linalg.hpp"

namespace leviscope {

struct FootPointResult {
  AmbientPoint foot;
  double distance = 0.0;
  double signed_distance = 0.0;
  RealVector unit_normal;     // outward, at the foot
  int iterations = 0;
  double optimality_residual = 0.0;
  double jacobian_condition = 1.0;
  bool medial_axis_warning = false;
};

struct DistanceJet {
  AmbientPoint point;
  double signed_distance = 0.0;
  RealVector gradient;
  SymmetricRealForm hessian;
  double fd_step = 0.0;
};

/// Nearest boundary point by Newton on the Lagrange system
///   p - z + lambda grad rho~(p) = 0,  rho~(p) = 0,
/// started from the gradient-line projection of z. The collar is not
/// enforced here: far points work wherever Newton converges, and
/// medial_axis_warning flags an ill-conditioned (ambiguous) foot.
FootPointResult foot_point(const DefiningFunction& domain, const AmbientPoint& z);

/// Distance jet with the domain's default step (1e-4 * diameter).
DistanceJet distance_jet(const DefiningFunction& domain, const AmbientPoint& z);
DistanceJet distance_jet(const DefiningFunction& domain, const AmbientPoint& z, double h);

/// Unit gradient of rho_d at z (the outward normal at the foot point).
RealVector distance_gradient(const DefiningFunction& domain, const RealVector& z);

/// Outward unit normal grad rho~ / |grad rho~| at a boundary point.
RealVector boundary_normal(const DefiningFunction& domain, const AmbientPoint& p);

/// p + eps n(p) for a boundary point p and |eps| below the collar width.
AmbientPoint normal_transport(const DefiningFunction& domain, const AmbientPoint& p, double eps);

/// Throws InvalidInput unless |rho~(p)| <= 1e-10.
void require_boundary_point(const DefiningFunction& domain, const AmbientPoint& p);

}  // namespace leviscope

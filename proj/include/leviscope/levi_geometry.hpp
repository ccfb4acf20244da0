#pragma once

// Levi forms of the level sets of the signed distance, complex normals and
// tangent frames, Levi null spaces, and the form
//   Q(z)(w, w-bar) = sum (rho_{j kbar} - rho_j rho_kbar / rho) w_j conj(w_k)
// whose nonnegativity expresses plurisubharmonicity of -log(-rho).

#include <vector>

#include "leviscope/domain_zoo.hpp"
#include "leviscope/linalg.hpp"
#include "leviscope/signed_distance.hpp"

namespace leviscope {

inline constexpr double kDefaultNullTolerance = 1e-6;
inline constexpr double kWeakPseudoconvexThreshold = 1e-6;

struct ComplexBoundaryFrame {
  AmbientPoint point;
  DistanceJet jet;
  /// n = 2 (d rho / d zbar_1, ..., d rho / d zbar_n), the complexified unit normal.
  ComplexVector complex_normal;
  std::vector<ComplexVector> tangent_basis;  // orthonormal, <w, n> = 0
  HermitianForm levi;                        // n x n complex Hessian of rho_d
  HermitianForm levi_tangent;                // restriction to tangent_basis
  /// 4 sum_j |d rho / d z_j|^2, equal to 1 for a distance function.
  double normalization = 0.0;

  /// sum_j (d rho / d z_j) w_j: zero exactly for complex tangent vectors.
  Complex dbar_pairing(const ComplexVector& w) const;
};

struct NullSpaceResult {
  std::vector<ComplexVector> tangent_coordinates;  // in the frame's tangent basis
  std::vector<ComplexVector> basis;                // ambient C^n, orthonormal
  std::vector<double> levi_eigenvalues;            // ascending
  double tolerance = 0.0;                          // absolute threshold used
  double tol_rel = 0.0;
};

enum class PseudoconvexClass { Strict, Weak, Borderline, NotPseudoconvex };
const char* to_string(PseudoconvexClass c) noexcept;

/// Frame of the level set of rho_d through any collar point z.
ComplexBoundaryFrame level_set_frame(const DefiningFunction& domain, const AmbientPoint& z);
/// Frame at a boundary point (|rho~(p)| <= 1e-10).
ComplexBoundaryFrame boundary_frame(const DefiningFunction& domain, const AmbientPoint& p);

/// Deterministic orthonormal basis of the complex orthogonal complement of
/// `normal`: Gram-Schmidt over the coordinate vectors, skipping the
/// coordinate where the normal is largest.
std::vector<ComplexVector> complex_tangent_basis(const ComplexVector& normal);

NullSpaceResult null_space(const ComplexBoundaryFrame& frame, double tol_rel = kDefaultNullTolerance);
NullSpaceResult null_space(const DefiningFunction& domain, const AmbientPoint& p,
                           double tol_rel = kDefaultNullTolerance);

PseudoconvexClass classify(const ComplexBoundaryFrame& frame);

/// Q form at an interior collar point, rho_d(z) <= -1e-6 * diameter.
HermitianForm q_form(const DefiningFunction& domain, const AmbientPoint& z);
HermitianForm q_form(const ComplexBoundaryFrame& interior_frame, const DefiningFunction& domain);

}  // namespace leviscope

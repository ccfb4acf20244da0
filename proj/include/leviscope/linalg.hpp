#pragma once

// Real/complex linear algebra shared by the rest of the library.
//
// Wire convention: a point of R^{2n} is stored interleaved as
// (x1, y1, x2, y2, ..., xn, yn) and viewed as z_j = x_j + i y_j in C^n.
// With this layout the complex structure J is block diagonal with 2x2
// rotation blocks [[0, -1], [1, 0]].
//
// Hermitian forms follow the complex-Hessian convention
//   F(u, v-bar) = sum_{j,k} F_{jk} u_j conj(v_k),
// so that the Levi form of a real function rho has F_{jk} = d^2 rho / dz_j dzbar_k.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace leviscope {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// A point of R^{2n} with its complex view in C^n.
class AmbientPoint {
 public:
  AmbientPoint() = default;
  explicit AmbientPoint(RealVector coords);
  static AmbientPoint from_complex(const ComplexVector& z);

  int dimension() const noexcept { return static_cast<int>(coords_.size() / 2); }
  const RealVector& coords() const noexcept { return coords_; }
  ComplexVector complex_view() const;

 private:
  RealVector coords_;
};

/// Real symmetric 2n x 2n form tied to the point where it was evaluated.
class SymmetricRealForm {
 public:
  SymmetricRealForm() = default;
  // Symmetrizes as (A + A^T) / 2.
  SymmetricRealForm(const RealMatrix& matrix, AmbientPoint base);

  const RealMatrix& matrix() const noexcept { return matrix_; }
  const AmbientPoint& base() const noexcept { return base_; }
  int dimension() const noexcept { return static_cast<int>(matrix_.rows() / 2); }
  double quadratic(const RealVector& omega) const;

 private:
  RealMatrix matrix_;
  AmbientPoint base_;
};

/// n x n Hermitian form tied to a base point.
class HermitianForm {
 public:
  HermitianForm() = default;
  HermitianForm(ComplexMatrix matrix, AmbientPoint base);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const AmbientPoint& base() const noexcept { return base_; }
  int size() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// F(u, v-bar) = sum F_jk u_j conj(v_k).
  Complex evaluate(const ComplexVector& u, const ComplexVector& v) const;
  /// F(w, w-bar), real for a Hermitian form.
  double quadratic(const ComplexVector& w) const;

  HermitianForm scaled(double factor) const;

 private:
  ComplexMatrix matrix_;
  AmbientPoint base_;
};

struct EigenAnalysis {
  std::vector<double> eigenvalues;           // ascending
  std::vector<ComplexVector> eigenvectors;   // orthonormal, F(v, .) = lambda <v, .>
  std::vector<ComplexVector> null_basis;
  double threshold = 0.0;                    // tol_rel * max(1, lambda_max)
};

/// Matrix of multiplication by i on R^{2n}.
RealMatrix complex_structure(int n);

RealVector apply_j(const RealVector& omega);
ComplexVector complexify(const RealVector& omega);
RealVector realify(const ComplexVector& w);

/// Complex Hessian of the function whose real Hessian is `hessian`:
/// L_{jk} = (H_{xx} + H_{yy} + i (H_{x_j y_k} - H_{y_j x_k})) / 4.
HermitianForm levi_from_real_hessian(const SymmetricRealForm& hessian);

/// Orthonormalizes `basis` (modified Gram-Schmidt). Throws on rank deficiency.
std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> basis);

/// Restriction B_ij = F(b_i, conj(b_j)) in the orthonormalized basis.
HermitianForm restrict_form(const HermitianForm& form,
                            std::span<const ComplexVector> basis);

EigenAnalysis eigen_analysis(const HermitianForm& form, double tol_rel);

/// Principal angle in [0, pi/2] between a vector and the span of an
/// orthonormal family; pi/2 when the family is empty.
double subspace_angle(const ComplexVector& w,
                      std::span<const ComplexVector> orthonormal_basis);

/// Hermitian inner product <u, v> = sum u_j conj(v_j).
Complex inner(const ComplexVector& u, const ComplexVector& v);

}  // namespace leviscope

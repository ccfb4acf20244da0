#include "leviscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "leviscope/error.hpp"

namespace leviscope {

namespace {

void require_even(Eigen::Index size, const char* what) {
  if (size == 0 || size % 2 != 0) {
    std::ostringstream msg;
    msg << what << ": expected a nonzero even length, got " << size;
    throw Error(ErrorCode::InvalidInput, msg.str());
  }
}

// Unit-modulus phase so the first largest entry becomes real and positive.
ComplexVector fix_phase(const ComplexVector& v) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best * (1.0 + 1e-12)) {
      best = a;
      pivot = i;
    }
  }
  if (best <= 0.0) return v;
  const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  return v * phase;
}

bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

AmbientPoint::AmbientPoint(RealVector coords) : coords_(std::move(coords)) {
  require_even(coords_.size(), "AmbientPoint");
}

AmbientPoint AmbientPoint::from_complex(const ComplexVector& z) {
  return AmbientPoint(realify(z));
}

ComplexVector AmbientPoint::complex_view() const { return complexify(coords_); }

SymmetricRealForm::SymmetricRealForm(const RealMatrix& matrix, AmbientPoint base)
    : matrix_(0.5 * (matrix + matrix.transpose())), base_(std::move(base)) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::InvalidInput, "SymmetricRealForm: matrix not square");
  }
  require_even(matrix.rows(), "SymmetricRealForm");
}

double SymmetricRealForm::quadratic(const RealVector& omega) const {
  if (omega.size() != matrix_.rows()) {
    throw Error(ErrorCode::InvalidInput, "SymmetricRealForm: dimension mismatch");
  }
  return omega.dot(matrix_ * omega);
}

HermitianForm::HermitianForm(ComplexMatrix matrix, AmbientPoint base)
    : matrix_(std::move(matrix)), base_(std::move(base)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::InvalidInput, "HermitianForm: matrix not square");
  }
}

Complex HermitianForm::evaluate(const ComplexVector& u, const ComplexVector& v) const {
  if (u.size() != matrix_.rows() || v.size() != matrix_.rows()) {
    throw Error(ErrorCode::InvalidInput, "HermitianForm: dimension mismatch");
  }
  return (u.transpose() * matrix_ * v.conjugate())(0, 0);
}

double HermitianForm::quadratic(const ComplexVector& w) const {
  return evaluate(w, w).real();
}

HermitianForm HermitianForm::scaled(double factor) const {
  return HermitianForm(matrix_ * factor, base_);
}

RealMatrix complex_structure(int n) {
  if (n <= 0) throw Error(ErrorCode::InvalidInput, "complex_structure: n must be positive");
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

RealVector apply_j(const RealVector& omega) {
  require_even(omega.size(), "apply_j");
  RealVector out(omega.size());
  for (Eigen::Index k = 0; k < omega.size(); k += 2) {
    out[k] = -omega[k + 1];
    out[k + 1] = omega[k];
  }
  return out;
}

ComplexVector complexify(const RealVector& omega) {
  require_even(omega.size(), "complexify");
  ComplexVector w(omega.size() / 2);
  for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = Complex(omega[2 * k], omega[2 * k + 1]);
  return w;
}

RealVector realify(const ComplexVector& w) {
  if (w.size() == 0) throw Error(ErrorCode::InvalidInput, "realify: empty vector");
  RealVector omega(2 * w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    omega[2 * k] = w[k].real();
    omega[2 * k + 1] = w[k].imag();
  }
  return omega;
}

HermitianForm levi_from_real_hessian(const SymmetricRealForm& hessian) {
  const RealMatrix& h = hessian.matrix();
  const int n = hessian.dimension();
  ComplexMatrix levi(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double re = h(2 * j, 2 * k) + h(2 * j + 1, 2 * k + 1);
      const double im = h(2 * j, 2 * k + 1) - h(2 * j + 1, 2 * k);
      levi(j, k) = 0.25 * Complex(re, im);
    }
  }
  return HermitianForm(std::move(levi), hessian.base());
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  return (u.transpose() * v.conjugate())(0, 0);
}

std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> basis) {
  std::vector<ComplexVector> out;
  out.reserve(basis.size());
  for (const ComplexVector& b : basis) {
    const double scale = b.norm();
    ComplexVector v = b;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexVector& q : out) v -= inner(v, q) * q;
    }
    const double norm = v.norm();
    if (scale == 0.0 || norm <= 1e-10 * scale) {
      throw Error(ErrorCode::InvalidInput, "restrict_form: rank-deficient basis");
    }
    out.push_back(v / norm);
  }
  return out;
}

HermitianForm restrict_form(const HermitianForm& form,
                            std::span<const ComplexVector> basis) {
  for (const ComplexVector& b : basis) {
    if (b.size() != form.size()) {
      throw Error(ErrorCode::InvalidInput, "restrict_form: dimension mismatch");
    }
  }
  const std::vector<ComplexVector> q = orthonormalize(basis);
  const auto k = static_cast<Eigen::Index>(q.size());
  ComplexMatrix restricted(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) restricted(i, j) = form.evaluate(q[i], q[j]);
  }
  return HermitianForm(std::move(restricted), form.base());
}

EigenAnalysis eigen_analysis(const HermitianForm& form, double tol_rel) {
  if (!(tol_rel >= 0.0)) throw Error(ErrorCode::InvalidInput, "eigen_analysis: tol_rel < 0");
  EigenAnalysis out;
  const ComplexMatrix& m = form.matrix();
  if (m.size() == 0) return out;

  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale) {
    throw Error(ErrorCode::InvalidInput, "eigen_analysis: form is not Hermitian");
  }
  // Vectors v with F(u, v-bar) = lambda <u, v> are eigenvectors of conj(F).
  const ComplexMatrix a = 0.5 * (m.conjugate() + m.transpose());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidInput, "eigen_analysis: solver did not converge");
  }

  const auto size = static_cast<std::size_t>(m.rows());
  std::vector<double> values(size);
  std::vector<ComplexVector> vectors(size);
  for (std::size_t i = 0; i < size; ++i) {
    values[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    vectors[i] = fix_phase(solver.eigenvectors().col(static_cast<Eigen::Index>(i)));
  }
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (values[l] != values[r]) return values[l] < values[r];
    return lex_less(vectors[l], vectors[r]);
  });

  const double lambda_max = *std::max_element(values.begin(), values.end());
  out.threshold = tol_rel * std::max(1.0, lambda_max);
  for (std::size_t i : order) {
    out.eigenvalues.push_back(values[i]);
    out.eigenvectors.push_back(vectors[i]);
    if (std::abs(values[i]) <= out.threshold) out.null_basis.push_back(vectors[i]);
  }
  return out;
}

double subspace_angle(const ComplexVector& w,
                      std::span<const ComplexVector> orthonormal_basis) {
  const double norm = w.norm();
  if (orthonormal_basis.empty() || norm == 0.0) return std::acos(0.0);
  ComplexVector rejection = w;
  for (const ComplexVector& q : orthonormal_basis) rejection -= inner(w, q) * q;
  const double sine = rejection.norm();
  const double cosine = (w - rejection).norm();
  return std::atan2(sine, cosine);
}

}  // namespace leviscope

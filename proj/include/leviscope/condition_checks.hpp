#pragma once

// Verification battery for the Levi geometry of distance level sets.
//
// Factor convention: L = (H + J^T H J) / 4 is the complex Hessian of rho.
// Under it the normal derivative of the Levi form in a direction w is
//   d/de L(p + e n)(w, w-bar) |_{e=0} = -(|H w|^2 + |H J w|^2) / 4,
// and the outer-neighborhood (Weinstock) matrix H(1 + eH)^{-1} + J^T H(1 + eH)^{-1} J
// has quadratic form 4 L_e(w, w-bar).

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "leviscope/levi_geometry.hpp"

namespace leviscope {

struct WeinstockVerdict {
  AmbientPoint point;
  double eps = 0.0;
  RealMatrix matrix;             // H_e + J^T H_e J, H_e = H (1 + eH)^{-1}
  HermitianForm restricted;      // 4 L(H_e) on the complex tangent, orthonormal basis
  std::vector<ComplexVector> tangent_basis;
  double lambda_min = 0.0;
  bool psd = false;

  /// omega^T M omega for a vector given in complex coordinates.
  double quadratic_value(const ComplexVector& w) const;
};

struct WeinstockSweep {
  struct Entry {
    int sample = 0;
    double eps = 0.0;
    std::optional<WeinstockVerdict> verdict;
    std::optional<std::string> error;
  };
  std::vector<AmbientPoint> samples;
  std::vector<Entry> entries;     // (sample, eps) order
  std::optional<double> eps_star; // largest eps with every verdict up to it PSD
};

struct CommutatorResult {
  Complex lhs;
  Complex rhs;
  double error = 0.0;
};

struct DerivativeComparison {
  AmbientPoint point;
  ComplexVector direction;
  double fd_derivative = 0.0;
  double closed_form = 0.0;
  double discrepancy = 0.0;
  double step = 0.0;
};

struct NullDirectionNorms {
  ComplexVector direction;
  double hessian_norm = 0.0;     // |H omega|
  double hessian_j_norm = 0.0;   // |H J omega|
};

struct CauchySchwarzChain {
  double eps = 0.0;
  double mixed = 0.0;       // |L(n, w-bar)| at p - eps n
  double q_mixed = 0.0;     // |Q(n, w-bar)| at p - eps n
  double bound = 0.0;       // 2 sqrt(q_nn) sqrt(l_ww)
  double q_nn = 0.0;
  double l_ww = 0.0;
  bool holds = false;       // mixed <= bound + 1e-8
};

struct ProbeStep {
  double eps = 0.0;
  AmbientPoint interior;
  std::vector<ComplexVector> null_basis;
  std::vector<double> levi_eigenvalues;
  double angle = 0.0;                  // radians in [0, pi/2]
  std::optional<double> q_mixed;       // |Q(n, w_e-bar)| for the nearest null vector
};

struct ProbeTrace {
  AmbientPoint point;
  ComplexVector direction;
  std::vector<ProbeStep> steps;        // eps strictly decreasing
};

WeinstockVerdict weinstock_form(const DefiningFunction& domain, const AmbientPoint& p, double eps,
                                double tol = 1e-6);
WeinstockVerdict weinstock_form(const ComplexBoundaryFrame& frame, double eps, double tol = 1e-6);

/// Samples are processed in parallel (see set_max_threads); the result order
/// is (sample index, eps) regardless of scheduling.
WeinstockSweep epsilon_sweep(const DefiningFunction& domain, const std::vector<double>& eps_grid,
                             int sample_count, std::uint64_t seed, double tol = 1e-6);

double mixed_term(const DefiningFunction& domain, const AmbientPoint& p, const ComplexVector& w);
double mixed_term(const ComplexBoundaryFrame& frame, const ComplexVector& w);

CommutatorResult commutator_check(const DefiningFunction& domain, const AmbientPoint& p,
                                  const ComplexVector& w);
CommutatorResult commutator_check(const DefiningFunction& domain, const ComplexBoundaryFrame& frame,
                                  const ComplexVector& w);

DerivativeComparison normal_levi_derivative(const DefiningFunction& domain, const AmbientPoint& p,
                                            const ComplexVector& w);
DerivativeComparison normal_levi_derivative(const DefiningFunction& domain,
                                            const ComplexBoundaryFrame& frame,
                                            const ComplexVector& w);

std::vector<NullDirectionNorms> eq9_check(const DefiningFunction& domain, const AmbientPoint& p,
                                          double tol_rel = kDefaultNullTolerance);
std::vector<NullDirectionNorms> eq9_check(const ComplexBoundaryFrame& frame,
                                          const NullSpaceResult& null);

CauchySchwarzChain cauchy_schwarz_chain(const DefiningFunction& domain, const AmbientPoint& p,
                                        const ComplexVector& w, double eps);

ProbeTrace theorem2_probe(const DefiningFunction& domain, const AmbientPoint& p,
                          const ComplexVector& w, const std::vector<double>& eps_sequence,
                          double tol_rel = kDefaultNullTolerance);

/// Throws InvalidDirection when |sum_j rho_j w_j| > 1e-8 |w|.
void require_tangent(const ComplexBoundaryFrame& frame, const ComplexVector& w);

/// Worker cap for suite fan-out; 0 means hardware concurrency. Initialized
/// from LEVI_SCOPE_THREADS.
void set_max_threads(unsigned threads);
unsigned max_threads();

}  // namespace leviscope

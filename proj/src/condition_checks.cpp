#include "leviscope/condition_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "leviscope/error.hpp"
#include "parallel.hpp"

namespace leviscope {

namespace {

constexpr double kTangentTolerance = 1e-8;
// Above the finite-difference noise of the distance Hessian.
constexpr double kFocalMargin = 1e-6;
constexpr double kCauchySchwarzSlack = 1e-8;

}  // namespace

void require_tangent(const ComplexBoundaryFrame& frame, const ComplexVector& w) {
  if (w.size() != frame.complex_normal.size()) {
    throw Error(ErrorCode::InvalidInput, "direction has wrong dimension");
  }
  const double pairing = std::abs(frame.dbar_pairing(w));
  if (pairing > kTangentTolerance * std::max(1.0, w.norm())) {
    std::ostringstream msg;
    msg << "direction is not complex tangent: |sum rho_j w_j| = " << pairing;
    throw Error(ErrorCode::InvalidDirection, msg.str());
  }
}

double WeinstockVerdict::quadratic_value(const ComplexVector& w) const {
  const RealVector omega = realify(w);
  return omega.dot(matrix * omega);
}

WeinstockVerdict weinstock_form(const ComplexBoundaryFrame& frame, double eps, double tol) {
  const RealMatrix& h = frame.jet.hessian.matrix();
  const auto dim = h.rows();
  const Eigen::SelfAdjointEigenSolver<RealMatrix> curvatures(h);
  const double worst = (1.0 + eps * curvatures.eigenvalues().array()).minCoeff();
  if (worst <= kFocalMargin) {
    std::ostringstream msg;
    msg << "weinstock_form: 1 + eps H is singular or indefinite at eps = " << eps
        << " (beyond the focal distance)";
    throw Error(ErrorCode::CurvatureLimit, msg.str());
  }
  const RealMatrix shifted = RealMatrix::Identity(dim, dim) + eps * h;
  // H (1 + eH)^{-1}; H and (1 + eH)^{-1} commute, so the product is symmetric.
  const RealMatrix transported = shifted.transpose().partialPivLu().solve(h.transpose()).transpose();
  const SymmetricRealForm h_eps(transported, frame.point);
  const RealMatrix j = complex_structure(frame.point.dimension());

  WeinstockVerdict out;
  out.point = frame.point;
  out.eps = eps;
  out.matrix = h_eps.matrix() + j.transpose() * h_eps.matrix() * j;
  out.tangent_basis = frame.tangent_basis;
  if (frame.tangent_basis.empty()) {
    out.restricted = HermitianForm(ComplexMatrix(0, 0), frame.point);
    out.lambda_min = 0.0;
    out.psd = true;
    return out;
  }
  out.restricted = restrict_form(levi_from_real_hessian(h_eps).scaled(4.0), frame.tangent_basis);
  out.lambda_min = eigen_analysis(out.restricted, 0.0).eigenvalues.front();
  out.psd = out.lambda_min >= -tol;
  return out;
}

WeinstockVerdict weinstock_form(const DefiningFunction& domain, const AmbientPoint& p, double eps,
                                double tol) {
  return weinstock_form(boundary_frame(domain, p), eps, tol);
}

WeinstockSweep epsilon_sweep(const DefiningFunction& domain, const std::vector<double>& eps_grid,
                             int sample_count, std::uint64_t seed, double tol) {
  WeinstockSweep sweep;
  sweep.samples = domain.boundary_sample(sample_count, seed);
  const std::size_t per_sample = eps_grid.size();
  sweep.entries.resize(sweep.samples.size() * per_sample);

  detail::parallel_for(sweep.samples.size(), [&](std::size_t s) {
    std::optional<ComplexBoundaryFrame> frame;
    std::string frame_error;
    try {
      frame = boundary_frame(domain, sweep.samples[s]);
    } catch (const Error& e) {
      frame_error = e.what();
    }
    for (std::size_t k = 0; k < per_sample; ++k) {
      WeinstockSweep::Entry& entry = sweep.entries[s * per_sample + k];
      entry.sample = static_cast<int>(s);
      entry.eps = eps_grid[k];
      if (!frame) {
        entry.error = frame_error;
        continue;
      }
      try {
        entry.verdict = weinstock_form(*frame, eps_grid[k], tol);
      } catch (const Error& e) {
        entry.error = e.what();
      }
    }
  });

  std::vector<double> sorted = eps_grid;
  std::sort(sorted.begin(), sorted.end());
  for (double eps : sorted) {
    const bool all_psd = std::all_of(sweep.entries.begin(), sweep.entries.end(), [&](const auto& e) {
      return e.eps != eps || (e.verdict && e.verdict->psd);
    });
    if (!all_psd) break;
    sweep.eps_star = eps;
  }
  return sweep;
}

double mixed_term(const ComplexBoundaryFrame& frame, const ComplexVector& w) {
  require_tangent(frame, w);
  return std::abs(frame.levi.evaluate(frame.complex_normal, w));
}

double mixed_term(const DefiningFunction& domain, const AmbientPoint& p, const ComplexVector& w) {
  return mixed_term(boundary_frame(domain, p), w);
}

CommutatorResult commutator_check(const DefiningFunction& domain, const ComplexBoundaryFrame& frame,
                                  const ComplexVector& w) {
  require_tangent(frame, w);
  CommutatorResult out;
  out.rhs = -0.5 * frame.levi.evaluate(frame.complex_normal, w);
  const double size = w.norm();
  if (size == 0.0) {
    out.lhs = 0.0;
    return out;
  }
  const RealVector omega = realify(w) / size;
  const RealVector j_omega = apply_j(omega);
  const RealVector& z = frame.point.coords();
  const double h = domain.fd_step();
  // Directional derivatives of the complexified unit normal n_j = 2 d rho / d zbar_j.
  auto derivative = [&](const RealVector& v) -> ComplexVector {
    return complexify((distance_gradient(domain, z + h * v) - distance_gradient(domain, z - h * v)) /
                      (2.0 * h)) * size;
  };
  const ComplexVector d_omega = derivative(omega);
  const ComplexVector d_j_omega = derivative(j_omega);
  // Zbar f = (D_omega f + i D_{J omega} f) / 2 for Zbar = sum conj(w_k) d/dzbar_k, so
  // Zbar(d rho / d zbar_j) = (D_omega n_j + i D_{J omega} n_j) / 4, and
  // d rho / d z_j = conj(n_j) / 2.
  const ComplexVector zbar_rho_zbar = 0.25 * (d_omega + Complex(0.0, 1.0) * d_j_omega);
  const ComplexVector rho_z = 0.5 * frame.complex_normal.conjugate();
  out.lhs = (zbar_rho_zbar.transpose() * rho_z)(0, 0);
  out.error = std::abs(out.lhs - out.rhs);
  return out;
}

CommutatorResult commutator_check(const DefiningFunction& domain, const AmbientPoint& p,
                                  const ComplexVector& w) {
  return commutator_check(domain, boundary_frame(domain, p), w);
}

DerivativeComparison normal_levi_derivative(const DefiningFunction& domain,
                                            const ComplexBoundaryFrame& frame,
                                            const ComplexVector& w) {
  require_tangent(frame, w);
  DerivativeComparison out;
  out.point = frame.point;
  out.direction = w;
  out.step = 1e-3 * domain.diameter();
  const RealVector& normal = frame.jet.gradient;
  const RealVector& p = frame.point.coords();
  const double forward =
      level_set_frame(domain, AmbientPoint(p + out.step * normal)).levi.quadratic(w);
  const double backward =
      level_set_frame(domain, AmbientPoint(p - out.step * normal)).levi.quadratic(w);
  out.fd_derivative = (forward - backward) / (2.0 * out.step);
  const RealMatrix& h = frame.jet.hessian.matrix();
  const RealVector omega = realify(w);
  out.closed_form = -0.25 * ((h * omega).squaredNorm() + (h * apply_j(omega)).squaredNorm());
  out.discrepancy = std::abs(out.fd_derivative - out.closed_form);
  return out;
}

DerivativeComparison normal_levi_derivative(const DefiningFunction& domain, const AmbientPoint& p,
                                            const ComplexVector& w) {
  return normal_levi_derivative(domain, boundary_frame(domain, p), w);
}

std::vector<NullDirectionNorms> eq9_check(const ComplexBoundaryFrame& frame,
                                          const NullSpaceResult& null) {
  std::vector<NullDirectionNorms> out;
  const RealMatrix& h = frame.jet.hessian.matrix();
  for (const ComplexVector& w : null.basis) {
    const RealVector omega = realify(w);
    out.push_back({w, (h * omega).norm(), (h * apply_j(omega)).norm()});
  }
  return out;
}

std::vector<NullDirectionNorms> eq9_check(const DefiningFunction& domain, const AmbientPoint& p,
                                          double tol_rel) {
  const ComplexBoundaryFrame frame = boundary_frame(domain, p);
  return eq9_check(frame, null_space(frame, tol_rel));
}

CauchySchwarzChain cauchy_schwarz_chain(const DefiningFunction& domain, const AmbientPoint& p,
                                        const ComplexVector& w, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidInput, "cauchy_schwarz_chain: eps must be > 0");
  const ComplexBoundaryFrame boundary = boundary_frame(domain, p);
  require_tangent(boundary, w);
  const AmbientPoint z = normal_transport(domain, p, -eps);
  const ComplexBoundaryFrame interior = level_set_frame(domain, z);
  const HermitianForm q = q_form(interior, domain);
  const ComplexVector& n = boundary.complex_normal;

  CauchySchwarzChain out;
  out.eps = eps;
  out.mixed = std::abs(interior.levi.evaluate(n, w));
  out.q_mixed = std::abs(q.evaluate(n, w));
  out.q_nn = q.quadratic(n);
  out.l_ww = interior.levi.quadratic(w);
  out.bound = 2.0 * std::sqrt(std::max(0.0, out.q_nn)) * std::sqrt(std::max(0.0, out.l_ww));
  out.holds = out.mixed <= out.bound + kCauchySchwarzSlack;
  return out;
}

ProbeTrace theorem2_probe(const DefiningFunction& domain, const AmbientPoint& p,
                          const ComplexVector& w, const std::vector<double>& eps_sequence,
                          double tol_rel) {
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0) || (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))) {
      throw Error(ErrorCode::InvalidInput,
                  "theorem2_probe: eps sequence must be positive and strictly decreasing");
    }
  }
  const ComplexBoundaryFrame boundary = boundary_frame(domain, p);
  require_tangent(boundary, w);
  ProbeTrace trace;
  trace.point = p;
  trace.direction = w;
  for (double eps : eps_sequence) {
    ProbeStep step;
    step.eps = eps;
    step.interior = normal_transport(domain, p, -eps);
    const ComplexBoundaryFrame frame = level_set_frame(domain, step.interior);
    const NullSpaceResult null = null_space(frame, tol_rel);
    step.null_basis = null.basis;
    step.levi_eigenvalues = null.levi_eigenvalues;
    step.angle = subspace_angle(w, null.basis);
    if (!null.basis.empty()) {
      ComplexVector nearest = ComplexVector::Zero(w.size());
      for (const ComplexVector& q : null.basis) nearest += inner(w, q) * q;
      if (nearest.norm() > 0.0) {
        nearest /= nearest.norm();
        step.q_mixed = std::abs(q_form(frame, domain).evaluate(frame.complex_normal, nearest));
      }
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace leviscope

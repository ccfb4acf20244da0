#pragma once

// Closed-form defining functions for the test domains. Each entry is a smooth
// function rho~ with rho~ < 0 inside, = 0 on the boundary and > 0 outside,
// evaluated together with its exact gradient and Hessian.
//
// Entries are addressed by string ids of the form
//   name(:key=value(,key=value)*)?
// e.g. "ball:R=1", "egg2m:m=2,n=2", "ellipsoid:a1=1,a2=1.5", "worm:a=0.5".

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leviscope/jet.hpp"
#include "leviscope/linalg.hpp"

namespace leviscope {

using Rng = std::mt19937_64;

struct Evaluation {
  double value = 0.0;
  RealVector gradient;
  SymmetricRealForm hessian;
};

struct SamplingStats {
  int requested = 0;
  int discarded = 0;
};

class DefiningFunction {
 public:
  using Formula = std::function<Jet(std::span<const Jet>)>;
  using PointSampler = std::function<RealVector(Rng&)>;
  using Guard = std::function<void(const RealVector&)>;

  struct Parts {
    std::string name;
    int n = 0;
    std::map<std::string, double> params;
    Formula formula;
    bool is_convex = false;
    bool is_pseudoconvex = false;
    double collar_width = 0.0;
    double diameter = 0.0;
    // Interior point w.r.t. which the domain is star-shaped; used to seed
    // boundary samples by bisection along random rays when no custom
    // sampler is given.
    std::optional<RealVector> center;
    PointSampler rough_boundary;
    Guard guard;
    std::optional<std::string> weak_locus;
    PointSampler weak_locus_point;
  };

  explicit DefiningFunction(Parts parts);

  const std::string& name() const noexcept { return parts_.name; }
  std::string id() const;
  int dimension() const noexcept { return parts_.n; }
  const std::map<std::string, double>& params() const noexcept { return parts_.params; }
  bool is_convex() const noexcept { return parts_.is_convex; }
  bool is_pseudoconvex() const noexcept { return parts_.is_pseudoconvex; }
  double collar_width() const noexcept { return parts_.collar_width; }
  double diameter() const noexcept { return parts_.diameter; }
  /// Default central-difference step for distance Hessians.
  double fd_step() const noexcept { return 1e-4 * parts_.diameter; }
  const std::optional<std::string>& weak_locus() const noexcept { return parts_.weak_locus; }
  const Parts& parts() const noexcept { return parts_; }

  Evaluation evaluate(const AmbientPoint& z) const;
  double value(const RealVector& z) const;

  /// Newton iteration p <- p - rho~(p) grad / |grad|^2. Empty when it fails to
  /// reach |rho~| <= 1e-11 within 50 steps or leaves the smooth region.
  std::optional<RealVector> project_to_boundary(RealVector start) const;

  std::vector<AmbientPoint> boundary_sample(int count, std::uint64_t seed,
                                            SamplingStats* stats = nullptr) const;
  std::vector<AmbientPoint> weak_locus_sample(int count, std::uint64_t seed) const;

 private:
  void check_point(const RealVector& z) const;
  RealVector rough_boundary_point(Rng& rng) const;

  Parts parts_;
};

namespace zoo {

DefiningFunction ball(double radius, int n);
DefiningFunction ellipsoid(const std::vector<double>& axes);
/// |z_1|^2 + ... + |z_{n-1}|^2 + |z_n|^{2m} - 1.
DefiningFunction egg2m(int m, int n);
/// -Re z_1 + K max(|z - c|^2 - 1, 0)^4 with c = (1/2, 0, ...): flat face on Re z_1 = 0.
DefiningFunction halfspace_cap(int n);
/// |z|^2 - 1 + delta Re(z_1^2).
DefiningFunction perturbed_ball(double delta, int n);
/// |z_1 + exp(i log|z_2|^2)|^2 - 1 + phi(log|z_2|^2) with phi vanishing on |t| <= a.
DefiningFunction worm(double window_half_width);

/// rho~(U^* z): the domain moved by the unitary U.
DefiningFunction rotated(const DefiningFunction& domain, const ComplexMatrix& unitary);

struct CutoffValue {
  double value, first, second;
};
/// Worm cutoff phi(t) = M sigma(|t| - a)^3 with derivatives in t.
CutoffValue worm_cutoff(double t, double window_half_width);
inline constexpr double kWormCutoffScale = 2.0;   // M
inline constexpr double kWormRampLength = 1.0;    // s0

/// Parses an id of the form name(:key=value(,key=value)*)?.
DefiningFunction parse(std::string_view id);
std::vector<std::string> names();

}  // namespace zoo

/// Real 2n x 2n matrix of a complex n x n matrix under the interleaved layout.
RealMatrix realify_matrix(const ComplexMatrix& a);

}  // namespace leviscope

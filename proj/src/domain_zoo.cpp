#include "leviscope/domain_zoo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "leviscope/error.hpp"

namespace leviscope {

namespace {

constexpr int kProjectionIterations = 50;
constexpr double kProjectionTolerance = 1e-11;

std::vector<Jet> make_variables(const RealVector& z) {
  const int vars = static_cast<int>(z.size());
  std::vector<Jet> xs;
  xs.reserve(z.size());
  for (int i = 0; i < vars; ++i) xs.push_back(Jet::variable(z[i], i, vars));
  return xs;
}

RealVector random_unit(Rng& rng, int size) {
  std::normal_distribution<double> normal;
  RealVector v(size);
  do {
    for (int i = 0; i < size; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Rng sample_rng(std::uint64_t seed, int index, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void check_dimension(int n) {
  if (n < 1 || 2 * n > kMaxJetVars) {
    throw Error(ErrorCode::InvalidInput, "zoo: dimension n must be in [1, 4]");
  }
}

// sum_j (x_j - c_j)^2 over a range of coordinates.
Jet squared_norm(std::span<const Jet> xs, std::size_t first, std::size_t last) {
  Jet acc(0.0, xs.front().vars());
  for (std::size_t i = first; i < last; ++i) acc += square(xs[i]);
  return acc;
}

}  // namespace

RealMatrix realify_matrix(const ComplexMatrix& a) {
  RealMatrix r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Complex c = a(j, k);
      r(2 * j, 2 * k) = c.real();
      r(2 * j, 2 * k + 1) = -c.imag();
      r(2 * j + 1, 2 * k) = c.imag();
      r(2 * j + 1, 2 * k + 1) = c.real();
    }
  }
  return r;
}

DefiningFunction::DefiningFunction(Parts parts) : parts_(std::move(parts)) {
  check_dimension(parts_.n);
  if (!parts_.formula) throw Error(ErrorCode::InvalidInput, "zoo: missing formula");
  if (!parts_.center && !parts_.rough_boundary) {
    throw Error(ErrorCode::InvalidInput, "zoo: entry needs a center or a boundary sampler");
  }
}

std::string DefiningFunction::id() const {
  std::string out = parts_.name;
  char sep = ':';
  for (const auto& [key, value] : parts_.params) {
    out += sep;
    out += key + "=" + format_number(value);
    sep = ',';
  }
  return out;
}

void DefiningFunction::check_point(const RealVector& z) const {
  if (z.size() != 2 * parts_.n) {
    throw Error(ErrorCode::InvalidInput, "evaluate: point has wrong dimension for " + id());
  }
  if (!z.allFinite()) throw Error(ErrorCode::InvalidInput, "evaluate: non-finite point");
  if (parts_.guard) parts_.guard(z);
}

Evaluation DefiningFunction::evaluate(const AmbientPoint& z) const {
  check_point(z.coords());
  const std::vector<Jet> xs = make_variables(z.coords());
  const Jet rho = parts_.formula(xs);
  return Evaluation{rho.value(), RealVector(rho.gradient()),
                    SymmetricRealForm(RealMatrix(rho.hessian()), z)};
}

double DefiningFunction::value(const RealVector& z) const {
  return evaluate(AmbientPoint(z)).value;
}

std::optional<RealVector> DefiningFunction::project_to_boundary(RealVector p) const {
  try {
    for (int it = 0; it <= kProjectionIterations; ++it) {
      const Evaluation e = evaluate(AmbientPoint(p));
      if (std::abs(e.value) <= 1e-14) return p;
      if (it == kProjectionIterations) {
        return std::abs(e.value) <= kProjectionTolerance ? std::optional(p) : std::nullopt;
      }
      const double g2 = e.gradient.squaredNorm();
      if (g2 == 0.0) return std::nullopt;
      const RealVector step = (e.value / g2) * e.gradient;
      p -= step;
      if (step.norm() <= 1e-16 * std::max(1.0, p.norm())) {
        const double v = value(p);
        return std::abs(v) <= kProjectionTolerance ? std::optional(p) : std::nullopt;
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

RealVector DefiningFunction::rough_boundary_point(Rng& rng) const {
  if (parts_.rough_boundary) return parts_.rough_boundary(rng);
  const RealVector& c = *parts_.center;
  const RealVector dir = random_unit(rng, 2 * parts_.n);
  double lo = 0.0;
  double hi = parts_.diameter;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(c + mid * dir) < 0.0 ? lo : hi) = mid;
  }
  return c + 0.5 * (lo + hi) * dir;
}

std::vector<AmbientPoint> DefiningFunction::boundary_sample(int count, std::uint64_t seed,
                                                            SamplingStats* stats) const {
  if (count < 1) throw Error(ErrorCode::InvalidInput, "boundary_sample: count must be >= 1");
  std::vector<AmbientPoint> out;
  int discarded = 0;
  for (int i = 0; i < count; ++i) {
    Rng rng = sample_rng(seed, i, 0x626f756eULL);
    const RealVector rough = rough_boundary_point(rng);
    const RealVector dir = random_unit(rng, 2 * parts_.n);
    const double offset = uniform(rng, -0.5, 0.5) * parts_.collar_width;
    if (auto p = project_to_boundary(rough + offset * dir)) {
      out.emplace_back(std::move(*p));
    } else {
      ++discarded;
    }
  }
  if (stats) *stats = SamplingStats{count, discarded};
  if (out.empty()) {
    throw Error(ErrorCode::SamplingFailure, "boundary_sample: every sample failed for " + id());
  }
  return out;
}

std::vector<AmbientPoint> DefiningFunction::weak_locus_sample(int count,
                                                              std::uint64_t seed) const {
  if (!parts_.weak_locus_point) {
    throw Error(ErrorCode::UnsupportedOperation,
                "weak_locus_sample: " + id() + " declares no weakly pseudoconvex locus");
  }
  if (count < 1) throw Error(ErrorCode::InvalidInput, "weak_locus_sample: count must be >= 1");
  std::vector<AmbientPoint> out;
  for (int i = 0; i < count; ++i) {
    Rng rng = sample_rng(seed, i, 0x7765616bULL);
    RealVector p = parts_.weak_locus_point(rng);
    if (std::abs(value(p)) > 1e-10) {
      throw Error(ErrorCode::SamplingFailure, "weak_locus_sample: locus point off the boundary");
    }
    out.emplace_back(std::move(p));
  }
  return out;
}

namespace zoo {

DefiningFunction ball(double radius, int n) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidInput, "ball: R must be positive");
  DefiningFunction::Parts parts;
  parts.name = "ball";
  parts.n = n;
  parts.params = {{"R", radius}, {"n", n}};
  parts.formula = [n, radius](std::span<const Jet> xs) {
    return squared_norm(xs, 0, 2 * static_cast<std::size_t>(n)) - radius * radius;
  };
  parts.is_convex = true;
  parts.is_pseudoconvex = true;
  parts.collar_width = 0.3 * radius;
  parts.diameter = 2.0 * radius;
  parts.center = RealVector::Zero(2 * n);
  return DefiningFunction(std::move(parts));
}

DefiningFunction ellipsoid(const std::vector<double>& axes) {
  const int n = static_cast<int>(axes.size());
  check_dimension(n);
  for (double a : axes) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "ellipsoid: axes must be positive");
  }
  DefiningFunction::Parts parts;
  parts.name = "ellipsoid";
  parts.n = n;
  for (int j = 0; j < n; ++j) parts.params["a" + std::to_string(j + 1)] = axes[j];
  parts.formula = [axes](std::span<const Jet> xs) {
    Jet acc(-1.0, xs.front().vars());
    for (std::size_t j = 0; j < axes.size(); ++j) {
      acc += (square(xs[2 * j]) + square(xs[2 * j + 1])) * (1.0 / (axes[j] * axes[j]));
    }
    return acc;
  };
  const double lo = *std::min_element(axes.begin(), axes.end());
  const double hi = *std::max_element(axes.begin(), axes.end());
  parts.is_convex = true;
  parts.is_pseudoconvex = true;
  // Smallest radius of curvature is lo^2 / hi.
  parts.collar_width = 0.3 * std::min(lo, lo * lo / hi);
  parts.diameter = 2.0 * hi;
  parts.center = RealVector::Zero(2 * n);
  return DefiningFunction(std::move(parts));
}

DefiningFunction egg2m(int m, int n) {
  if (m < 1) throw Error(ErrorCode::InvalidInput, "egg2m: m must be a positive integer");
  check_dimension(n);
  DefiningFunction::Parts parts;
  parts.name = "egg2m";
  parts.n = n;
  parts.params = {{"m", m}, {"n", n}};
  parts.formula = [m, n](std::span<const Jet> xs) {
    const auto last = 2 * static_cast<std::size_t>(n - 1);
    Jet acc = squared_norm(xs, 0, last) - 1.0;
    return acc + pow(square(xs[last]) + square(xs[last + 1]), m);
  };
  parts.is_convex = true;
  parts.is_pseudoconvex = true;
  parts.collar_width = 0.25;
  // max |z|^2 on the boundary is max_s (1 - s^m + s), s = |z_n|^2 in [0, 1].
  const double s = m > 1 ? std::pow(1.0 / m, 1.0 / (m - 1)) : 0.0;
  parts.diameter = 2.0 * std::sqrt(1.0 - std::pow(s, m) + s);
  parts.center = RealVector::Zero(2 * n);
  if (m >= 2 && n >= 2) {
    parts.weak_locus = "{z_n = 0} on the boundary";
    parts.weak_locus_point = [n](Rng& rng) {
      RealVector p = RealVector::Zero(2 * n);
      p.head(2 * (n - 1)) = random_unit(rng, 2 * (n - 1));
      return p;
    };
  }
  return DefiningFunction(std::move(parts));
}

DefiningFunction halfspace_cap(int n) {
  constexpr double kStiffness = 1.0;
  DefiningFunction::Parts parts;
  parts.name = "halfspace_cap";
  parts.n = n;
  parts.params = {{"n", n}};
  parts.formula = [n](std::span<const Jet> xs) {
    Jet s = square(xs[0] - 0.5) + squared_norm(xs, 1, 2 * static_cast<std::size_t>(n)) - 1.0;
    Jet rho = -xs[0];
    // max(s, 0)^4 has vanishing first and second derivatives at s = 0.
    if (s.value() > 0.0) rho += kStiffness * pow(s, 4);
    return rho;
  };
  parts.is_convex = true;
  parts.is_pseudoconvex = true;
  parts.collar_width = 0.15;
  parts.diameter = 4.0;
  RealVector center = RealVector::Zero(2 * n);
  center[0] = 0.8;
  parts.center = center;
  parts.weak_locus = "flat face {Re z_1 = 0, |z - c| < 1}";
  parts.weak_locus_point = [n](Rng& rng) {
    RealVector p = RealVector::Zero(2 * n);
    RealVector rest = random_unit(rng, 2 * n - 1) * (0.5 * uniform(rng, 0.0, 1.0));
    p.tail(2 * n - 1) = rest;
    return p;
  };
  return DefiningFunction(std::move(parts));
}

DefiningFunction perturbed_ball(double delta, int n) {
  if (!(std::abs(delta) < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "perturbed_ball: |delta| must be < 1");
  }
  DefiningFunction::Parts parts;
  parts.name = "perturbed_ball";
  parts.n = n;
  parts.params = {{"delta", delta}, {"n", n}};
  parts.formula = [n, delta](std::span<const Jet> xs) {
    Jet rho = squared_norm(xs, 0, 2 * static_cast<std::size_t>(n)) - 1.0;
    return rho + delta * (square(xs[0]) - square(xs[1]));
  };
  // Real ellipsoid with semi-axes 1/sqrt(1 +- delta): convex.
  const double lo = 1.0 / std::sqrt(1.0 + std::abs(delta));
  const double hi = 1.0 / std::sqrt(1.0 - std::abs(delta));
  parts.is_convex = true;
  parts.is_pseudoconvex = true;
  parts.collar_width = 0.3 * std::min(lo, lo * lo / hi);
  parts.diameter = 2.0 * hi;
  parts.center = RealVector::Zero(2 * n);
  return DefiningFunction(std::move(parts));
}

CutoffValue worm_cutoff(double t, double a) {
  const double u = std::abs(t) - a;
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  double ramp, d_ramp, d2_ramp;
  if (u < kWormRampLength) {
    // Quintic 6x^3 - 8x^4 + 3x^5: C^2 join of 0 and the identity.
    const double x = u / kWormRampLength;
    ramp = kWormRampLength * x * x * x * (6.0 - 8.0 * x + 3.0 * x * x);
    d_ramp = x * x * (18.0 - 32.0 * x + 15.0 * x * x);
    d2_ramp = 12.0 * x * (3.0 - 8.0 * x + 5.0 * x * x) / kWormRampLength;
  } else {
    ramp = u;
    d_ramp = 1.0;
    d2_ramp = 0.0;
  }
  const double m = kWormCutoffScale;
  const double sign = t < 0.0 ? -1.0 : 1.0;
  return {m * ramp * ramp * ramp, sign * 3.0 * m * ramp * ramp * d_ramp,
          m * (6.0 * ramp * d_ramp * d_ramp + 3.0 * ramp * ramp * d2_ramp)};
}

DefiningFunction worm(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "worm: a must be positive");
  DefiningFunction::Parts parts;
  parts.name = "worm";
  parts.n = 2;
  parts.params = {{"a", a}};
  parts.formula = [a](std::span<const Jet> xs) {
    const Jet t = log(square(xs[2]) + square(xs[3]));
    const CutoffValue phi = worm_cutoff(t.value(), a);
    Jet rho = square(xs[0] + cos(t)) + square(xs[1] + sin(t)) - 1.0;
    return rho + t.compose(phi.value, phi.first, phi.second);
  };
  parts.guard = [](const RealVector& z) {
    if (z[2] * z[2] + z[3] * z[3] < 1e-16) {
      throw Error(ErrorCode::DomainSingularity, "worm: defining function is singular at z2 = 0");
    }
  };
  // phi(t_max) = 1 bounds the slab of the boundary in t = log|z2|^2.
  double lo = a, hi = a + kWormRampLength;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (worm_cutoff(mid, a).value < 1.0 ? lo : hi) = mid;
  }
  const double t_max = lo;
  parts.is_convex = false;
  parts.is_pseudoconvex = true;
  // The boundary's smallest curvature radius is about 0.01 (rim of the
  // z1-discs where |z2| is smallest); half of it keeps feet unique.
  parts.collar_width = 0.005;
  parts.diameter = 2.0 * std::sqrt(4.0 + std::exp(t_max));
  parts.rough_boundary = [a, t_max](Rng& rng) {
    const double t = uniform(rng, -0.95 * t_max, 0.95 * t_max);
    const double arg2 = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double arg1 = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double radius = std::sqrt(std::max(0.0, 1.0 - worm_cutoff(t, a).value));
    RealVector p(4);
    p << -std::cos(t) + radius * std::cos(arg1), -std::sin(t) + radius * std::sin(arg1),
        std::exp(0.5 * t) * std::cos(arg2), std::exp(0.5 * t) * std::sin(arg2);
    return p;
  };
  parts.weak_locus = "{z1 = 0, |log|z2|^2| <= a}";
  parts.weak_locus_point = [a](Rng& rng) {
    const double t = uniform(rng, -a, a);
    const double arg = uniform(rng, -std::numbers::pi, std::numbers::pi);
    RealVector p(4);
    p << 0.0, 0.0, std::exp(0.5 * t) * std::cos(arg), std::exp(0.5 * t) * std::sin(arg);
    return p;
  };
  return DefiningFunction(std::move(parts));
}

DefiningFunction rotated(const DefiningFunction& domain, const ComplexMatrix& unitary) {
  const int n = domain.dimension();
  if (unitary.rows() != n || unitary.cols() != n ||
      (unitary.adjoint() * unitary - ComplexMatrix::Identity(n, n)).norm() > 1e-12) {
    throw Error(ErrorCode::InvalidInput, "rotated: expected an n x n unitary matrix");
  }
  const RealMatrix forward = realify_matrix(unitary);
  const RealMatrix backward = forward.transpose();
  DefiningFunction::Parts parts = domain.parts();
  parts.name = "rotated_" + parts.name;
  const DefiningFunction::Formula inner = parts.formula;
  parts.formula = [inner, backward](std::span<const Jet> xs) {
    std::vector<Jet> ys;
    ys.reserve(xs.size());
    for (Eigen::Index i = 0; i < backward.rows(); ++i) {
      Jet y(0.0, xs.front().vars());
      for (Eigen::Index j = 0; j < backward.cols(); ++j) {
        if (backward(i, j) != 0.0) y += xs[j] * backward(i, j);
      }
      ys.push_back(std::move(y));
    }
    return inner(ys);
  };
  if (parts.guard) {
    parts.guard = [g = parts.guard, backward](const RealVector& z) { g(backward * z); };
  }
  if (parts.center) parts.center = forward * *parts.center;
  auto lift = [forward](DefiningFunction::PointSampler s) -> DefiningFunction::PointSampler {
    if (!s) return s;
    return [s, forward](Rng& rng) { return RealVector(forward * s(rng)); };
  };
  parts.rough_boundary = lift(parts.rough_boundary);
  parts.weak_locus_point = lift(parts.weak_locus_point);
  return DefiningFunction(std::move(parts));
}

namespace {

struct ParsedId {
  std::string name;
  std::map<std::string, double> params;
};

ParsedId split_id(std::string_view id) {
  ParsedId out;
  const auto colon = id.find(':');
  out.name = std::string(id.substr(0, colon));
  if (out.name.empty()) throw Error(ErrorCode::Usage, "domain id: empty name");
  if (colon == std::string_view::npos) return out;
  std::string_view rest = id.substr(colon + 1);
  if (rest.empty()) throw Error(ErrorCode::Usage, "domain id: empty parameter list");
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw Error(ErrorCode::Usage, "domain id: malformed parameter '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    const std::string_view text = item.substr(eq + 1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw Error(ErrorCode::Usage, "domain id: bad number for '" + key + "'");
    }
    if (!out.params.emplace(key, value).second) {
      throw Error(ErrorCode::Usage, "domain id: duplicate key '" + key + "'");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

class ParamReader {
 public:
  explicit ParamReader(ParsedId parsed) : parsed_(std::move(parsed)) {}

  double real(const std::string& key, double fallback) {
    used_.insert(key);
    auto it = parsed_.params.find(key);
    return it == parsed_.params.end() ? fallback : it->second;
  }

  int integer(const std::string& key, int fallback) {
    const double v = real(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e6) {
      throw Error(ErrorCode::Usage, "domain id: '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
  }

  bool has(const std::string& key) const { return parsed_.params.count(key) != 0; }

  void finish() const {
    for (const auto& [key, value] : parsed_.params) {
      if (!used_.count(key)) {
        throw Error(ErrorCode::Usage,
                    "domain id: unknown key '" + key + "' for '" + parsed_.name + "'");
      }
    }
  }

 private:
  ParsedId parsed_;
  std::set<std::string> used_;
};

}  // namespace

std::vector<std::string> names() {
  return {"ball", "egg2m", "ellipsoid", "halfspace_cap", "perturbed_ball", "worm"};
}

DefiningFunction parse(std::string_view id) {
  ParsedId parsed = split_id(id);
  const std::string name = parsed.name;
  ParamReader params(std::move(parsed));
  auto build = [&]() -> DefiningFunction {
    if (name == "ball") {
      const double r = params.real("R", 1.0);
      return ball(r, params.integer("n", 2));
    }
    if (name == "ellipsoid") {
      std::vector<double> axes;
      for (int j = 1; j <= kMaxJetVars / 2 && params.has("a" + std::to_string(j)); ++j) {
        axes.push_back(params.real("a" + std::to_string(j), 1.0));
      }
      if (axes.empty()) axes = {1.0, 1.0};
      return ellipsoid(axes);
    }
    if (name == "egg2m") {
      const int m = params.integer("m", 2);
      return egg2m(m, params.integer("n", 2));
    }
    if (name == "halfspace_cap") return halfspace_cap(params.integer("n", 2));
    if (name == "perturbed_ball") {
      const double delta = params.real("delta", 0.1);
      return perturbed_ball(delta, params.integer("n", 2));
    }
    if (name == "worm") return worm(params.real("a", 0.5));
    throw Error(ErrorCode::Usage, "domain id: unknown domain '" + name + "'");
  };
  try {
    DefiningFunction domain = build();
    params.finish();
    return domain;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) throw Error(ErrorCode::Usage, e.what());
    throw;
  }
}

}  // namespace zoo

}  // namespace leviscope

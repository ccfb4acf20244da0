#include "leviscope/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "leviscope/condition_checks.hpp"
#include "leviscope/domain_zoo.hpp"
#include "leviscope/error.hpp"
#include "leviscope/levi_geometry.hpp"
#include "parallel.hpp"

namespace leviscope {

namespace {

const std::vector<double> kDefaultWeinstockGrid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
const std::vector<double> kDefaultChainGrid = {0.01, 0.02, 0.04};
const std::vector<double> kDefaultProbeGrid = {0.01, 0.02, 0.05, 0.1};

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_tolerance(double v) {
  std::ostringstream out;
  out << std::setprecision(3) << v;
  return out.str();
}

OrderedJson complex_json(Complex c) {
  OrderedJson j = OrderedJson::object();
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

OrderedJson complex_vector_json(const ComplexVector& v) {
  OrderedJson arr = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_json(v[i]));
  return arr;
}

OrderedJson real_list_json(const std::vector<double>& v) {
  OrderedJson arr = OrderedJson::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

struct Context {
  const DefiningFunction* domain = nullptr;
  Suite suite = Suite::All;
  std::map<std::string, double> tol;
  std::vector<double> weinstock_grid;
  std::vector<double> chain_grid;  // ascending, inside the collar
  std::vector<double> probe_grid;  // descending, inside the collar
  std::uint64_t seed = 1;

  bool runs(Suite s) const { return suite == Suite::All || suite == s; }
  double t(const char* key) const { return tol.at(key); }
};

class RowSink {
 public:
  RowSink(int sample, std::string source, const AmbientPoint& p)
      : sample_(sample), source_(std::move(source)),
        point_(p.coords().data(), p.coords().data() + p.coords().size()) {}

  ReportRow& add(std::string check, std::optional<double> eps, bool hard) {
    ReportRow row;
    row.sample = sample_;
    row.source = source_;
    row.point = point_;
    row.eps = eps;
    row.check = std::move(check);
    row.hard = hard;
    row.verdict = "info";
    rows_.push_back(std::move(row));
    return rows_.back();
  }

  template <class Fn>
  void guarded(const std::string& check, std::optional<double> eps, bool hard, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      ReportRow& row = add(check, eps, hard);
      row.verdict = "error";
      row.error = std::string(to_string(e.code())) + ": " + e.what();
    }
  }

  std::vector<ReportRow> take() { return std::move(rows_); }

 private:
  int sample_;
  std::string source_;
  std::vector<double> point_;
  std::vector<ReportRow> rows_;
};

void judge(ReportRow& row, bool ok, double metric, std::string criterion) {
  row.verdict = ok ? "pass" : "fail";
  row.metric = metric;
  row.criterion = std::move(criterion);
}

ComplexVector random_tangent(const ComplexBoundaryFrame& frame, std::uint64_t seed, int sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sample), 0x74616e67u};
  Rng rng(seq);
  std::normal_distribution<double> normal;
  ComplexVector w = ComplexVector::Zero(frame.complex_normal.size());
  for (const ComplexVector& b : frame.tangent_basis) w += Complex(normal(rng), normal(rng)) * b;
  return w / w.norm();
}

void frames_rows(const Context& ctx, const ComplexBoundaryFrame& frame, RowSink& sink) {
  const DefiningFunction& domain = *ctx.domain;
  {
    ReportRow& row = sink.add("normalization", std::nullopt, true);
    const double dev = std::abs(frame.normalization - 1.0);
    row.values["four_sum_rho_z_sq"] = frame.normalization;
    judge(row, dev <= ctx.t("normalization"), dev,
          "|4 sum |rho_z|^2 - 1| <= " + format_tolerance(ctx.t("normalization")));
  }
  {
    ReportRow& row = sink.add("levi_tangent", std::nullopt, domain.is_pseudoconvex());
    const EigenAnalysis eig = eigen_analysis(frame.levi_tangent, 0.0);
    const double lambda_min = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    row.values["eigenvalues"] = real_list_json(eig.eigenvalues);
    row.values["lambda_min"] = lambda_min;
    row.values["class"] = to_string(classify(frame));
    judge(row, lambda_min >= -ctx.t("psd"), std::max(0.0, -lambda_min),
          "lambda_min >= -" + format_tolerance(ctx.t("psd")));
  }
  {
    ReportRow& row = sink.add("null_space", std::nullopt, false);
    const NullSpaceResult null = null_space(frame, ctx.t("null_rel"));
    row.values["dim"] = null.basis.size();
    row.values["threshold"] = null.tolerance;
    row.metric = static_cast<double>(null.basis.size());
  }
  const double depth = 0.5 * domain.collar_width();
  sink.guarded("q_form", depth, domain.is_pseudoconvex(), [&] {
    const AmbientPoint z(frame.point.coords() - depth * frame.jet.gradient);
    const HermitianForm q = q_form(domain, z);
    const double lambda_min = eigen_analysis(q, 0.0).eigenvalues.front();
    ReportRow& row = sink.add("q_form", depth, domain.is_pseudoconvex());
    row.values["depth"] = depth;
    row.values["lambda_min"] = lambda_min;
    judge(row, lambda_min >= -ctx.t("psd"), std::max(0.0, -lambda_min),
          "lambda_min(Q) >= -" + format_tolerance(ctx.t("psd")));
  });
  const double reach = std::min(0.1, 0.5 * domain.collar_width());
  const RealMatrix& h = frame.jet.hessian.matrix();
  const auto dim = h.rows();
  for (double eps : {-reach, -0.5 * reach, 0.5 * reach, reach}) {
    sink.guarded("riccati", eps, true, [&] {
      const AmbientPoint z = normal_transport(domain, frame.point, eps);
      const RealMatrix measured = distance_jet(domain, z).hessian.matrix();
      const RealMatrix shifted = RealMatrix::Identity(dim, dim) + eps * h;
      const RealMatrix predicted = shifted.transpose().partialPivLu().solve(h.transpose()).transpose();
      const double diff = (measured - predicted).norm();
      ReportRow& row = sink.add("riccati", eps, true);
      row.values["frobenius_error"] = diff;
      judge(row, diff <= ctx.t("riccati"), diff,
            "|H(p+en) - H(1+eH)^-1| <= " + format_tolerance(ctx.t("riccati")));
    });
  }
}

void weinstock_rows(const Context& ctx, const ComplexBoundaryFrame& frame, RowSink& sink) {
  const bool hard = ctx.domain->is_convex();
  for (double eps : ctx.weinstock_grid) {
    sink.guarded("weinstock", eps, hard, [&] {
      const WeinstockVerdict v = weinstock_form(frame, eps, ctx.t("psd"));
      ReportRow& row = sink.add("weinstock", eps, hard);
      row.values["lambda_min"] = v.lambda_min;
      row.values["psd"] = v.psd;
      judge(row, v.psd, std::max(0.0, -v.lambda_min),
            "lambda_min >= -" + format_tolerance(ctx.t("psd")));
    });
  }
}

void identity_rows(const Context& ctx, const ComplexBoundaryFrame& frame, int sample,
                   RowSink& sink) {
  const DefiningFunction& domain = *ctx.domain;
  if (!frame.tangent_basis.empty()) {
    const ComplexVector w = random_tangent(frame, ctx.seed, sample);
    sink.guarded("eq1", std::nullopt, true, [&] {
      const CommutatorResult c = commutator_check(domain, frame, w);
      ReportRow& row = sink.add("eq1", std::nullopt, true);
      row.values["direction"] = complex_vector_json(w);
      row.values["lhs"] = complex_json(c.lhs);
      row.values["rhs"] = complex_json(c.rhs);
      row.values["error"] = c.error;
      judge(row, c.error <= ctx.t("eq1"), c.error, "|lhs - rhs| <= " + format_tolerance(ctx.t("eq1")));
    });
    sink.guarded("eq3-8", std::nullopt, domain.is_convex(), [&] {
      const DerivativeComparison d = normal_levi_derivative(domain, frame, w);
      const double allowed = std::max(ctx.t("eq8_abs"), ctx.t("eq8_rel") * std::abs(d.closed_form));
      ReportRow& row = sink.add("eq3-8", std::nullopt, domain.is_convex());
      row.values["direction"] = complex_vector_json(w);
      row.values["fd_derivative"] = d.fd_derivative;
      row.values["closed_form"] = d.closed_form;
      row.values["discrepancy"] = d.discrepancy;
      judge(row, d.discrepancy <= allowed, d.discrepancy,
            "|fd - closed| <= max(" + format_tolerance(ctx.t("eq8_abs")) + ", " +
                format_tolerance(ctx.t("eq8_rel")) + "|closed|)");
    });
  }

  const NullSpaceResult null = null_space(frame, ctx.t("null_rel"));
  const bool convex = domain.is_convex();
  const std::vector<NullDirectionNorms> norms = eq9_check(frame, null);
  for (std::size_t k = 0; k < null.basis.size(); ++k) {
    const ComplexVector& w = null.basis[k];
    sink.guarded("eq2", std::nullopt, convex, [&] {
      const double mixed = mixed_term(frame, w);
      ReportRow& row = sink.add("eq2", std::nullopt, convex);
      row.values["null_index"] = k;
      row.values["direction"] = complex_vector_json(w);
      row.values["mixed"] = mixed;
      judge(row, mixed <= ctx.t("eq2"), mixed, "|L(n, w-bar)| <= " + format_tolerance(ctx.t("eq2")));
    });
    sink.guarded("eq3-null", std::nullopt, convex, [&] {
      const DerivativeComparison d = normal_levi_derivative(domain, frame, w);
      ReportRow& row = sink.add("eq3-null", std::nullopt, convex);
      row.values["null_index"] = k;
      row.values["fd_derivative"] = d.fd_derivative;
      row.values["closed_form"] = d.closed_form;
      judge(row, std::abs(d.fd_derivative) <= ctx.t("eq3_null"), std::abs(d.fd_derivative),
            "|d/de L(w, w-bar)| <= " + format_tolerance(ctx.t("eq3_null")));
    });
    {
      ReportRow& row = sink.add("eq9", std::nullopt, convex);
      row.values["null_index"] = k;
      row.values["h_omega"] = norms[k].hessian_norm;
      row.values["h_j_omega"] = norms[k].hessian_j_norm;
      const double worst = std::max(norms[k].hessian_norm, norms[k].hessian_j_norm);
      judge(row, worst <= ctx.t("eq9"), worst,
            "|H w|, |H J w| <= " + format_tolerance(ctx.t("eq9")));
    }
    for (double eps : ctx.chain_grid) {
      const bool hard = domain.is_pseudoconvex();
      sink.guarded("eq7", eps, hard, [&] {
        const CauchySchwarzChain c = cauchy_schwarz_chain(domain, frame.point, w, eps);
        ReportRow& row = sink.add("eq7", eps, hard);
        row.values["null_index"] = k;
        row.values["mixed"] = c.mixed;
        row.values["q_mixed"] = c.q_mixed;
        row.values["bound"] = c.bound;
        row.values["q_nn"] = c.q_nn;
        row.values["l_ww"] = c.l_ww;
        row.values["q_nn_times_eps"] = c.q_nn * eps;
        row.values["l_ww_over_eps_sq"] = c.l_ww / (eps * eps);
        judge(row, c.holds, std::max(0.0, c.mixed - c.bound),
              "|L(n, w-bar)| <= 2 sqrt(Q(n,n) L(w,w)) + " + format_tolerance(ctx.t("cs_slack")));
      });
    }
  }
}

void theorem2_rows(const Context& ctx, const ComplexBoundaryFrame& frame, RowSink& sink) {
  const DefiningFunction& domain = *ctx.domain;
  const bool hard = domain.is_convex();
  const NullSpaceResult null = null_space(frame, ctx.t("null_rel"));
  if (ctx.probe_grid.empty()) return;
  for (std::size_t k = 0; k < null.basis.size(); ++k) {
    sink.guarded("theorem2", std::nullopt, hard, [&] {
      const ProbeTrace trace =
          theorem2_probe(domain, frame.point, null.basis[k], ctx.probe_grid, ctx.t("null_rel"));
      double worst_increase = 0.0;
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ProbeStep& step = trace.steps[i];
        if (i > 0) worst_increase = std::max(worst_increase, step.angle - trace.steps[i - 1].angle);
        ReportRow& row = sink.add("theorem2", step.eps, hard);
        row.values["null_index"] = k;
        row.values["angle"] = step.angle;
        row.values["interior_null_dim"] = step.null_basis.size();
        if (step.q_mixed) {
          row.values["q_mixed"] = *step.q_mixed;
        } else {
          row.values["q_mixed"] = nullptr;
        }
        const bool ok = step.angle <= ctx.t("probe_angle") && step.q_mixed &&
                        *step.q_mixed <= ctx.t("probe_q");
        judge(row, ok, step.angle,
              "angle <= " + format_tolerance(ctx.t("probe_angle")) + " and |Q(n, w_e-bar)| <= " +
                  format_tolerance(ctx.t("probe_q")));
      }
      ReportRow& row = sink.add("theorem2-monotone", std::nullopt, hard);
      row.values["null_index"] = k;
      row.values["max_angle_increase"] = worst_increase;
      judge(row, worst_increase <= ctx.t("probe_monotone"), worst_increase,
            "angle non-increasing within " + format_tolerance(ctx.t("probe_monotone")));
    });
  }
}

std::vector<ReportRow> process_sample(const Context& ctx, int sample, const std::string& source,
                                      const AmbientPoint& p) {
  RowSink sink(sample, source, p);
  std::optional<ComplexBoundaryFrame> frame;
  sink.guarded("frame", std::nullopt, true, [&] { frame = boundary_frame(*ctx.domain, p); });
  if (!frame) return sink.take();
  if (ctx.runs(Suite::Frames)) frames_rows(ctx, *frame, sink);
  if (ctx.runs(Suite::WeinstockSweep)) weinstock_rows(ctx, *frame, sink);
  if (ctx.runs(Suite::Identities)) identity_rows(ctx, *frame, sample, sink);
  if (ctx.runs(Suite::Theorem2)) theorem2_rows(ctx, *frame, sink);
  return sink.take();
}

bool row_less(const ReportRow& a, const ReportRow& b) {
  if (a.sample != b.sample) return a.sample < b.sample;
  if (a.eps.has_value() != b.eps.has_value()) return !a.eps.has_value();
  if (a.eps && *a.eps != *b.eps) return *a.eps < *b.eps;
  return a.check < b.check;
}

OrderedJson row_json(const ReportRow& row, const std::string& domain) {
  OrderedJson j = OrderedJson::object();
  j["domain"] = domain;
  j["sample"] = row.sample;
  j["source"] = row.source;
  j["point"] = real_list_json(row.point);
  j["eps"] = row.eps ? OrderedJson(*row.eps) : OrderedJson(nullptr);
  j["check"] = row.check;
  j["values"] = row.values;
  j["verdict"] = row.verdict;
  j["hard"] = row.hard;
  j["error"] = row.error ? OrderedJson(*row.error) : OrderedJson(nullptr);
  j["provenance"] = "measured";
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Flattens a values object into (key, re, im, text) tuples.
void flatten(const std::string& key, const OrderedJson& v,
             std::vector<std::array<std::string, 4>>& out) {
  if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im")) {
    out.push_back({key, format_number(v["re"].get<double>()), format_number(v["im"].get<double>()), ""});
  } else if (v.is_object()) {
    for (const auto& [k, item] : v.items()) flatten(key.empty() ? k : key + "." + k, item, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(key + "[" + std::to_string(i) + "]", v[i], out);
  } else if (v.is_number()) {
    out.push_back({key, format_number(v.get<double>()), "0", ""});
  } else if (v.is_boolean()) {
    out.push_back({key, v.get<bool>() ? "1" : "0", "0", ""});
  } else if (v.is_string()) {
    out.push_back({key, "", "", v.get<std::string>()});
  } else {
    out.push_back({key, "", "", ""});
  }
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "frames") return Suite::Frames;
  if (name == "weinstock-sweep") return Suite::WeinstockSweep;
  if (name == "identities") return Suite::Identities;
  if (name == "theorem2") return Suite::Theorem2;
  if (name == "all") return Suite::All;
  throw Error(ErrorCode::Usage, "unknown suite '" + std::string(name) +
                                    "' (expected frames, weinstock-sweep, identities, theorem2, all)");
}

const char* to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::Frames: return "frames";
    case Suite::WeinstockSweep: return "weinstock-sweep";
    case Suite::Identities: return "identities";
    case Suite::Theorem2: return "theorem2";
    case Suite::All: return "all";
  }
  return "unknown";
}

std::vector<double> parse_eps_grid(std::string_view text) {
  auto number = [](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::Usage, "eps grid: bad number '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
      throw Error(ErrorCode::Usage, "eps grid: expected start:end:count");
    }
    const double start = number(text.substr(0, a));
    const double end = number(text.substr(a + 1, b - a - 1));
    const double count_value = number(text.substr(b + 1));
    if (count_value < 1 || count_value != std::floor(count_value) || count_value > 1e6) {
      throw Error(ErrorCode::Usage, "eps grid: count must be a positive integer");
    }
    const int count = static_cast<int>(count_value);
    if (count == 1) {
      if (start != end) throw Error(ErrorCode::Usage, "eps grid: count 1 needs start == end");
      grid.push_back(start);
    } else {
      for (int i = 0; i < count; ++i) {
        grid.push_back(i == count - 1 ? end : start + (end - start) * i / (count - 1));
      }
    }
  } else {
    std::string_view rest = text;
    while (true) {
      const auto comma = rest.find(',');
      grid.push_back(number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  for (double e : grid) {
    if (!(e > 0.0)) throw Error(ErrorCode::Usage, "eps grid: values must be strictly positive");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::map<std::string, double> default_tolerances() {
  return {
      {"cs_slack", 1e-8},    {"eq1", 1e-4},          {"eq2", 1e-4},
      {"eq3_null", 1e-4},    {"eq8_abs", 1e-3},      {"eq8_rel", 1e-2},
      {"eq9", 1e-4},         {"normalization", 1e-7}, {"null_rel", 1e-6},
      {"probe_angle", 1e-3}, {"probe_monotone", 1e-4}, {"probe_q", 1e-4},
      {"psd", 1e-6},         {"riccati", 5e-4},
  };
}

SweepReport run_suite(const SuiteConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const Suite suite = parse_suite(config.suite);
  const DefiningFunction domain = zoo::parse(config.domain);
  if (config.samples < 1) throw Error(ErrorCode::Usage, "samples must be >= 1");
  if (config.format != "json" && config.format != "csv") {
    throw Error(ErrorCode::Usage, "format must be json or csv");
  }

  SweepReport report;
  report.config = config;
  report.domain_id = domain.id();
  report.tolerances = default_tolerances();
  for (const auto& [key, value] : config.tolerances) {
    auto it = report.tolerances.find(key);
    if (it == report.tolerances.end()) throw Error(ErrorCode::Usage, "unknown tolerance key '" + key + "'");
    if (!(value >= 0.0)) throw Error(ErrorCode::Usage, "tolerance '" + key + "' must be >= 0");
    it->second = value;
  }
  if (config.eps) {
    for (double e : *config.eps) {
      if (!(e > 0.0)) throw Error(ErrorCode::Usage, "eps grid: values must be strictly positive");
    }
  }

  Context ctx;
  ctx.domain = &domain;
  ctx.suite = suite;
  ctx.tol = report.tolerances;
  ctx.seed = config.seed;
  ctx.weinstock_grid = config.eps.value_or(kDefaultWeinstockGrid);
  std::sort(ctx.weinstock_grid.begin(), ctx.weinstock_grid.end());
  std::vector<double> dropped;
  auto inside_collar = [&](std::vector<double> grid, bool record) {
    std::sort(grid.begin(), grid.end());
    std::vector<double> kept;
    for (double e : grid) {
      if (e < domain.collar_width()) {
        kept.push_back(e);
      } else if (record && std::find(dropped.begin(), dropped.end(), e) == dropped.end()) {
        dropped.push_back(e);
      }
    }
    return kept;
  };
  const bool chain = ctx.runs(Suite::Identities);
  const bool probe = ctx.runs(Suite::Theorem2);
  ctx.chain_grid = inside_collar(config.eps.value_or(kDefaultChainGrid), chain);
  ctx.probe_grid = inside_collar(config.eps.value_or(kDefaultProbeGrid), probe);
  std::reverse(ctx.probe_grid.begin(), ctx.probe_grid.end());
  std::sort(dropped.begin(), dropped.end());

  SamplingStats stats;
  std::vector<std::pair<std::string, AmbientPoint>> points;
  for (AmbientPoint& p : domain.boundary_sample(config.samples, config.seed, &stats)) {
    points.emplace_back("boundary", std::move(p));
  }
  const int boundary_count = static_cast<int>(points.size());
  const bool wants_locus = suite != Suite::WeinstockSweep;
  if (wants_locus && domain.weak_locus()) {
    for (AmbientPoint& p : domain.weak_locus_sample(config.samples, config.seed)) {
      points.emplace_back("weak_locus", std::move(p));
    }
  }

  std::vector<std::vector<ReportRow>> per_sample(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) {
    per_sample[i] = process_sample(ctx, static_cast<int>(i), points[i].first, points[i].second);
  });
  for (auto& rows : per_sample) {
    for (auto& row : rows) report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), row_less);

  summarize(report);
  report.summary["collar_width"] = domain.collar_width();
  report.summary["fd_step"] = domain.fd_step();
  report.summary["boundary_samples"] = boundary_count;
  report.summary["weak_locus_samples"] = static_cast<int>(points.size()) - boundary_count;
  report.summary["discarded_samples"] = stats.discarded;
  report.summary["weak_locus"] = domain.weak_locus() ? OrderedJson(*domain.weak_locus()) : OrderedJson(nullptr);
  report.summary["eps_outside_collar"] = real_list_json(dropped);
  if (ctx.runs(Suite::WeinstockSweep)) {
    std::optional<double> eps_star;
    for (double eps : ctx.weinstock_grid) {
      const bool all_psd = std::all_of(report.rows.begin(), report.rows.end(), [&](const ReportRow& r) {
        return r.check != "weinstock" || !r.eps || *r.eps != eps || r.verdict == "pass";
      });
      const bool any = std::any_of(report.rows.begin(), report.rows.end(), [&](const ReportRow& r) {
        return r.check == "weinstock" && r.eps && *r.eps == eps;
      });
      if (!all_psd || !any) break;
      eps_star = eps;
    }
    report.summary["eps_star"] = eps_star ? OrderedJson(*eps_star) : OrderedJson(nullptr);
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void summarize(SweepReport& report) {
  struct Tally {
    int count = 0, pass = 0, fail = 0, info = 0, error = 0, hard = 0;
    double max_metric = 0.0;
    std::string criterion;
  };
  std::map<std::string, Tally> tallies;
  report.all_hard_passed = true;
  for (const ReportRow& row : report.rows) {
    Tally& t = tallies[row.check];
    ++t.count;
    if (row.hard) ++t.hard;
    if (row.verdict == "pass") ++t.pass;
    if (row.verdict == "fail") ++t.fail;
    if (row.verdict == "info") ++t.info;
    if (row.verdict == "error") ++t.error;
    if (row.verdict == "pass" || row.verdict == "fail" || row.verdict == "info") {
      t.max_metric = std::max(t.max_metric, row.metric);
    }
    if (t.criterion.empty()) t.criterion = row.criterion;
    if (row.hard && row.verdict != "pass" && row.verdict != "info") report.all_hard_passed = false;
  }
  OrderedJson checks = OrderedJson::object();
  for (const auto& [name, t] : tallies) {
    OrderedJson j = OrderedJson::object();
    j["count"] = t.count;
    j["pass"] = t.pass;
    j["fail"] = t.fail;
    j["info"] = t.info;
    j["error"] = t.error;
    j["hard"] = t.hard;
    j["max_metric"] = t.max_metric;
    j["criterion"] = t.criterion;
    checks[name] = std::move(j);
  }
  report.summary["domain"] = report.domain_id;
  report.summary["rows"] = report.rows.size();
  report.summary["checks"] = std::move(checks);
  report.summary["all_hard_passed"] = report.all_hard_passed;
}

std::string to_json(const SweepReport& report, bool include_wall_time) {
  OrderedJson j = OrderedJson::object();
  OrderedJson version = OrderedJson::object();
  version["schema"] = kReportSchemaVersion;
  version["tool"] = kToolVersion;
  j["version"] = std::move(version);

  OrderedJson config = OrderedJson::object();
  config["domain"] = report.config.domain;
  config["domain_id"] = report.domain_id;
  config["suite"] = report.config.suite;
  config["eps"] = report.config.eps ? real_list_json(*report.config.eps) : OrderedJson(nullptr);
  config["samples"] = report.config.samples;
  config["seed"] = report.config.seed;
  OrderedJson tol = OrderedJson::object();
  for (const auto& [key, value] : report.tolerances) tol[key] = value;
  config["tolerances"] = std::move(tol);
  config["format"] = report.config.format;
  j["config"] = std::move(config);

  OrderedJson rows = OrderedJson::array();
  for (const ReportRow& row : report.rows) rows.push_back(row_json(row, report.domain_id));
  j["rows"] = std::move(rows);
  j["summary"] = report.summary;
  if (include_wall_time) j["wall_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

std::string to_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "sample,source,check,eps,verdict,hard,key,re,im,text,point,error\n";
  for (const ReportRow& row : report.rows) {
    std::vector<std::array<std::string, 4>> cells;
    flatten("", row.values, cells);
    if (cells.empty()) cells.push_back({"", "", "", ""});
    std::string point;
    for (std::size_t i = 0; i < row.point.size(); ++i) point += (i ? " " : "") + format_number(row.point[i]);
    for (const auto& [key, re, im, text] : cells) {
      out << row.sample << ',' << row.source << ',' << csv_field(row.check) << ','
          << (row.eps ? format_number(*row.eps) : "") << ',' << row.verdict << ','
          << (row.hard ? 1 : 0) << ',' << csv_field(key) << ',' << re << ',' << im << ','
          << csv_field(text) << ',' << point << ',' << csv_field(row.error.value_or("")) << '\n';
    }
  }
  return out.str();
}

std::string render_summary(const SweepReport& report) {
  std::ostringstream out;
  auto line = [&](const std::string& check, const std::string& count, const std::string& pass,
                  const std::string& fail, const std::string& error, const std::string& metric,
                  const std::string& criterion) {
    out << std::left << std::setw(18) << check << " | " << std::right << std::setw(6) << count
        << " | " << std::setw(6) << pass << " | " << std::setw(6) << fail << " | " << std::setw(6)
        << error << " | " << std::setw(12) << metric << " | " << criterion << '\n';
  };
  line("check", "count", "pass", "fail", "error", "max_metric", "criterion");
  out << std::string(18, '-') << "-+-" << std::string(6, '-') << "-+-" << std::string(6, '-')
      << "-+-" << std::string(6, '-') << "-+-" << std::string(6, '-') << "-+-"
      << std::string(12, '-') << "-+-" << std::string(9, '-') << '\n';
  if (report.summary.contains("checks")) {
    for (const auto& [name, t] : report.summary["checks"].items()) {
      std::ostringstream metric;
      metric << std::setprecision(3) << std::scientific << t["max_metric"].get<double>();
      line(name, std::to_string(t["count"].get<int>()), std::to_string(t["pass"].get<int>()),
           std::to_string(t["fail"].get<int>()), std::to_string(t["error"].get<int>()),
           metric.str(), t["criterion"].get<std::string>());
    }
  }
  return out.str();
}

void write_report(const SweepReport& report, const std::string& path, const std::string& format) {
  if (format != "json" && format != "csv") throw Error(ErrorCode::Usage, "format must be json or csv");
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  file << (format == "json" ? to_json(report) : to_csv(report));
  file.flush();
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace leviscope

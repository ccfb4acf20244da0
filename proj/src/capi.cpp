#include "leviscope/leviscope.h"

#include <cstring>
#include <exception>
#include <string>

#include "leviscope/condition_checks.hpp"
#include "leviscope/domain_zoo.hpp"
#include "leviscope/error.hpp"
#include "leviscope/levi_geometry.hpp"
#include "leviscope/report.hpp"
#include "leviscope/signed_distance.hpp"

using namespace leviscope;

struct lvs_domain {
  DefiningFunction domain;
};

struct lvs_config {
  SuiteConfig config;
};

struct lvs_report {
  SweepReport report;
};

namespace {

thread_local std::string last_error;

lvs_status fail(lvs_status status, const char* message) {
  last_error = message;
  return status;
}

template <class Fn>
lvs_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return LVS_OK;
  } catch (const Error& e) {
    return fail(static_cast<lvs_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LVS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LVS_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidInput, what);
}

AmbientPoint point_from(const lvs_domain* d, const double* z) {
  require(z != nullptr, "null point");
  const int dim = 2 * d->domain.dimension();
  return AmbientPoint(Eigen::Map<const RealVector>(z, dim));
}

}  // namespace

extern "C" {

const char* lvs_version(void) { return kToolVersion; }

const char* lvs_last_error(void) { return last_error.c_str(); }

const char* lvs_status_name(lvs_status status) {
  if (status == LVS_OK) return "Ok";
  if (status == LVS_INTERNAL) return "Internal";
  if (status >= LVS_INVALID_INPUT && status <= LVS_IO) {
    return to_string(static_cast<ErrorCode>(static_cast<int>(status)));
  }
  return "Unknown";
}

void lvs_free_string(char* s) { std::free(s); }

lvs_status lvs_set_max_threads(unsigned threads) {
  return guard([&] { set_max_threads(threads); });
}

lvs_status lvs_domain_create(const char* id, lvs_domain** out) {
  return guard([&] {
    require(id != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new lvs_domain{zoo::parse(id)};
  });
}

void lvs_domain_destroy(lvs_domain* domain) { delete domain; }

lvs_status lvs_domain_id(const lvs_domain* domain, char** out) {
  return guard([&] {
    require(domain && out, "null argument");
    *out = duplicate(domain->domain.id());
  });
}

int lvs_domain_dimension(const lvs_domain* domain) { return domain ? domain->domain.dimension() : 0; }

double lvs_domain_collar_width(const lvs_domain* domain) {
  return domain ? domain->domain.collar_width() : 0.0;
}

lvs_status lvs_domain_evaluate(const lvs_domain* domain, const double* z, double* value,
                               double* gradient, double* hessian) {
  return guard([&] {
    require(domain && value, "null argument");
    const Evaluation e = domain->domain.evaluate(point_from(domain, z));
    *value = e.value;
    const auto dim = e.gradient.size();
    if (gradient) Eigen::Map<RealVector>(gradient, dim) = e.gradient;
    if (hessian) {
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(hessian, dim, dim) =
          e.hessian.matrix();
    }
  });
}

lvs_status lvs_domain_boundary_sample(const lvs_domain* domain, int count, uint64_t seed,
                                      double* points, int* produced) {
  return guard([&] {
    require(domain && points && produced, "null argument");
    const auto samples = domain->domain.boundary_sample(count, seed);
    const int dim = 2 * domain->domain.dimension();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      Eigen::Map<RealVector>(points + i * dim, dim) = samples[i].coords();
    }
    *produced = static_cast<int>(samples.size());
  });
}

lvs_status lvs_domain_weak_locus_sample(const lvs_domain* domain, int count, uint64_t seed,
                                        double* points) {
  return guard([&] {
    require(domain && points, "null argument");
    const auto samples = domain->domain.weak_locus_sample(count, seed);
    const int dim = 2 * domain->domain.dimension();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      Eigen::Map<RealVector>(points + i * dim, dim) = samples[i].coords();
    }
  });
}

lvs_status lvs_signed_distance(const lvs_domain* domain, const double* z, double* distance,
                               double* foot) {
  return guard([&] {
    require(domain && distance, "null argument");
    const FootPointResult r = foot_point(domain->domain, point_from(domain, z));
    *distance = r.signed_distance;
    if (foot) {
      Eigen::Map<RealVector>(foot, r.foot.coords().size()) = r.foot.coords();
    }
  });
}

lvs_status lvs_levi_eigenvalues(const lvs_domain* domain, const double* p, double* eigenvalues,
                                int* null_dim) {
  return guard([&] {
    require(domain && eigenvalues, "null argument");
    const NullSpaceResult r = null_space(domain->domain, point_from(domain, p));
    for (std::size_t i = 0; i < r.levi_eigenvalues.size(); ++i) eigenvalues[i] = r.levi_eigenvalues[i];
    if (null_dim) *null_dim = static_cast<int>(r.basis.size());
  });
}

lvs_status lvs_config_create(const char* domain_id, lvs_config** out) {
  return guard([&] {
    require(domain_id && out, "null argument");
    *out = nullptr;
    auto* c = new lvs_config;
    c->config.domain = domain_id;
    *out = c;
  });
}

void lvs_config_destroy(lvs_config* config) { delete config; }

lvs_status lvs_config_set_suite(lvs_config* config, const char* suite) {
  return guard([&] {
    require(config && suite, "null argument");
    parse_suite(suite);
    config->config.suite = suite;
  });
}

lvs_status lvs_config_set_eps(lvs_config* config, const char* grid) {
  return guard([&] {
    require(config && grid, "null argument");
    config->config.eps = parse_eps_grid(grid);
  });
}

lvs_status lvs_config_set_samples(lvs_config* config, int samples) {
  return guard([&] {
    require(config != nullptr, "null argument");
    if (samples < 1) throw Error(ErrorCode::Usage, "samples must be >= 1");
    config->config.samples = samples;
  });
}

lvs_status lvs_config_set_seed(lvs_config* config, uint64_t seed) {
  return guard([&] {
    require(config != nullptr, "null argument");
    config->config.seed = seed;
  });
}

lvs_status lvs_config_set_tolerance(lvs_config* config, const char* key, double value) {
  return guard([&] {
    require(config && key, "null argument");
    const auto defaults = default_tolerances();
    if (!defaults.count(key)) throw Error(ErrorCode::Usage, std::string("unknown tolerance key '") + key + "'");
    if (!(value >= 0.0)) throw Error(ErrorCode::Usage, "tolerance must be >= 0");
    config->config.tolerances[key] = value;
  });
}

lvs_status lvs_config_set_format(lvs_config* config, const char* format) {
  return guard([&] {
    require(config && format, "null argument");
    const std::string f = format;
    if (f != "json" && f != "csv") throw Error(ErrorCode::Usage, "format must be json or csv");
    config->config.format = f;
  });
}

lvs_status lvs_run_suite(const lvs_config* config, lvs_report** out) {
  return guard([&] {
    require(config && out, "null argument");
    *out = nullptr;
    *out = new lvs_report{run_suite(config->config)};
  });
}

void lvs_report_destroy(lvs_report* report) { delete report; }

int lvs_report_all_hard_passed(const lvs_report* report) {
  return report && report->report.all_hard_passed ? 1 : 0;
}

size_t lvs_report_row_count(const lvs_report* report) { return report ? report->report.rows.size() : 0; }

lvs_status lvs_report_json(const lvs_report* report, int include_wall_time, char** out) {
  return guard([&] {
    require(report && out, "null argument");
    *out = duplicate(to_json(report->report, include_wall_time != 0));
  });
}

lvs_status lvs_report_csv(const lvs_report* report, char** out) {
  return guard([&] {
    require(report && out, "null argument");
    *out = duplicate(to_csv(report->report));
  });
}

lvs_status lvs_report_summary(const lvs_report* report, char** out) {
  return guard([&] {
    require(report && out, "null argument");
    *out = duplicate(render_summary(report->report));
  });
}

lvs_status lvs_report_write(const lvs_report* report, const char* path) {
  return guard([&] {
    require(report && path, "null argument");
    write_report(report->report, path, report->report.config.format);
  });
}

}  // extern "C"

// leviscope: run a verification suite on a zoo domain and emit a report.
//
// Exit codes: 0 all hard checks pass, 1 a hard check failed, 2 usage error,
// 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leviscope/leviscope.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitHardFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(lvs_status status) {
  if (status == LVS_IO) return kExitIo;
  return kExitUsage;
}

int report_error(lvs_status status) {
  std::cerr << "leviscope: " << lvs_status_name(status) << ": " << lvs_last_error() << '\n';
  return exit_code_for(status);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  lvs_free_string(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levi-geometry verification suites for closed-form test domains"};
  std::string domain_id;
  std::string suite = "all";
  std::string eps;
  int samples = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> tolerances;
  std::string out_path;
  std::string format = "json";
  bool quiet = false;

  app.add_option("--domain", domain_id, "zoo id, e.g. ball:R=1 or egg2m:m=2,n=2")->required();
  app.add_option("--suite", suite, "frames | weinstock-sweep | identities | theorem2 | all");
  app.add_option("--eps", eps, "eps grid: start:end:count or a comma list");
  app.add_option("--samples", samples, "boundary samples (and weak-locus samples)");
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--tol", tolerances, "tolerance override KEY=VALUE (repeatable)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json | csv");
  app.add_flag("--quiet", quiet, "suppress the summary table on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  lvs_config* config = nullptr;
  lvs_status status = lvs_config_create(domain_id.c_str(), &config);
  if (status != LVS_OK) return report_error(status);
  auto cleanup = [&](int code) {
    lvs_config_destroy(config);
    return code;
  };

  if ((status = lvs_config_set_suite(config, suite.c_str())) != LVS_OK) return cleanup(report_error(status));
  if (!eps.empty() && (status = lvs_config_set_eps(config, eps.c_str())) != LVS_OK) {
    return cleanup(report_error(status));
  }
  if ((status = lvs_config_set_samples(config, samples)) != LVS_OK) return cleanup(report_error(status));
  if ((status = lvs_config_set_seed(config, seed)) != LVS_OK) return cleanup(report_error(status));
  if ((status = lvs_config_set_format(config, format.c_str())) != LVS_OK) return cleanup(report_error(status));
  for (const std::string& item : tolerances) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "leviscope: Usage: --tol expects KEY=VALUE, got '" << item << "'\n";
      return cleanup(kExitUsage);
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      std::cerr << "leviscope: Usage: bad tolerance value '" << value << "'\n";
      return cleanup(kExitUsage);
    }
    if ((status = lvs_config_set_tolerance(config, key.c_str(), v)) != LVS_OK) {
      return cleanup(report_error(status));
    }
  }

  lvs_report* report = nullptr;
  if ((status = lvs_run_suite(config, &report)) != LVS_OK) return cleanup(report_error(status));
  int code = lvs_report_all_hard_passed(report) ? kExitPass : kExitHardFailure;

  if (!out_path.empty()) {
    status = lvs_report_write(report, out_path.c_str());
  } else {
    char* text = nullptr;
    status = format == "csv" ? lvs_report_csv(report, &text) : lvs_report_json(report, 1, &text);
    if (status == LVS_OK) std::fputs(take(text).c_str(), stdout);
  }
  if (status != LVS_OK) code = report_error(status);

  if (!quiet && status == LVS_OK) {
    char* summary = nullptr;
    if (lvs_report_summary(report, &summary) == LVS_OK) std::cerr << take(summary);
  }
  lvs_report_destroy(report);
  return cleanup(code);
}

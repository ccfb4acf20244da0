#pragma once

// Suite driver: runs a verification battery over boundary (and weak-locus)
// samples of one zoo domain and collects deterministic report rows.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace leviscope {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

using OrderedJson = nlohmann::ordered_json;

enum class Suite { Frames, WeinstockSweep, Identities, Theorem2, All };

Suite parse_suite(std::string_view name);
const char* to_string(Suite suite) noexcept;

/// "start:end:count" (inclusive, linear) or a comma list. Values must be
/// finite and strictly positive; the result is sorted ascending without
/// duplicates.
std::vector<double> parse_eps_grid(std::string_view text);

/// Named tolerances with their defaults; overrides must use known keys.
std::map<std::string, double> default_tolerances();

struct SuiteConfig {
  std::string domain;
  std::string suite = "all";
  std::optional<std::vector<double>> eps;
  int samples = 20;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides
  std::string format = "json";
};

struct ReportRow {
  int sample = 0;
  std::string source;             // "boundary" | "weak_locus"
  std::vector<double> point;
  std::optional<double> eps;
  std::string check;
  OrderedJson values = OrderedJson::object();
  std::string verdict;            // "pass" | "fail" | "info" | "error"
  bool hard = false;
  std::optional<std::string> error;
  double metric = 0.0;            // quantity compared against the criterion
  std::string criterion;
};

struct SweepReport {
  SuiteConfig config;
  std::string domain_id;
  std::map<std::string, double> tolerances;  // effective
  std::vector<ReportRow> rows;               // sorted (sample, eps, check)
  OrderedJson summary = OrderedJson::object();
  bool all_hard_passed = true;
  double wall_ms = 0.0;
};

/// Throws Error with ErrorCode::Usage for unknown domains, suites, tolerance
/// keys or invalid grids. Per-point failures become "error" rows.
SweepReport run_suite(const SuiteConfig& config);

/// Rebuilds summary and all_hard_passed from rows.
void summarize(SweepReport& report);

std::string to_json(const SweepReport& report, bool include_wall_time = true);
std::string to_csv(const SweepReport& report);
std::string render_summary(const SweepReport& report);

/// Throws Error with ErrorCode::Io when the file cannot be written.
void write_report(const SweepReport& report, const std::string& path, const std::string& format);

}  // namespace leviscope

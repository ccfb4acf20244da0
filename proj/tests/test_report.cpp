#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "leviscope/error.hpp"
#include "leviscope/report.hpp"

using namespace leviscope;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

SuiteConfig config(std::string domain, std::string suite, int samples) {
  SuiteConfig c;
  c.domain = std::move(domain);
  c.suite = std::move(suite);
  c.samples = samples;
  return c;
}

}  // namespace

TEST_CASE("eps grids") {
  const auto linear = parse_eps_grid("0.1:1.0:10");
  REQUIRE(linear.size() == 10);
  CHECK(linear.front() == 0.1);
  CHECK(linear.back() == 1.0);
  CHECK(linear[4] == doctest::Approx(0.5));
  CHECK(parse_eps_grid("0.04,0.01,0.02,0.01") == std::vector<double>{0.01, 0.02, 0.04});
  CHECK(parse_eps_grid("0.5") == std::vector<double>{0.5});
  CHECK(parse_eps_grid("0.3:0.3:1") == std::vector<double>{0.3});
  for (const char* bad : {"", "0.1:1", "0.1:1:0", "0.1:1:2.5", "a,b", "0.1,,0.2", "-0.1,0.2", "0:1:3",
                          "0.1:0.2:3:4", "1e400"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_eps_grid(bad); }) == ErrorCode::Usage);
  }
}

TEST_CASE("suite names") {
  CHECK(parse_suite("weinstock-sweep") == Suite::WeinstockSweep);
  CHECK(std::string(to_string(Suite::Theorem2)) == "theorem2");
  CHECK(code_of([] { parse_suite("everything"); }) == ErrorCode::Usage);
}

TEST_CASE("config validation") {
  CHECK(code_of([] { run_suite(config("nosuch", "all", 2)); }) == ErrorCode::Usage);
  CHECK(code_of([] { run_suite(config("ball", "bogus", 2)); }) == ErrorCode::Usage);
  CHECK(code_of([] { run_suite(config("ball", "all", 0)); }) == ErrorCode::Usage);
  SuiteConfig c = config("ball", "frames", 2);
  c.tolerances["nope"] = 1.0;
  CHECK(code_of([&] { run_suite(c); }) == ErrorCode::Usage);
  c = config("ball", "frames", 2);
  c.format = "xml";
  CHECK(code_of([&] { run_suite(c); }) == ErrorCode::Usage);
}

TEST_CASE("ball weinstock sweep: 500 PSD verdicts and eps* = 1") {
  SuiteConfig c = config("ball:R=1", "weinstock-sweep", 50);
  c.eps = parse_eps_grid("0.1:1.0:10");
  const SweepReport r = run_suite(c);
  CHECK(r.rows.size() == 500);
  for (const ReportRow& row : r.rows) {
    CHECK(row.check == "weinstock");
    CHECK(row.verdict == "pass");
    CHECK(row.hard);
  }
  CHECK(r.summary["eps_star"].get<double>() == 1.0);
  CHECK(r.all_hard_passed);
}

TEST_CASE("egg identities suite") {
  SuiteConfig c = config("egg2m:m=2,n=2", "identities", 20);
  c.seed = 3;
  const SweepReport r = run_suite(c);
  CHECK(r.all_hard_passed);
  const auto& checks = r.summary["checks"];
  CHECK(checks["eq1"]["count"].get<int>() == 40);
  CHECK(checks["eq1"]["max_metric"].get<double>() <= 1e-4);
  CHECK(checks["eq2"]["pass"].get<int>() == checks["eq2"]["count"].get<int>());
  CHECK(checks["eq7"]["count"].get<int>() == 60);
  CHECK(r.summary["weak_locus_samples"].get<int>() == 20);
}

TEST_CASE("rows are sorted and carry the documented fields") {
  const SweepReport r = run_suite(config("egg2m:m=2,n=2", "all", 2));
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const ReportRow& a = r.rows[i - 1];
    const ReportRow& b = r.rows[i];
    CHECK(a.sample <= b.sample);
    if (a.sample == b.sample && a.eps && b.eps) CHECK(*a.eps <= *b.eps);
    if (a.sample == b.sample) CHECK(!(a.eps && !b.eps));
  }
  const OrderedJson j = OrderedJson::parse(to_json(r));
  CHECK(j["version"]["schema"].get<int>() == kReportSchemaVersion);
  CHECK(j.contains("wall_ms"));
  CHECK(std::prev(j.end()).key() == "wall_ms");
  const OrderedJson& row = j["rows"][0];
  for (const char* key : {"domain", "sample", "source", "point", "eps", "check", "values", "verdict", "hard",
                          "error", "provenance"}) {
    CAPTURE(key);
    CHECK(row.contains(key));
  }
  CHECK(row["provenance"] == "measured");
  CHECK_FALSE(OrderedJson::parse(to_json(r, false)).contains("wall_ms"));
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  SuiteConfig c = config("worm:a=0.5", "all", 3);
  const std::string a = to_json(run_suite(c), false);
  const std::string b = to_json(run_suite(c), false);
  CHECK(a == b);
  CHECK(to_csv(run_suite(c)) == to_csv(run_suite(c)));
}

TEST_CASE("out-of-collar eps values are dropped from interior checks") {
  SuiteConfig c = config("worm:a=0.5", "identities", 2);
  c.eps = std::vector<double>{0.002, 0.2};
  const SweepReport r = run_suite(c);
  CHECK(r.summary["eps_outside_collar"] == OrderedJson::array({0.2}));
  for (const ReportRow& row : r.rows) {
    if (row.check == "eq7") CHECK(*row.eps == 0.002);
  }
}

TEST_CASE("failures become error rows that keep their hard flag") {
  // The worm has negative principal curvatures, so a large outer eps passes a
  // focal point; the worm is not convex, so those rows are soft.
  SuiteConfig c = config("worm:a=0.5", "weinstock-sweep", 5);
  c.eps = std::vector<double>{5.0};
  const SweepReport r = run_suite(c);
  bool saw_error = false;
  for (const ReportRow& row : r.rows) {
    if (row.verdict == "error") {
      saw_error = true;
      CHECK(row.error->find("CurvatureLimit") == 0);
      CHECK_FALSE(row.hard);
    }
  }
  CHECK(saw_error);
  CHECK(r.all_hard_passed);
}

TEST_CASE("summary rendering and csv") {
  SweepReport empty;
  summarize(empty);
  const std::string table = render_summary(empty);
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);
  CHECK(table.rfind("check", 0) == 0);
  CHECK(to_csv(empty) == "sample,source,check,eps,verdict,hard,key,re,im,text,point,error\n");

  const SweepReport r = run_suite(config("ball", "frames", 2));
  const std::string csv = to_csv(r);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    // point coordinates are space separated, so every line has 12 fields.
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
  }
  CHECK(render_summary(r).find("riccati") != std::string::npos);
}

TEST_CASE("tolerance overrides flip verdicts") {
  SuiteConfig c = config("ball", "frames", 2);
  c.tolerances["riccati"] = 0.0;
  const SweepReport r = run_suite(c);
  CHECK_FALSE(r.all_hard_passed);
  CHECK(r.tolerances.at("riccati") == 0.0);
}

TEST_CASE("writing reports") {
  const SweepReport r = run_suite(config("ball", "frames", 1));
  const auto dir = std::filesystem::temp_directory_path() / "leviscope_report_test";
  std::filesystem::create_directories(dir);
  write_report(r, (dir / "r.json").string(), "json");
  std::ifstream in(dir / "r.json");
  std::stringstream content;
  content << in.rdbuf();
  CHECK(OrderedJson::parse(content.str())["summary"]["all_hard_passed"].get<bool>());
  CHECK(code_of([&] { write_report(r, (dir / "missing" / "r.json").string(), "json"); }) == ErrorCode::Io);
  std::filesystem::remove_all(dir);
}

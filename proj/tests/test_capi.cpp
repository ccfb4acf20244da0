#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "leviscope/leviscope.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  lvs_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("domain handles") {
  lvs_domain* d = nullptr;
  REQUIRE(lvs_domain_create("ball:R=2", &d) == LVS_OK);
  CHECK(lvs_domain_dimension(d) == 2);
  CHECK(lvs_domain_collar_width(d) == doctest::Approx(0.6));
  char* id = nullptr;
  REQUIRE(lvs_domain_id(d, &id) == LVS_OK);
  CHECK(take(id) == "ball:R=2,n=2");

  const double z[4] = {3, 0, 0, 0};
  double value = 0, grad[4], hess[16];
  REQUIRE(lvs_domain_evaluate(d, z, &value, grad, hess) == LVS_OK);
  CHECK(value == doctest::Approx(5.0));
  CHECK(grad[0] == doctest::Approx(6.0));
  CHECK(hess[0] == doctest::Approx(2.0));
  CHECK(hess[1] == 0.0);

  double dist = 0, foot[4];
  REQUIRE(lvs_signed_distance(d, z, &dist, foot) == LVS_OK);
  CHECK(dist == doctest::Approx(1.0));
  CHECK(foot[0] == doctest::Approx(2.0));

  std::vector<double> pts(10 * 4);
  int produced = 0;
  REQUIRE(lvs_domain_boundary_sample(d, 10, 3, pts.data(), &produced) == LVS_OK);
  CHECK(produced == 10);
  CHECK(std::hypot(std::hypot(pts[0], pts[1]), std::hypot(pts[2], pts[3])) == doctest::Approx(2.0));

  double eig[1];
  int null_dim = -1;
  REQUIRE(lvs_levi_eigenvalues(d, pts.data(), eig, &null_dim) == LVS_OK);
  CHECK(eig[0] == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(null_dim == 0);

  CHECK(lvs_domain_weak_locus_sample(d, 2, 1, pts.data()) == LVS_UNSUPPORTED_OPERATION);
  CHECK(std::strlen(lvs_last_error()) > 0);
  lvs_domain_destroy(d);
}

TEST_CASE("status codes and messages") {
  lvs_domain* d = nullptr;
  CHECK(lvs_domain_create("nosuch", &d) == LVS_USAGE);
  CHECK(d == nullptr);
  CHECK(std::string(lvs_last_error()).find("nosuch") != std::string::npos);
  CHECK(std::string(lvs_status_name(LVS_WRONG_SIDE)) == "WrongSide");
  CHECK(std::string(lvs_status_name(LVS_OK)) == "Ok");
  CHECK(lvs_domain_create(nullptr, &d) == LVS_INVALID_INPUT);

  REQUIRE(lvs_domain_create("worm", &d) == LVS_OK);
  const double axis[4] = {0.2, 0, 0, 0};
  double v = 0;
  CHECK(lvs_domain_evaluate(d, axis, &v, nullptr, nullptr) == LVS_DOMAIN_SINGULARITY);
  lvs_domain_destroy(d);
  CHECK(std::string(lvs_version()) == "0.1.0");
}

TEST_CASE("suite through the C API") {
  lvs_config* c = nullptr;
  REQUIRE(lvs_config_create("egg2m:m=2,n=2", &c) == LVS_OK);
  CHECK(lvs_config_set_suite(c, "nonsense") == LVS_USAGE);
  CHECK(lvs_config_set_suite(c, "theorem2") == LVS_OK);
  CHECK(lvs_config_set_eps(c, "0.1:0.2") == LVS_USAGE);
  CHECK(lvs_config_set_eps(c, "0.1,0.05,0.02,0.01") == LVS_OK);
  CHECK(lvs_config_set_samples(c, 0) == LVS_USAGE);
  CHECK(lvs_config_set_samples(c, 3) == LVS_OK);
  CHECK(lvs_config_set_seed(c, 2) == LVS_OK);
  CHECK(lvs_config_set_tolerance(c, "bogus", 1.0) == LVS_USAGE);
  CHECK(lvs_config_set_tolerance(c, "probe_angle", 1e-3) == LVS_OK);
  CHECK(lvs_config_set_format(c, "yaml") == LVS_USAGE);
  CHECK(lvs_config_set_format(c, "csv") == LVS_OK);

  lvs_report* r = nullptr;
  REQUIRE(lvs_run_suite(c, &r) == LVS_OK);
  CHECK(lvs_report_all_hard_passed(r) == 1);
  CHECK(lvs_report_row_count(r) > 0);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(lvs_report_json(r, 0, &a) == LVS_OK);
  lvs_report* again = nullptr;
  REQUIRE(lvs_run_suite(c, &again) == LVS_OK);
  REQUIRE(lvs_report_json(again, 0, &b) == LVS_OK);
  CHECK(take(a) == take(b));

  char* csv = nullptr;
  REQUIRE(lvs_report_csv(r, &csv) == LVS_OK);
  CHECK(take(csv).rfind("sample,source,check", 0) == 0);
  char* summary = nullptr;
  REQUIRE(lvs_report_summary(r, &summary) == LVS_OK);
  CHECK(take(summary).find("theorem2") != std::string::npos);
  CHECK(lvs_report_write(r, "/nonexistent-dir/x.csv") == LVS_IO);

  lvs_report_destroy(again);
  lvs_report_destroy(r);
  lvs_config_destroy(c);
}

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "diamond/diamond.h"

namespace {

struct Channel {
  dmd_channel* p = nullptr;
  ~Channel() { dmd_channel_free(p); }
};
struct Region {
  dmd_region* p = nullptr;
  ~Region() { dmd_region_free(p); }
};
struct Report {
  dmd_report* p = nullptr;
  ~Report() { dmd_report_free(p); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(dmd_version()) > 0);
  CHECK(std::string(dmd_status_name(DMD_OK)) == "ok");
  for (int s = 0; s <= DMD_ERR_INTERNAL; ++s)
    CHECK(std::strlen(dmd_status_name(static_cast<dmd_status>(s))) > 0);
  dmd_options o;
  dmd_options_default(&o);
  CHECK(o.ardf_grid == 11);
  CHECK(o.mdf_theta_points == 101);
  CHECK(dmd_preset_count() == 5);
  CHECK(dmd_preset_name(5) == nullptr);
  CHECK(std::string(dmd_preset_name(0)).size() > 0);
}

TEST_CASE("channel errors map to codes") {
  Channel c;
  CHECK(dmd_channel_from_preset("nope", &c.p) == DMD_ERR_INVALID);
  CHECK(c.p == nullptr);
  CHECK(std::string(dmd_last_error()).find("nope") != std::string::npos);
  CHECK(dmd_channel_from_preset(nullptr, &c.p) == DMD_ERR_INVALID);
  CHECK(dmd_channel_create(DMD_VARIANT_PLAIN, -1, 1, 1, 1, 0, &c.p) == DMD_ERR_DOMAIN);
  CHECK(dmd_channel_create(DMD_VARIANT_PLAIN, NAN, 1, 1, 1, 0, &c.p) == DMD_ERR_DOMAIN);
  CHECK(dmd_channel_from_json("{", &c.p) == DMD_ERR_PARSE);
  CHECK(dmd_channel_from_json(R"({"variant": "plain"})", &c.p) == DMD_ERR_INVALID);
  CHECK(dmd_channel_from_file("/nonexistent/ch.json", &c.p) == DMD_ERR_IO);
  dmd_convention conv;
  CHECK(dmd_parse_convention("complex", &conv) == DMD_OK);
  CHECK(conv == DMD_CONVENTION_COMPLEX);
  CHECK(dmd_parse_convention("x", &conv) == DMD_ERR_INVALID);
}

TEST_CASE("support through the C API") {
  Channel c;
  REQUIRE(dmd_channel_from_preset("I", &c.p) == DMD_OK);
  double ra = 0, rb = 0;
  REQUIRE(dmd_support(c.p, DMD_PROTOCOL_CF_CMAC, 1.0, nullptr, &ra, &rb) == DMD_OK);
  CHECK(ra == doctest::Approx(2.360).epsilon(1e-3));
  CHECK(rb == doctest::Approx(ra));
  REQUIRE(dmd_support(c.p, DMD_PROTOCOL_OUTER, 0.0, nullptr, &ra, &rb) == DMD_OK);
  CHECK(ra == doctest::Approx(4.0987).epsilon(3e-5));
  CHECK(rb == 0.0);
  CHECK(dmd_support(c.p, DMD_PROTOCOL_COMABC, 1.0, nullptr, &ra, &rb) ==
        DMD_ERR_UNSUPPORTED_VARIANT);
  CHECK(dmd_support(c.p, DMD_PROTOCOL_OUTER, -1.0, nullptr, &ra, &rb) == DMD_ERR_INVALID);
  CHECK(dmd_support(nullptr, DMD_PROTOCOL_OUTER, 1.0, nullptr, &ra, &rb) == DMD_ERR_INVALID);
  dmd_options o;
  dmd_options_default(&o);
  o.ardf_grid = 1;
  Channel f7;
  REQUIRE(dmd_channel_from_preset("interfering_fig7", &f7.p) == DMD_OK);
  CHECK(dmd_support(f7.p, DMD_PROTOCOL_AR_DF, 1.0, &o, &ra, &rb) == DMD_ERR_INVALID);

  dmd_protocol p;
  CHECK(dmd_parse_protocol("ar-df", &p) == DMD_OK);
  CHECK(p == DMD_PROTOCOL_AR_DF);
  CHECK(std::string(dmd_protocol_name(DMD_PROTOCOL_CF_BC)) == "cf-bc");
  CHECK(dmd_parse_protocol("zz", &p) == DMD_ERR_INVALID);
}

TEST_CASE("label swap through the C API") {
  Channel c, s;
  REQUIRE(dmd_channel_create(DMD_VARIANT_DIRECT_LINK, 30, 5, 2, 12, 4, &c.p) == DMD_OK);
  REQUIRE(dmd_channel_swapped(c.p, &s.p) == DMD_OK);
  dmd_variant v;
  REQUIRE(dmd_channel_variant(s.p, &v) == DMD_OK);
  CHECK(v == DMD_VARIANT_DIRECT_LINK);
  for (double k : {0.25, 1.0, 3.0}) {
    double a1, b1, a2, b2;
    REQUIRE(dmd_support(c.p, DMD_PROTOCOL_COMABC, k, nullptr, &a1, &b1) == DMD_OK);
    REQUIRE(dmd_support(s.p, DMD_PROTOCOL_COMABC, 1.0 / k, nullptr, &a2, &b2) == DMD_OK);
    CHECK(a1 == doctest::Approx(b2).epsilon(1e-9));
    CHECK(b1 == doctest::Approx(a2).epsilon(1e-9));
  }
  char* js = nullptr;
  REQUIRE(dmd_channel_to_json(s.p, &js) == DMD_OK);
  Channel back;
  CHECK(dmd_channel_from_json(js, &back.p) == DMD_OK);
  dmd_string_free(js);
}

TEST_CASE("regions, hull and compare") {
  Channel c;
  REQUIRE(dmd_channel_from_preset("I", &c.p) == DMD_OK);
  Region cmac, mdf, outer, bad;
  REQUIRE(dmd_region_compute(c.p, DMD_PROTOCOL_CF_CMAC, nullptr, 0, nullptr, &cmac.p) == DMD_OK);
  CHECK(dmd_region_size(cmac.p) == 27);
  CHECK(std::string(dmd_region_label(cmac.p)) == "cf-cmac");
  double k, ra, rb;
  REQUIRE(dmd_region_sample(cmac.p, 26, &k, &ra, &rb) == DMD_OK);
  CHECK(std::isinf(k));
  CHECK(ra == 0.0);
  CHECK(dmd_region_sample(cmac.p, 27, &k, &ra, &rb) == DMD_ERR_INVALID);
  double mu = -1;
  REQUIRE(dmd_region_schedule(cmac.p, 13, 13, &mu) == DMD_OK);
  CHECK(mu > 0.0);
  REQUIRE(dmd_region_schedule(cmac.p, 13, 1, &mu) == DMD_OK);
  CHECK(mu == 0.0);
  CHECK(dmd_region_schedule(cmac.p, 13, 15, &mu) == DMD_ERR_INVALID);

  const double ks[] = {0.5, 1.0, 2.0};
  const double bad_ks[] = {1.0, 0.5};
  CHECK(dmd_region_compute(c.p, DMD_PROTOCOL_OUTER, bad_ks, 2, nullptr, &bad.p) == DMD_ERR_INVALID);
  REQUIRE(dmd_region_compute(c.p, DMD_PROTOCOL_MDF, ks, 3, nullptr, &mdf.p) == DMD_OK);
  REQUIRE(dmd_region_compute(c.p, DMD_PROTOCOL_OUTER, nullptr, 0, nullptr, &outer.p) == DMD_OK);

  Region hull;
  const dmd_region* parts[] = {cmac.p, mdf.p};
  REQUIRE(dmd_region_hull(parts, 2, &hull.p) == DMD_OK);
  CHECK(std::string(dmd_region_label(hull.p)) == "hull");
  CHECK(dmd_region_hull(parts, 0, &bad.p) == DMD_ERR_INVALID);

  Report rep;
  REQUIRE(dmd_compare(outer.p, hull.p, 1e-6, &rep.p) == DMD_OK);
  CHECK(dmd_report_passed(rep.p) == 1);
  CHECK(dmd_report_size(rep.p) == 27);
  double ko, so, si, m;
  int pass;
  REQUIRE(dmd_report_entry(rep.p, 13, &ko, &so, &si, &m, &pass) == DMD_OK);
  CHECK(ko == 1.0);
  CHECK(si / 2 >= 2.360 - 1e-3);
  CHECK(m == doctest::Approx(so - si));
  CHECK(pass == 1);
  Report rev;
  REQUIRE(dmd_compare(hull.p, outer.p, 1e-6, &rev.p) == DMD_OK);
  CHECK(dmd_report_passed(rev.p) == 0);

  char* csv = nullptr;
  REQUIRE(dmd_region_to_string(mdf.p, DMD_FORMAT_CSV, nullptr, &csv) == DMD_OK);
  CHECK(std::string(csv).rfind("protocol,convention,k,R_a,R_b,mu_1", 0) == 0);
  dmd_string_free(csv);
  char* js = nullptr;
  CHECK(dmd_region_to_string(mdf.p, DMD_FORMAT_JSON, "[]", &js) == DMD_ERR_INVALID);
  REQUIRE(dmd_region_to_string(mdf.p, DMD_FORMAT_JSON, R"({"x": 1})", &js) == DMD_OK);
  CHECK(std::string(js).find("\"manifest\"") != std::string::npos);
  dmd_string_free(js);

  const auto dir = std::filesystem::temp_directory_path() / "diamond_capi_test";
  std::filesystem::create_directories(dir);
  CHECK(dmd_region_write(mdf.p, (dir / "r.csv").c_str(), DMD_FORMAT_CSV, nullptr) == DMD_OK);
  CHECK(std::filesystem::exists(dir / "r.csv"));
  CHECK(dmd_report_write(rep.p, (dir / "rep.json").c_str(), DMD_FORMAT_JSON, nullptr) == DMD_OK);
  CHECK(dmd_region_write(mdf.p, (dir / "no/such/r.csv").c_str(), DMD_FORMAT_CSV, nullptr) ==
        DMD_ERR_IO);
  std::filesystem::remove_all(dir);
}

TEST_CASE("k grids through the C API") {
  double* ks = nullptr;
  size_t n = 0;
  REQUIRE(dmd_default_k_grid(&ks, &n) == DMD_OK);
  CHECK(n == 25);
  dmd_doubles_free(ks);
  REQUIRE(dmd_parse_k_grid("0.5:2:4", &ks, &n) == DMD_OK);
  CHECK(n == 4);
  CHECK(ks[3] == 2.0);
  dmd_doubles_free(ks);
  CHECK(dmd_parse_k_grid("3,2", &ks, &n) == DMD_ERR_INVALID);
}

TEST_CASE("last error is per thread and cleared state is harmless") {
  Channel c;
  dmd_channel_from_preset("bogus", &c.p);
  const std::string msg = dmd_last_error();
  CHECK(!msg.empty());
  dmd_channel_free(nullptr);
  dmd_region_free(nullptr);
  dmd_report_free(nullptr);
  dmd_string_free(nullptr);
}

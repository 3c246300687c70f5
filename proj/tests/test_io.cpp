#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "diamond/error.hpp"
#include "diamond/region_io.hpp"

using namespace diamond;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("channel JSON in dB") {
  const auto ch = io::channel_from_json(R"({
    "variant": "plain",
    "snr_db": {"a1": 15, "a2": 10, "b1": 10, "b2": 15}
  })");
  CHECK(ch == channel_from_caption("I"));
  CHECK(ch.convention == Convention::complex);

  const auto d = io::channel_from_json(R"({"variant": "direct_link", "convention": "as_printed",
    "snr_db": {"a1": 15, "a2": 10, "b1": 10, "b2": 15, "ab": 8}})");
  CHECK(d.variant == Variant::direct_link);
  CHECK(*d.gamma_ab == doctest::Approx(std::pow(10.0, 0.8)));
  CHECK(d.convention == Convention::as_printed);

  const auto r = io::channel_from_json(R"({"variant": "interfering_relays",
    "snr_linear": {"a1": 100, "a2": 2, "b1": 10, "b2": 0, "12": 100}})");
  CHECK(r.gamma_b2 == 0.0);
  CHECK(*r.gamma_12 == 100.0);
}

TEST_CASE("channel JSON is strict") {
  const char* bad_validation[] = {
      R"([1, 2])",
      R"({"snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}})",
      R"({"variant": "plain", "snr_db": {"a1": 1, "a2": 1, "b1": 1}})",
      R"({"variant": "plain", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "ab": 3}})",
      R"({"variant": "direct_link", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}})",
      R"({"variant": "interfering_relays", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1, "ab": 1}})",
      R"({"variant": "plain", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}, "extra": 1})",
      R"({"variant": "plain", "snr_db": {"a1": "x", "a2": 1, "b1": 1, "b2": 1}})",
      R"({"variant": "plain", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1},
          "snr_linear": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}})",
      R"({"variant": "plain", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}, "convention": "real"})",
      R"({"variant": "ring", "snr_db": {"a1": 1, "a2": 1, "b1": 1, "b2": 1}})",
  };
  for (const char* text : bad_validation) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::channel_from_json(text), ValidationError);
  }
  CHECK_THROWS_AS(io::channel_from_json(R"({"variant": )"), ParseError);
  CHECK_THROWS_AS(
      io::channel_from_json(R"({"variant": "plain", "snr_linear": {"a1": -1, "a2": 1, "b1": 1, "b2": 1}})"),
      DomainError);
}

TEST_CASE("channel JSON round trip") {
  for (const auto& name : preset_names()) {
    auto ch = channel_from_caption(name);
    ch.convention = Convention::as_printed;
    CHECK(io::channel_from_json(io::channel_to_json(ch)) == ch);
  }
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(1.0) == "1");
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(INFINITY) == "inf");
  CHECK(io::format_number(2.0 / 3.0) == "0.666666666667");
}

TEST_CASE("region CSV") {
  const auto ch = channel_from_caption("I");
  const auto r = regions::compute_region(regions::Kind::cf_bc, ch, regions::default_k_grid());
  const std::string csv = io::region_to_csv(r);
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 28);
  CHECK(ls[0] == "protocol,convention,k,R_a,R_b,mu_9,mu_10,mu_11,mu_12");
  CHECK(ls[1].rfind("cf-bc,complex,0,", 0) == 0);
  CHECK(ls[27].rfind("cf-bc,complex,inf,0,", 0) == 0);

  const auto back = io::region_from_csv(csv, ch);
  CHECK(back.label == r.label);
  REQUIRE(back.samples.size() == r.samples.size());
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& a = r.samples[i];
    const auto& b = back.samples[i];
    if (is_b_axis(a.k))
      CHECK(is_b_axis(b.k));
    else
      CHECK(b.k == doctest::Approx(a.k).epsilon(1e-11));
    CHECK(b.rates.r_a == doctest::Approx(a.rates.r_a).epsilon(1e-11));
    CHECK(b.rates.r_b == doctest::Approx(a.rates.r_b).epsilon(1e-11));
    for (const auto& [id, mu] : a.schedule)
      CHECK(b.schedule.at(id) == doctest::Approx(mu).epsilon(1e-11).scale(1e-12));
  }
  // Rewriting the parsed region reproduces the bytes.
  CHECK(io::region_to_csv(back) == csv);
  // Deterministic across runs.
  CHECK(io::region_to_csv(regions::compute_region(regions::Kind::cf_bc, ch,
                                                  regions::default_k_grid())) == csv);
}

TEST_CASE("region CSV parse errors") {
  const auto ch = channel_from_caption("I");
  CHECK_THROWS_AS(io::region_from_csv("", ch), ParseError);
  CHECK_THROWS_AS(io::region_from_csv("a,b,c\n", ch), ParseError);
  CHECK_THROWS_AS(io::region_from_csv("protocol,convention,k,R_a,R_b\nx,complex,1,zz,1\n", ch),
                  ParseError);
  CHECK_THROWS_AS(io::region_from_csv("protocol,convention,k,R_a,R_b\nx,complex,1,1\n", ch),
                  ParseError);
  CHECK_THROWS_AS(io::region_from_csv("protocol,convention,k,R_a,R_b,mu_99\nx,complex,1,1,1,1\n", ch),
                  ParseError);
  CHECK_THROWS_AS(io::region_from_csv("protocol,convention,k,R_a,R_b\nx,complex,1,1,1\n"
                                      "y,complex,2,1,2\n", ch),
                  ParseError);
}

TEST_CASE("region JSON") {
  const auto ch = channel_from_caption("direct_fig6");
  const auto r = regions::compute_region(regions::Kind::comabc, ch, {1.0});
  const auto j = json::parse(io::region_to_json(r, R"({"command": "region"})"));
  CHECK(j["protocol"] == "comabc");
  CHECK(j["convention"] == "complex");
  CHECK(j["manifest"]["command"] == "region");
  CHECK(j["channel"]["variant"] == "direct_link");
  REQUIRE(j["samples"].size() == 3);
  CHECK(j["samples"][0]["k"] == 0.0);
  CHECK(j["samples"][2]["k"] == "inf");
  CHECK(j["samples"][1]["R_a"].get<double>() == doctest::Approx(1.9014840).epsilon(1e-6));
  CHECK(j["samples"][1].contains("schedule"));
  CHECK(json::parse(io::region_to_json(r))["manifest"].is_object());
  CHECK_THROWS_AS(io::region_to_json(r, "[1]"), ValidationError);
}

TEST_CASE("containment report output") {
  const auto ch = channel_from_caption("II");
  const auto outer = regions::compute_region(regions::Kind::outer, ch, {1.0});
  const auto inner = regions::compute_region(regions::Kind::cf_cmac, ch, {1.0});
  const auto rep = regions::contains(outer, inner, 1e-6);
  const auto ls = lines_of(io::report_to_csv(rep));
  REQUIRE(ls.size() == 4);
  CHECK(ls[0].find("margin") != std::string::npos);
  const auto j = json::parse(io::report_to_json(rep));
  CHECK(j["pass"] == true);
  CHECK(j["entries"].size() == 3);
  CHECK(j["outer"] == "outer");
  CHECK(j["inner"] == "cf-cmac");
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "diamond_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "x.txt").string();
  io::write_text(path, "hello\n");
  CHECK(io::read_text(path) == "hello\n");
  CHECK_THROWS_AS(io::read_text((dir / "missing.txt").string()), IoError);
  CHECK_THROWS_AS(io::write_text((dir / "no" / "such" / "f").string(), "x"), IoError);
  CHECK_THROWS_AS(io::load_channel((dir / "missing.json").string()), IoError);
  io::write_text(path, R"({"variant": "plain", "snr_db": {"a1": 15, "a2": 10, "b1": 10, "b2": 15}})");
  CHECK(io::load_channel(path) == channel_from_caption("I"));
  std::filesystem::remove_all(dir);
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hopfduet/cli/commands.hpp"
#include "hopfduet/cli/config.hpp"
#include "hopfduet/cli/output.hpp"
#include "hopfduet/errors.hpp"

using namespace hopfduet;
using namespace hopfduet::cli;
using nlohmann::json;

TEST_CASE("config parsing and validation") {
  SUBCASE("unknown keys rejected at every level") {
    CHECK_THROWS_AS((void)parse_config(json::parse(R"({"bogus": 1})")), ConfigError);
    CHECK_THROWS_AS((void)parse_config(json::parse(R"({"wc": {"nope": 1}})")), ConfigError);
    CHECK_THROWS_AS(
        (void)parse_config(json::parse(R"({"integrator": {"speed": "fast"}})")),
        ConfigError);
    CHECK_THROWS_AS(
        (void)parse_config(json::parse(R"({"output": {"formats": ["xlsx"]}})")),
        ConfigError);
  }
  SUBCASE("wc block with preset and overrides") {
    const auto rc =
        parse_config(json::parse(R"({"wc": {"preset": "paperP", "eps": 0.05,
                                            "lambda": 3.05, "b_sp": -0.03}})"));
    REQUIRE(rc.wc_params.has_value());
    CHECK(rc.wc_params->a == 7.0);
    CHECK(rc.wc_params->eps == 0.05);
    CHECK(rc.wc_params->b_sp == -0.03);
    CHECK_THROWS_AS((void)wc::preset_by_name("nope"), ConfigError);
  }
  SUBCASE("forcing block") {
    const auto rc = parse_config(json::parse(
        R"({"wc": {"preset": "paperP", "forcing": {"A": 0.4, "f": 2.5, "h": 0, "n": 5}}})"));
    REQUIRE(rc.forcing.has_value());
    CHECK(rc.forcing->A == 0.4);
    CHECK_THROWS_AS((void)parse_config(json::parse(
                        R"({"wc": {"preset": "paperP", "forcing": {"A": -1}}})")),
                    ConfigError);
  }
  SUBCASE("hash is canonical and sensitive") {
    const auto a = config_hash(json::parse(R"({"b": 1, "a": 2})"));
    const auto b = config_hash(json::parse(R"({"a": 2, "b": 1})"));
    const auto c = config_hash(json::parse(R"({"a": 2, "b": 2})"));
    CHECK(a == b);
    CHECK(a != c);
  }
}

TEST_CASE("csv formatting") {
  CHECK(format_g12(1.0) == "1");
  CHECK(format_g12(0.1) == "0.1");
  CHECK(format_g12(1.0731614440562136) == "1.07316144406");
  CsvWriter w("a,b", "deadbeef");
  w.numeric_row({1.5, -2.0});
  CHECK(w.text() == "# hopfduet schema=1 config=deadbeef\na,b\n1.5,-2\n");
}

TEST_CASE("wc extract command writes a loadable coefficient file") {
  const auto tmp = std::filesystem::temp_directory_path() / "hopfduet_test_extract";
  std::filesystem::remove_all(tmp);
  auto rc = parse_config(json::parse(R"({"wc": {"preset": "paperP", "b_sp": -0.03}})"));
  rc.output.directory = tmp;
  const auto files = cmd_wc_extract(rc);
  REQUIRE(files.size() == 3);
  std::ifstream in(files[0]);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto c = coefficients_from_json(text);
  CHECK(c.omega == doctest::Approx(1.073).epsilon(1e-3));
  CHECK(c.beta_eps[0].real() == doctest::Approx(0.0047619).epsilon(1e-3));
  std::filesystem::remove_all(tmp);
}

TEST_CASE("nf classify command reports the coexistence region") {
  const auto tmp = std::filesystem::temp_directory_path() / "hopfduet_test_classify";
  std::filesystem::remove_all(tmp);
  json cfg;
  cfg["nf"]["coefficients"] = json::parse(to_json(
      NormalFormCoefficients::create(1.073, {-21.94, -20.94},
                                     {Complex{0, 0}, Complex{0, 0}, Complex{8.72, 6.57},
                                      Complex{-23.2, -45.46}},
                                     {Complex{0.0, 0.246}, Complex{-13.05, 18.06},
                                      Complex{6.52, -5.52}, Complex{13.81, 10.16}})));
  cfg["nf"]["lambda"] = 0.008;
  cfg["nf"]["eps"] = 0.05;
  auto rc = parse_config(cfg);
  rc.output.directory = tmp;
  const auto files = cmd_nf_classify(rc);
  REQUIRE(files.size() == 1);
  std::ifstream in(files[0]);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("AP+IP") != std::string::npos);
  std::filesystem::remove_all(tmp);
}

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/io.hpp"

using namespace qsl;

TEST_CASE("format_number") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(2.23606797749979) == "2.2360679775");
  CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("table csv and json") {
  Table t({"eps", "branch"});
  t.add_row({0.5, std::string("ML")});
  t.add_row({1.0 / 3.0, std::string("Heisenberg")});
  CHECK_ERRC(t.add_row({0.1}), Errc::OutOfRange);
  CHECK(t.rows() == 2);

  std::ostringstream csv;
  t.write_csv(csv);
  CHECK(csv.str() == "eps,branch\n0.5,ML\n0.333333333333,Heisenberg\n");

  std::ostringstream js;
  t.write_json(js);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j.at("eps").size() == 2);
  CHECK(j.at("eps")[1].get<double>() == 0.333333333333);
  CHECK(j.at("branch")[0] == "ML");
}

TEST_CASE("parse pure, ensemble, density and composite states") {
  const StateInput p = parse_state_text(R"({"levels": [0, 1], "amplitudes_re": [0.6, 0], "amplitudes_im": [0, 0.8]})");
  REQUIRE(std::holds_alternative<PureState>(p));
  CHECK(std::get<PureState>(p).weights()[1] == doctest::Approx(0.64));

  const StateInput e = parse_state_text(R"({"probs": [0.5, 0.5], "states": [
      {"levels": [0, 1], "amplitudes_re": [1, 0]},
      {"levels": [0, 1], "amplitudes_re": [0, 1]}]})");
  REQUIRE(std::holds_alternative<DensityMatrix>(e));
  CHECK(std::get<DensityMatrix>(e).purity() == doctest::Approx(0.5));

  const StateInput d = parse_state_text(R"({"levels": [0, 2], "rho_re": [[0.5, 0.5], [0.5, 0.5]]})");
  REQUIRE(std::holds_alternative<DensityMatrix>(d));
  CHECK(std::get<DensityMatrix>(d).mean_energy() == doctest::Approx(1.0));

  const StateInput c = parse_state_text(R"({"factors": [
      {"levels": [0, 1], "amplitudes_re": [0.6, 0.8]},
      {"levels": [0, 1], "amplitudes_re": [1, 0]}]})");
  REQUIRE(std::holds_alternative<CompositeState>(c));
  CHECK(std::get<CompositeState>(c).is_separable());

  const StateInput j = parse_state_text(R"({"joint": {"subsystem_levels": [[0, 1], [0, 1]],
      "amplitudes_re": [0.8, 0, 0, 0.6]}})");
  REQUIRE(std::holds_alternative<CompositeState>(j));
  CHECK_FALSE(std::get<CompositeState>(j).is_separable());
  CHECK(mean_energy(std::get<CompositeState>(j).joint()) == doctest::Approx(2 * 0.36));
}

TEST_CASE("parse errors") {
  CHECK_ERRC(parse_state_text("not json"), Errc::Parse);
  CHECK_ERRC(parse_state_text("[]"), Errc::Parse);
  CHECK_ERRC(parse_state_text(R"({"levels": [0, 1]})"), Errc::Parse);
  CHECK_ERRC(parse_state_text(R"({"levels": [0, "x"], "amplitudes_re": [1, 0]})"), Errc::Parse);
  CHECK_ERRC(parse_state_text(R"({"levels": [0, 1], "amplitudes_re": [1, 0], "amplitudes_im": [0]})"), Errc::Parse);
  CHECK_ERRC(parse_state_text(R"({"levels": [0, 1], "amplitudes_re": [1, 1]})"), Errc::InvalidState);
  CHECK_ERRC(parse_state_text(R"({"probs": [0.2, 0.2], "states": [
      {"levels": [0, 1], "amplitudes_re": [1, 0]},
      {"levels": [0, 1], "amplitudes_re": [0, 1]}]})"),
             Errc::BadProbabilities);
  CHECK_ERRC(parse_state_text(R"({"levels": [0, 1], "rho_re": [[1, 2], [0, 0]]})"), Errc::NotHermitian);
  CHECK_ERRC(parse_state_file("/nonexistent/state.json"), Errc::Parse);
}

TEST_CASE("parse_state_file round trip") {
  const std::string path = "test_io_state.json";
  {
    std::ofstream f(path);
    f << R"({"levels": [0, 1], "amplitudes_re": [1, 1]})";
  }
  CHECK_ERRC(parse_state_file(path), Errc::InvalidState);
  {
    std::ofstream f(path);
    f << R"({"levels": [0, 1], "amplitudes_re": [0.6, 0.8]})";
  }
  CHECK(std::holds_alternative<PureState>(parse_state_file(path)));
  std::remove(path.c_str());
}

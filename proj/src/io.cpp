#include "qsl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qsl/error.hpp"

namespace qsl {

using nlohmann::json;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw Error(Errc::OutOfRange, "row width does not match header");
  rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const Table::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t j = 0; j < columns_.size(); ++j) os << (j ? "," : "") << columns_[j];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << cell_text(row[j]);
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  json out = json::object();
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    json col = json::array();
    for (const auto& row : rows_) {
      if (const auto* d = std::get_if<double>(&row[j])) {
        // same 12 digits as the CSV, so both formats carry identical values
        col.push_back(std::isfinite(*d) ? json(std::stod(format_number(*d))) : json(format_number(*d)));
      } else {
        col.push_back(std::get<std::string>(row[j]));
      }
    }
    out[columns_[j]] = std::move(col);
  }
  os << out.dump(2) << '\n';
}

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::Parse, what); }

std::vector<double> numbers(const json& j, const char* key, bool required = true) {
  if (!j.contains(key)) {
    if (required) parse_error(std::string("missing field \"") + key + "\"");
    return {};
  }
  const json& a = j.at(key);
  if (!a.is_array()) parse_error(std::string("field \"") + key + "\" must be an array");
  std::vector<double> v;
  for (const json& x : a) {
    if (!x.is_number()) parse_error(std::string("field \"") + key + "\" must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<cplx> complex_amplitudes(const json& j, std::size_t n) {
  const auto re = numbers(j, "amplitudes_re");
  auto im = numbers(j, "amplitudes_im", false);
  if (im.empty()) im.assign(re.size(), 0.0);
  if (re.size() != n || im.size() != n) parse_error("amplitude count does not match level count");
  std::vector<cplx> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = cplx(re[i], im[i]);
  return a;
}

PureState pure_from(const json& j) {
  if (!j.is_object()) parse_error("state must be an object");
  auto levels = numbers(j, "levels");
  auto amps = complex_amplitudes(j, levels.size());
  return PureState(EnergySpectrum(std::move(levels)), std::move(amps));
}

std::vector<std::vector<double>> matrix(const json& j, const char* key, std::size_t n, bool required) {
  if (!j.contains(key)) {
    if (required) parse_error(std::string("missing field \"") + key + "\"");
    return std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0));
  }
  const json& rows = j.at(key);
  if (!rows.is_array() || rows.size() != n) parse_error(std::string("\"") + key + "\" must be an n x n array");
  std::vector<std::vector<double>> m;
  for (const json& r : rows) {
    json wrap = {{"row", r}};
    auto v = numbers(wrap, "row");
    if (v.size() != n) parse_error(std::string("\"") + key + "\" must be an n x n array");
    m.push_back(std::move(v));
  }
  return m;
}

}  // namespace

StateInput parse_state_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_error("top level must be an object");

  try {
    if (j.contains("probs")) {
      const auto probs = numbers(j, "probs");
      if (!j.contains("states") || !j.at("states").is_array()) parse_error("ensemble needs a \"states\" array");
      std::vector<PureState> states;
      for (const json& s : j.at("states")) states.push_back(pure_from(s));
      return ensemble_to_density(probs, states);
    }
    if (j.contains("rho_re")) {
      auto levels = numbers(j, "levels");
      const std::size_t n = levels.size();
      const auto re = matrix(j, "rho_re", n, true);
      const auto im = matrix(j, "rho_im", n, false);
      ComplexMatrix m(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
      }
      return DensityMatrix(EnergySpectrum(std::move(levels)), HermitianMatrix(std::move(m)));
    }
    if (j.contains("factors")) {
      if (!j.at("factors").is_array()) parse_error("\"factors\" must be an array");
      std::vector<PureState> factors;
      for (const json& s : j.at("factors")) factors.push_back(pure_from(s));
      if (factors.empty()) parse_error("\"factors\" must not be empty");
      return composite_product(factors);
    }
    if (j.contains("joint")) {
      const json& jt = j.at("joint");
      if (!jt.is_object() || !jt.contains("subsystem_levels") || !jt.at("subsystem_levels").is_array()) {
        parse_error("\"joint\" needs \"subsystem_levels\"");
      }
      std::vector<EnergySpectrum> subs;
      std::size_t dim = 1;
      for (const json& lv : jt.at("subsystem_levels")) {
        json wrap = {{"levels", lv}};
        subs.emplace_back(numbers(wrap, "levels"));
        dim *= subs.back().size();
      }
      auto amps = complex_amplitudes(jt, dim);
      return CompositeState::from_joint(std::move(subs), std::move(amps));
    }
    return pure_from(j);
  } catch (const json::exception& e) {
    parse_error(std::string("malformed state: ") + e.what());
  }
}

StateInput parse_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state_text(ss.str());
}

}  // namespace qsl

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/invariants.hpp"
#include "pgn/nsystem.hpp"
#include "pgn/search.hpp"
#include "pgn/verify.hpp"

namespace pgn::io {

using json = nlohmann::ordered_json;

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json load_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("bad JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational rational(const json& j) {
  if (!j.is_string()) fail(ErrorCode::parse_error, "rationals are written as \"p/q\" strings");
  return Rational::parse(j.get<std::string>());
}

inline int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(ErrorCode::parse_error, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline Vec vec(const json& j) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "expected an array of rationals");
  Vec out;
  for (const auto& x : j) out.push_back(rational(x));
  return out;
}

inline json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

}  // namespace detail

inline json to_json(const NSystem& sys) {
  json segs = json::array();
  for (const auto& s : sys.segments) segs.push_back({{"end", s.end.str()}, {"active", s.active}});
  return {{"n", sys.n}, {"q0", sys.q0.str()}, {"initial", detail::vec_json(sys.initial)}, {"segments", segs}};
}

// Structure only; callers run validate() for the axioms.
inline NSystem system_from_json(const json& j) {
  NSystem sys;
  sys.n = detail::integer(j, "n");
  sys.q0 = detail::rational(detail::field(j, "q0"));
  sys.initial = detail::vec(detail::field(j, "initial"));
  const json& segs = detail::field(j, "segments");
  if (!segs.is_array()) fail(ErrorCode::parse_error, "segments must be an array");
  for (const auto& s : segs) sys.segments.push_back({detail::rational(detail::field(s, "end")), detail::integer(s, "active")});
  return sys;
}

inline json to_json(const SelfSimilarSeed& seed) {
  json pts = json::array();
  for (const auto& p : seed.seq.points) pts.push_back(detail::vec_json(p));
  return {{"m", seed.m()}, {"n", seed.n()}, {"rho", seed.rho.str()}, {"points", pts}};
}

inline SelfSimilarSeed seed_from_json(const json& j) {
  int m = detail::integer(j, "m"), n = detail::integer(j, "n");
  Rational rho = detail::rational(detail::field(j, "rho"));
  const json& pts = detail::field(j, "points");
  if (!pts.is_array()) fail(ErrorCode::parse_error, "points must be an array");
  std::vector<Vec> points;
  for (const auto& p : pts) {
    points.push_back(detail::vec(p));
    if (static_cast<int>(points.back().size()) != n) fail(ErrorCode::parse_error, "every point needs n coordinates");
  }
  return make_seed(points, m, rho);
}

inline json to_json(const SpectrumPoint& p, int digits = 12) {
  return {{"alpha", p.alpha.str()}, {"beta", p.beta.str()}, {"alpha_dec", p.alpha.decimal(digits)},
          {"beta_dec", p.beta.decimal(digits)}};
}

inline json to_json(const ValidationReport& r) {
  json out{{"valid", r.ok()}};
  if (!r.ok()) {
    out["rule"] = r.rule_id();
    out["where"] = r.where ? json(r.where->str()) : json(nullptr);
    out["message"] = r.message;
  }
  return out;
}

inline json to_json(const AuditReport& rep) {
  json checks = json::array();
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    if (c.status == CheckStatus::fail) ++failed;
    json e{{"rule", c.rule}, {"location", c.location}, {"status", status_name(c.status)}};
    e["slack"] = c.slack ? json(c.slack->str()) : json(nullptr);
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  return {{"ok", rep.ok()}, {"violations", failed}, {"checks", checks}};
}

inline json error_json(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

// CSV

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    fail(ErrorCode::parse_error, "CSV has no column '" + name + "'");
  }
  bool has(const std::string& name) const {
    for (const auto& h : header)
      if (h == name) return true;
    return false;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) fail(ErrorCode::parse_error, "CSV row width differs from header: " + line);
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) fail(ErrorCode::parse_error, "empty CSV");
  return t;
}

inline std::string join_csv(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + "\n";
}

struct FamilyRow {
  Rational g;
  int s = 0;  // 0 when the family has no period parameter
  SpectrumPoint point;
  std::string tag;
};

inline std::string family_csv(const std::vector<FamilyRow>& rows, int digits = 12) {
  std::string out = join_csv({"g", "s", "alpha", "beta", "alpha_dec", "beta_dec", "family_tag"});
  for (const auto& r : rows)
    out += join_csv({r.g.str(), std::to_string(r.s), r.point.alpha.str(), r.point.beta.str(), r.point.alpha.decimal(digits),
                     r.point.beta.decimal(digits), r.tag});
  return out;
}

inline std::string probe_csv(const std::vector<ProbeRow>& rows, int digits = 12) {
  std::string out = join_csv({"m", "n", "g", "s", "rho", "pattern", "alpha_lo", "alpha_hi", "beta", "alpha_lo_dec",
                              "alpha_hi_dec", "beta_dec"});
  for (const auto& r : rows)
    out += join_csv({std::to_string(r.m), std::to_string(r.n), r.g.str(), std::to_string(r.pattern.s()), r.rho.str(),
                     r.pattern.str(), r.alpha_lo.str(), r.alpha_hi.str(), r.beta.str(), to_decimal(r.alpha_lo, digits),
                     to_decimal(r.alpha_hi, digits), to_decimal(r.beta, digits)});
  return out;
}

}  // namespace pgn::io

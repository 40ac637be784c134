#include "dynlforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dynlforge/errors.hpp"
#include "json.hpp"

namespace dynlforge {

using nlohmann::json;

namespace {

// Finite doubles go through the shortest round-trip representation; the
// non-finite ones are spelled as strings.
json encode(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("invalid number '" + s + "'");
  }
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

json encode_vec(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(encode(x));
  return out;
}

std::vector<double> decode_vec(const json& j) {
  std::vector<double> out;
  for (const json& x : j) out.push_back(decode(x));
  return out;
}

bool same(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || (a == b && std::signbit(a) == std::signbit(b));
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

}  // namespace

ResidualRecord ResidualRecord::make(int point, const VecD& p, std::string name, double value, double tol,
                                    bool lower_bound) {
  ResidualRecord r;
  r.point = point;
  r.p.assign(p.data(), p.data() + p.size());
  r.residual = std::move(name);
  r.value = value;
  r.tol = tol;
  r.lower_bound = lower_bound;
  r.pass = lower_bound ? value >= tol : value <= tol;
  return r;
}

double ResidualReport::max_value() const {
  double m = 0.0;
  for (const auto& r : records)
    if (!r.lower_bound) m = std::max(m, std::isnan(r.value) ? std::numeric_limits<double>::infinity() : r.value);
  return m;
}

double ResidualReport::mean_value() const {
  double s = 0.0;
  int k = 0;
  for (const auto& r : records)
    if (!r.lower_bound) s += r.value, ++k;
  return k == 0 ? 0.0 : s / k;
}

bool ResidualReport::verdict() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return 2 * static_cast<int>(skipped.size()) <= points;
}

std::string ResidualReport::to_jsonl() const {
  std::ostringstream out;
  json head = {{"type", "header"},  {"setup", setup_name}, {"setup_hash", setup_hash},
               {"suite", suite},    {"seed", seed},       {"engine_version", engine_version},
               {"points", points}};
  out << head.dump() << '\n';
  for (const auto& r : records) {
    json j = {{"type", "record"},
              {"point", r.point},
              {"p", encode_vec(r.p)},
              {"residual", r.residual},
              {"value", encode(r.value)},
              {"tol", encode(r.tol)},
              {"bound", r.lower_bound ? "min" : "max"},
              {"pass", r.pass}};
    out << j.dump() << '\n';
  }
  for (const auto& s : skipped) {
    json j = {{"type", "skip"},
              {"point", s.point},
              {"p", encode_vec(s.p)},
              {"reason", s.reason},
              {"condition", encode(s.condition)}};
    out << j.dump() << '\n';
  }
  json summary = {{"type", "summary"},
                  {"setup", setup_name},
                  {"setup_hash", setup_hash},
                  {"suite", suite},
                  {"seed", seed},
                  {"engine_version", engine_version},
                  {"points", points},
                  {"records", records.size()},
                  {"skipped", skipped.size()},
                  {"max", encode(max_value())},
                  {"mean", encode(mean_value())},
                  {"verdict", verdict() ? "pass" : "fail"}};
  out << summary.dump() << '\n';
  return out.str();
}

ResidualReport ResidualReport::from_jsonl(const std::string& text) {
  ResidualReport rep;
  std::istringstream in(text);
  std::string line;
  bool have_summary = false;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        rep.setup_name = j.at("setup").get<std::string>();
        rep.setup_hash = j.at("setup_hash").get<std::string>();
        rep.suite = j.at("suite").get<std::string>();
        rep.seed = j.at("seed").get<std::uint64_t>();
        rep.engine_version = j.at("engine_version").get<std::string>();
        rep.points = j.at("points").get<int>();
      } else if (type == "record") {
        ResidualRecord r;
        r.point = j.at("point").get<int>();
        r.p = decode_vec(j.at("p"));
        r.residual = j.at("residual").get<std::string>();
        r.value = decode(j.at("value"));
        r.tol = decode(j.at("tol"));
        r.lower_bound = j.at("bound").get<std::string>() == "min";
        r.pass = j.at("pass").get<bool>();
        rep.records.push_back(std::move(r));
      } else if (type == "skip") {
        SkipRecord s;
        s.point = j.at("point").get<int>();
        s.p = decode_vec(j.at("p"));
        s.reason = j.at("reason").get<std::string>();
        s.condition = decode(j.at("condition"));
        rep.skipped.push_back(std::move(s));
      } else if (type == "summary") {
        have_summary = true;
      } else {
        throw ParseError("unknown line type '" + type + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  if (!have_summary) throw ParseError("report has no summary line");
  return rep;
}

bool operator==(const ResidualRecord& a, const ResidualRecord& b) {
  return a.point == b.point && same(a.p, b.p) && a.residual == b.residual && same(a.value, b.value) &&
         same(a.tol, b.tol) && a.lower_bound == b.lower_bound && a.pass == b.pass;
}

bool operator==(const SkipRecord& a, const SkipRecord& b) {
  return a.point == b.point && same(a.p, b.p) && a.reason == b.reason && same(a.condition, b.condition);
}

bool operator==(const ResidualReport& a, const ResidualReport& b) {
  return a.setup_name == b.setup_name && a.setup_hash == b.setup_hash && a.suite == b.suite &&
         a.engine_version == b.engine_version && a.seed == b.seed && a.points == b.points &&
         a.records == b.records && a.skipped == b.skipped;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string setup_hash(const QuasiBialgebra& g) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(setup_to_json(g, -1))));
  return buf;
}

}  // namespace dynlforge

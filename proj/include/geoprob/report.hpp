// Machine-readable reports. JSON objects have sorted keys and floats are
// written in shortest round-trip form, so identical inputs give identical bytes.
#pragma once

#include "geoprob/constants.hpp"
#include "geoprob/crofton.hpp"
#include "geoprob/mc.hpp"
#include "geoprob/pi_rational.hpp"
#include "geoprob/stats.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

namespace geoprob {

using Json = nlohmann::json;

/// Shortest decimal that parses back to the same double; locale independent.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

inline Json to_json(const PiRational& v) {
  return Json{{"num", v.num().str()},
              {"den", v.den().str()},
              {"pi_half_power", v.pi_half_power()},
              {"text", v.to_string()},
              {"value", v.to_double()}};
}

inline Json to_json(const PiSum& v) {
  Json terms = Json::array();
  for (const auto& t : v.terms()) terms.push_back(to_json(t));
  return Json{{"terms", terms}, {"text", v.to_string()}, {"value", v.to_double()}};
}

inline Json to_json(const Estimate& e) {
  return Json{{"experiment", e.experiment},
              {"mean", e.mean},
              {"std_error", e.std_error},
              {"n", e.n},
              {"ci95", Json::array({e.ci95.lo, e.ci95.hi})},
              {"seed", e.seed},
              {"workers", e.workers},
              {"degenerate", e.degenerate}};
}

inline Json to_json(const HistogramGof& h) {
  return Json{{"law", h.law},
              {"support", Json::array({h.lo, h.hi})},
              {"edges", h.edges},
              {"observed", h.observed},
              {"expected", h.expected},
              {"chi2", h.chi2},
              {"dof", h.dof},
              {"threshold", h.threshold},
              {"pass", h.pass()},
              {"n", h.n},
              {"degenerate", h.degenerate},
              {"mean", h.mean},
              {"mean_std_error", h.mean_std_error},
              {"seed", h.seed},
              {"workers", h.workers}};
}

inline Json to_json(const MomentResult& m) {
  return Json{{"body", m.body}, {"n", m.n}, {"value", m.value}, {"error", m.error}};
}

/// Pass/fail outcome of one verification check.
struct Check {
  std::string id;    // acceptance criterion number
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

inline Json to_json(const Check& c) {
  return Json{{"id", c.id},           {"name", c.name},   {"value", c.value},
              {"reference", c.reference}, {"tolerance", c.tolerance}, {"pass", c.pass},
              {"skipped", c.skipped}, {"detail", c.detail}};
}

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  Json results = Json::array();
  std::vector<Check> checks;
  bool include_timestamp = true;

  void add(const std::string& name, Json value) {
    results.push_back(Json{{"name", name}, {"value", std::move(value)}});
  }

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass && !c.skipped) return false;
    }
    return true;
  }

  Json to_json() const {
    Json j{{"command", command}, {"seed", seed}, {"results", results}};
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back(geoprob::to_json(c));
    j["checks"] = cs;
    j["pass"] = all_pass();
    if (include_timestamp) j["timestamp"] = utc_timestamp();
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

  static std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }
};

// ---------------------------------------------------------------------------
// CSV

inline void write_csv(std::ostream& os, const HistogramGof& h) {
  os << "bin_lo,bin_hi,observed,expected\n";
  for (std::size_t b = 0; b < h.observed.size(); ++b) {
    os << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
       << h.observed[b] << ',' << format_double(h.expected[b]) << '\n';
  }
}

inline void write_csv(std::ostream& os, const Estimate& e, std::optional<double> exact) {
  os << "experiment,mean,std_error,n,ci95_lo,ci95_hi,seed,workers,degenerate,exact,rel_error\n";
  os << e.experiment << ',' << format_double(e.mean) << ',' << format_double(e.std_error) << ','
     << e.n << ',' << format_double(e.ci95.lo) << ',' << format_double(e.ci95.hi) << ','
     << e.seed << ',' << e.workers << ',' << e.degenerate << ',';
  if (exact) {
    os << format_double(*exact) << ',' << format_double(std::abs(e.mean - *exact) / std::abs(*exact));
  } else {
    os << ',';
  }
  os << '\n';
}

}  // namespace geoprob

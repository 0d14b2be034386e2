#include "geoprob/report.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <limits>
#include <sstream>

namespace {

using namespace geoprob;

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3, 35.0 / 48, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Json, PiRationalCarriesExactParts) {
  const Json j = to_json(kingman_v(4));
  EXPECT_EQ(j.at("num"), "9");
  EXPECT_EQ(j.at("den"), "715");
  EXPECT_EQ(j.at("pi_half_power"), 0);
  const Json k = to_json(sylvester_probability(2));
  EXPECT_EQ(k.at("terms").size(), 2u);
  EXPECT_NEAR(k.at("value").get<double>(), sylvester_probability(2).to_double(), 1e-15);
}

TEST(Report, SortedKeysAndDeterministicBytes) {
  Report r;
  r.command = "estimate offcut";
  r.seed = 7;
  r.include_timestamp = false;
  r.add("zeta", 1.5);
  r.add("alpha", to_json(PiRational(1, 3)));
  r.checks.push_back(Check{"1", "x", 1.0, 1.0, 0.0, true, false, ""});
  const std::string a = r.dump();
  EXPECT_EQ(a, r.dump());
  const auto parsed = Json::parse(a);
  std::vector<std::string> keys;
  for (auto it = parsed.begin(); it != parsed.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(a.find("timestamp"), std::string::npos);
  EXPECT_TRUE(parsed.at("pass").get<bool>());
  // key order in the text follows sorted order
  EXPECT_LT(a.find("\"checks\""), a.find("\"command\""));
  EXPECT_LT(a.find("\"command\""), a.find("\"results\""));
}

TEST(Report, FailedCheckFailsReportButSkippedDoesNot) {
  Report r;
  r.checks.push_back(Check{"8", "skipped", 0, 0, 0, false, true, ""});
  EXPECT_TRUE(r.all_pass());
  r.checks.push_back(Check{"9", "failed", 0, 0, 0, false, false, ""});
  EXPECT_FALSE(r.all_pass());
  r.include_timestamp = true;
  EXPECT_TRUE(r.to_json().contains("timestamp"));
}

TEST(Csv, EstimateAndHistogramLayouts) {
  const auto e = estimate_center_triangle(10000, 1);
  std::ostringstream os;
  write_csv(os, e, reference_constant("center_triangle").to_double());
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "experiment,mean,std_error,n,ci95_lo,ci95_hi,seed,workers,degenerate,exact,rel_error");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);

  const auto h = max_radius_gof(100000, 1, 1, 10);
  std::ostringstream hs;
  write_csv(hs, h);
  const std::string t = hs.str();
  EXPECT_EQ(t.substr(0, t.find('\n')), "bin_lo,bin_hi,observed,expected");
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 11);
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <jladder/report.hpp>

using namespace jladder;

namespace {

ExperimentReport sample() {
  ExperimentReport r;
  r.meta = {"1.0.0", "theorem-2.1", "abcdef0123456789", "60adfa0a1e437aae", "2024-01-01T00:00:00Z",
            "2024-01-01T00:00:05Z"};
  r.records.push_back(make_record("thm-2.1", 1e5, 754.4470461, 1, 2, 7614.92738336763, 7641.15059902813, 8.3e-11));
  r.records.push_back({"odd, \"quoted\"\nlabel", 1e4, 0.0, 0, 0, std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::denorm_min()});
  r.records.push_back({"tiny", 5e-324, 1e308, -3, 7, 0.1, 0.2, 0.30000000000000004, 0.0});
  r.check("identity", "identity-6.1", true, true, "|r-1| = 1e-12");
  r.check("trend", "thm-2.1", false, false, "not monotone");
  return r;
}

}  // namespace

TEST(Record, RatioOfZeroRhsIsNan) {
  EXPECT_TRUE(std::isnan(make_record("x", 1, 1, 0, 0, 1.0, 0.0, 0.0).ratio));
  EXPECT_DOUBLE_EQ(make_record("x", 1, 1, 0, 0, 3.0, 2.0, 0.0).ratio, 1.5);
}

TEST(Csv, RoundTripsEveryValueBitForBit) {
  const auto r = sample();
  const auto text = to_csv(r.records);
  const auto back = from_csv(text);
  ASSERT_EQ(back.size(), r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_TRUE(same_values(back[i], r.records[i])) << i;
  EXPECT_EQ(to_csv(back), text);
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
}

TEST(Csv, Errors) {
  EXPECT_THROW(from_csv(""), FormatError);
  EXPECT_THROW(from_csv("label,T\nx,1\n"), FormatError);
  const std::string h = std::string(kCsvHeader) + "\n";
  EXPECT_THROW(from_csv(h + "a,1,2,3\n"), FormatError);
  EXPECT_THROW(from_csv(h + "a,1,2,x,4,5,6,7,8\n"), FormatError);
  EXPECT_THROW(from_csv(h + "a,1,2,3,4,5,6,7,8zz\n"), FormatError);
  EXPECT_THROW(from_csv(h + "\"a,1,2,3,4,5,6,7,8\n"), FormatError);
  EXPECT_TRUE(from_csv(h).empty());
}

TEST(Json, RoundTripsReport) {
  const auto r = sample();
  const auto text = to_json(r);
  const auto back = from_json(text);
  EXPECT_EQ(back.meta, r.meta);
  EXPECT_EQ(back.checks, r.checks);
  ASSERT_EQ(back.records.size(), r.records.size());
  EXPECT_TRUE(same_values(back.records[0], r.records[0]));
  EXPECT_TRUE(same_values(back.records[2], r.records[2]));
  // non-finite reals are written as null and read back as NaN
  EXPECT_TRUE(std::isnan(back.records[1].rhs));
  EXPECT_TRUE(std::isnan(back.records[1].ratio));
  EXPECT_EQ(back.records[1].est_error, std::numeric_limits<double>::denorm_min());
  EXPECT_EQ(back.records[1].label, r.records[1].label);
  EXPECT_EQ(to_json(back), to_json(from_json(to_json(back))));
}

TEST(Json, IdenticalReportsGiveIdenticalBytes) {
  EXPECT_EQ(to_json(sample()), to_json(sample()));
  EXPECT_EQ(to_csv(sample().records), to_csv(sample().records));
}

TEST(Json, Errors) {
  EXPECT_THROW(from_json("{"), FormatError);
  EXPECT_THROW(from_json("{}"), FormatError);
  auto j = to_json_value(sample());
  j["format_version"] = 99;
  EXPECT_THROW(from_json(j.dump()), FormatError);
  j = to_json_value(sample());
  j["records"][0]["lhs"] = "text";
  EXPECT_THROW(from_json(j.dump()), FormatError);
}

TEST(Report, CheckBookkeeping) {
  auto r = sample();
  EXPECT_TRUE(r.hard_ok());
  EXPECT_FALSE(r.soft_ok());
  ExperimentReport more;
  more.check("x", "f", true, false);
  r.append(more);
  EXPECT_FALSE(r.hard_ok());
  EXPECT_EQ(r.checks.size(), 3u);
  EXPECT_FALSE(same_values(r, sample()));
  EXPECT_TRUE(same_values(sample(), sample()));
}

#include "invariant/schemas.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "invariant/text_format.hpp"
#include "test_support.hpp"

namespace invariant {
namespace {

Formula fixture(const char* name) { return parse(testing::read_fixture(name)); }

bool any_message_contains(const SchemaReport& r, std::string_view needle) {
  for (const auto& v : r.violations) {
    if (v.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(Catalog, ElevenDisjointComponents) {
  auto all = FestoComponentCatalog::all();
  EXPECT_EQ(all.size(), 11u);
  EXPECT_EQ(std::set<std::string_view>(all.begin(), all.end()).size(), 11u);
  for (auto a : FestoComponentCatalog::kActuators) EXPECT_FALSE(FestoComponentCatalog::is_sensor(a));
  for (auto s : FestoComponentCatalog::kSensors) EXPECT_FALSE(FestoComponentCatalog::is_actuator(s));
  EXPECT_FALSE(FestoComponentCatalog::contains("conveyorBelt"));
}

TEST(Fixtures, KinectStats) {
  auto r = validate_kinect(fixture("kinect_excerpt.txt"));
  EXPECT_TRUE(r.valid) << r.to_text();
  EXPECT_EQ(r.stats.at("points"), 10);
  EXPECT_EQ(r.stats.at("colors"), 10);
}

TEST(Fixtures, FestoStatsMatchTextCounts) {
  const std::string text = testing::read_fixture("festo_excerpt.txt");
  auto r = validate_festo(parse(text));
  EXPECT_TRUE(r.valid) << r.to_text();
  EXPECT_EQ(r.stats.at("events"), 28);
  for (auto name : FestoComponentCatalog::all()) {
    std::regex re("Component\\(" + std::string(name) + "\\)");
    auto n = std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator());
    EXPECT_EQ(r.stats.at("component." + std::string(name)), n) << name;
  }
}

TEST(Fixtures, TrainsStats) {
  auto r = validate_trains(fixture("trains_excerpt.txt"));
  EXPECT_TRUE(r.valid) << r.to_text();
  EXPECT_EQ(r.stats.at("time_points"), 10);
  EXPECT_EQ(r.stats.at("max_node"), 672);
  EXPECT_EQ(r.stats.at("sliding_window"), 1);
}

TEST(Fixtures, WeatherStats) {
  auto r = validate_weather(fixture("weather_excerpt.txt"));
  EXPECT_TRUE(r.valid) << r.to_text();
  EXPECT_EQ(r.stats.at("time_points"), 8);
}

TEST(Fixtures, EachAcceptedOnlyByItsOwnValidator) {
  const std::pair<const char*, Collection> cases[] = {
      {"kinect_excerpt.txt", Collection::Kinect},
      {"festo_excerpt.txt", Collection::Festo},
      {"trains_excerpt.txt", Collection::Trains},
      {"weather_excerpt.txt", Collection::Weather},
  };
  for (const auto& [name, expected] : cases) {
    auto f = fixture(name);
    for (Collection c : kAllCollections) EXPECT_EQ(validate(f, c).valid, c == expected) << name;
    EXPECT_EQ(detect_schema(f), expected) << name;
  }
}

std::string replace_first(std::string s, std::string_view from, std::string_view to) {
  auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

TEST(Invalid, UnknownFestoComponent) {
  auto text = replace_first(testing::read_fixture("festo_excerpt.txt"), "Component(vacuumGripperSol)",
                            "Component(conveyorBelt)");
  auto r = validate_festo(parse(text));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.stats.at("violations"), 1);
  EXPECT_TRUE(any_message_contains(r, "conveyorBelt"));
}

TEST(Invalid, FestoValueOutsideAdmissibleSet) {
  auto text = replace_first(testing::read_fixture("festo_excerpt.txt"), "ComponentState(5.5)", "ComponentState(6.0)");
  EXPECT_FALSE(validate_festo(parse(text)).valid);
}

TEST(Invalid, FestoTimeRunningBackwards) {
  auto f = parse(
      "BIGAND(List("
      "IMPLIES(AND(TimePoint(Wed Jul 27 09:11:29 UTC 2016),Component(loaderPickupLS)),ComponentState(5.0)),"
      "IMPLIES(AND(TimePoint(Wed Jul 27 09:11:28 UTC 2016),Component(loaderPickupLS)),ComponentState(5.5))))");
  EXPECT_FALSE(validate_festo(f).valid);
}

TEST(Invalid, TrainFrameWithNineNodes) {
  auto text = replace_first(testing::read_fixture("trains_excerpt.txt"), "OccupyNode(672), OccupyNode(1)))",
                            "OccupyNode(672)))");
  auto r = validate_trains(parse(text));
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.stats.at("violations"), 1);
}

TEST(Invalid, TrainTimestampsMustIncrease) {
  auto text = replace_first(testing::read_fixture("trains_excerpt.txt"), "TimePoint(1429188806417)",
                            "TimePoint(1429188806320)");
  EXPECT_FALSE(validate_trains(parse(text)).valid);
}

TEST(Invalid, BrokenSlidingWindowIsStatNotViolation) {
  auto text = replace_first(testing::read_fixture("trains_excerpt.txt"), "OccupyNode(1), OccupyNode(2)))",
                            "OccupyNode(1), OccupyNode(5)))");
  auto r = validate_trains(parse(text));
  EXPECT_TRUE(r.valid) << r.to_text();
  EXPECT_EQ(r.stats.at("sliding_window"), 0);
}

TEST(Invalid, WeatherIndexNotMultipleOfTen) {
  auto text = replace_first(testing::read_fixture("weather_excerpt.txt"), "ComponentState(770)",
                            "ComponentState(775)");
  auto r = validate_weather(parse(text));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.stats.at("violations"), 1);
}

TEST(Invalid, WeatherIndexOutOfRange) {
  auto text = replace_first(testing::read_fixture("weather_excerpt.txt"), "ComponentState(770)",
                            "ComponentState(1010)");
  EXPECT_FALSE(validate_weather(parse(text)).valid);
}

TEST(Invalid, WeatherMissingField) {
  auto f = parse(
      "BIGAND(List(IMPLIES(TimePoint(1st December 201511:04AM),BIGAND(List("
      "IMPLIES(Owner(ID),ComponentState(melbourne)), IMPLIES(Owner(Index),ComponentState(770)))))))");
  EXPECT_FALSE(validate_weather(f).valid);
}

TEST(Invalid, KinectColorOutOfRange) {
  auto text = replace_first(testing::read_fixture("kinect_excerpt.txt"), "ComponentState((41,49,39))",
                            "ComponentState((41,256,39))");
  EXPECT_FALSE(validate_kinect(parse(text)).valid);
}

TEST(Invalid, EmptyConclusionIsRejectedEverywhere) {
  auto f = make_implies(make_time_point(Timestamp::epoch_millis(1)), make_big_and({}));
  for (Collection c : kAllCollections) EXPECT_FALSE(validate(f, c).valid) << to_string(c);
  EXPECT_EQ(detect_schema(f), std::nullopt);
}

TEST(Detect, NoneForUnrelatedFormulas) {
  EXPECT_EQ(detect_schema(make_true()), std::nullopt);
  EXPECT_EQ(detect_schema(make_big_and({})), std::nullopt);  // vacuously valid for three schemas
  EXPECT_EQ(detect_schema(make_big_and({make_node(1)})), std::nullopt);
}

TEST(Report, ViolationListIsCappedButCounted) {
  std::vector<Formula> frames;
  for (int i = 0; i < 300; ++i) {
    frames.push_back(make_implies(make_time_point(Timestamp::epoch_millis(1000 + i)), make_big_and({make_node(1)})));
  }
  auto r = validate_trains(make_big_and(frames));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.violations.size(), SchemaReport::kMaxViolations);
  EXPECT_EQ(r.stats.at("violations"), 300);
  EXPECT_NE(r.to_text().find("200 more"), std::string::npos);
  EXPECT_EQ(r.to_key_values().rfind("collection=trains\nvalid=false\n", 0), 0u);
}

}  // namespace
}  // namespace invariant

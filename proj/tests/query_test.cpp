#include "invariant/query.hpp"

#include <gtest/gtest.h>

#include <regex>

#include "invariant/generators.hpp"
#include "invariant/schemas.hpp"
#include "invariant/text_format.hpp"
#include "test_support.hpp"

namespace invariant {
namespace {

Formula fixture(const char* name) { return parse(testing::read_fixture(name)); }

TEST(TimePoints, TrainsFixture) {
  auto times = time_points(fixture("trains_excerpt.txt"));
  ASSERT_EQ(times.size(), 10u);
  EXPECT_EQ(times.front(), Timestamp::epoch_millis(1429188806320));
  EXPECT_EQ(times[1], Timestamp::epoch_millis(1429188806417));
}

TEST(TimePoints, EveryCollection) {
  EXPECT_EQ(time_points(fixture("kinect_excerpt.txt")).size(), 1u);
  auto festo = time_points(fixture("festo_excerpt.txt"));
  ASSERT_EQ(festo.size(), 28u);
  EXPECT_EQ(festo[0], Timestamp::calendar("Wed Jul 27 09:11:28 UTC 2016"));
  auto weather = time_points(fixture("weather_excerpt.txt"));
  ASSERT_EQ(weather.size(), 8u);
  EXPECT_EQ(weather[3], Timestamp::calendar("3rd December 201511:07AM"));
}

TEST(TimePoints, RejectsNonDatasets) {
  EXPECT_THROW(time_points(make_big_and({})), NotADataset);
  EXPECT_THROW(time_points(make_true()), NotADataset);
}

TEST(ComponentSeries, StackEmptySensor) {
  auto series = component_series(fixture("festo_excerpt.txt"), "stackEmptySensor");
  std::vector<double> values;
  for (const auto& s : series) {
    EXPECT_EQ(s.component, "stackEmptySensor");
    values.push_back(s.value.as_number());
  }
  EXPECT_EQ(values, (std::vector<double>{80.0, 100.0, 80.0, 100.0}));
  EXPECT_TRUE(component_series(fixture("festo_excerpt.txt"), "conveyorBelt").empty());
}

TEST(ComponentSeries, PartitionsTheEventLog) {
  auto f = gen_festo({.seed = 3, .n_events = 1000});
  std::size_t total = 0;
  for (auto name : FestoComponentCatalog::all()) total += component_series(f, name).size();
  EXPECT_EQ(total, 1000u);
  EXPECT_THROW(component_series(fixture("trains_excerpt.txt"), "stackEmptySensor"), NotADataset);
}

TEST(Occupancy, StepSemantics) {
  auto f = fixture("trains_excerpt.txt");
  EXPECT_EQ(occupancy_at(f, 1429188806319), std::nullopt);
  std::set<std::int64_t> first{664, 665, 666, 667, 668, 669, 670, 671, 672, 1};
  EXPECT_EQ(occupancy_at(f, 1429188806320), first);
  EXPECT_EQ(occupancy_at(f, 1429188806416), first);
  std::set<std::int64_t> second{665, 666, 667, 668, 669, 670, 671, 672, 1, 2};
  EXPECT_EQ(occupancy_at(f, 1429188806417), second);
  auto last = occupancy_at(f, 1LL << 60);
  ASSERT_TRUE(last);
  EXPECT_EQ(last->size(), 10u);
  EXPECT_TRUE(last->contains(1));
  EXPECT_THROW(occupancy_at(fixture("weather_excerpt.txt"), 0), NotADataset);
}

TEST(Occupancy, AgreesWithLinearScan) {
  auto f = gen_trains({.seed = 21, .n_frames = 400});
  const auto& frames = f.as<node::BigAnd>()->items;
  auto time_of = [&](std::size_t i) {
    return frames[i].as<node::Implies>()->premise.as<node::TimePoint>()->value.millis();
  };
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> dist(time_of(0) - 500, time_of(frames.size() - 1) + 500);
  for (int i = 0; i < 300; ++i) {
    std::int64_t t = dist(rng);
    std::optional<std::size_t> expected;
    for (std::size_t j = 0; j < frames.size(); ++j) {
      if (time_of(j) <= t) expected = j;
    }
    auto got = occupancy_at(f, t);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (!expected) continue;
    std::set<std::int64_t> nodes;
    for (const auto& n : frames[*expected].as<node::Implies>()->conclusion.as<node::BigAnd>()->items) {
      nodes.insert(n.as<node::OccupyNode>()->id);
    }
    EXPECT_EQ(*got, nodes);
  }
}

TEST(UvSeries, StoredIntegerScaledDown) {
  auto series = uv_series(fixture("weather_excerpt.txt"));
  ASSERT_EQ(series.size(), 8u);
  EXPECT_EQ(series[0].index.stored, 770);
  EXPECT_DOUBLE_EQ(series[0].index.value(), 7.7);
  EXPECT_EQ(series[0].index.str(), "7.7");
  EXPECT_EQ(series[1].index.str(), "4.6");
  EXPECT_EQ(UvIndex{0}.str(), "0.0");
  EXPECT_EQ(UvIndex{1000}.str(), "10.0");
  EXPECT_EQ(series[0].time, Timestamp::calendar("1st December 201511:04AM"));
}

TEST(PointCloudBounds, KinectFixtureMatchesTextScan) {
  const std::string text = testing::read_fixture("kinect_excerpt.txt");
  std::regex re(R"(Occupy3DPoint\((-?\d+),(-?\d+),(-?\d+)\))");
  PointBounds expected{INT64_MAX, INT64_MAX, INT64_MAX, INT64_MIN, INT64_MIN, INT64_MIN};
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
    std::int64_t x = std::stoll((*it)[1]), y = std::stoll((*it)[2]), z = std::stoll((*it)[3]);
    expected = {std::min(expected.min_x, x), std::min(expected.min_y, y), std::min(expected.min_z, z),
                std::max(expected.max_x, x), std::max(expected.max_y, y), std::max(expected.max_z, z)};
  }
  auto b = point_cloud_bounds(parse(text));
  EXPECT_EQ(b, expected);
  EXPECT_EQ(b, (PointBounds{-2, 0, 1, -1, 2, 4}));
}

TEST(PointCloudBounds, EmptyCloudAndWrongCollection) {
  EXPECT_THROW(point_cloud_bounds(gen_kinect({.n_points = 0, .n_colors = 3})), NotADataset);
  EXPECT_THROW(point_cloud_bounds(fixture("trains_excerpt.txt")), NotADataset);
}

}  // namespace
}  // namespace invariant

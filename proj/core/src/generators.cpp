#include "invariant/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "invariant/calendar.hpp"
#include "invariant/rng.hpp"

namespace invariant {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

struct CycleStep {
  std::string_view component;
  double value;
};

// One pick-and-place cycle of the station as recorded in the event log.
constexpr CycleStep kFestoCycle[] = {
    {"stackEjectorExtendSol", 5.0},    {"stackEjectorExtendedLS", 100.0},
    {"stackEmptySensor", 80.0},        {"stackEmptySensor", 100.0},
    {"stackEjectorRetractedLS", 80.0}, {"stackEjectorExtendSol", 5.5},
    {"stackEjectorRetractedLS", 100.0}, {"stackEmptySensor", 80.0},
    {"stackEjectorExtendedLS", 80.0},  {"loaderPickupSol", 5.0},
    {"stackEmptySensor", 100.0},       {"loaderPickupLS", 80.0},
    {"loaderPickupSol", 5.5},          {"vacuumGripperSol", 5.0},
    {"workpieceGrippedSensor", 80.0},  {"workpieceGrippedSensor", 100.0},
    {"loaderDropoffSol", 5.0},         {"loaderPickupLS", 100.0},
    {"loaderDropoffLS", 80.0},         {"loaderDropoffSol", 5.5},
    {"vacuumGripperSol", 5.5},         {"ejectionAirPulseSol", 5.0},
    {"workpieceGrippedSensor", 100.0}, {"loaderPickupSol", 5.0},
    {"ejectionAirPulseSol", 5.5},      {"loaderDropoffLS", 100.0},
};

bool is_sensor_name(std::string_view name) {
  return !name.ends_with("Sol");
}

}  // namespace

Collection collection_of(const GeneratorSpec& spec) noexcept {
  return static_cast<Collection>(spec.index());
}

GeneratorSpec default_spec(Collection collection, std::uint64_t seed) {
  switch (collection) {
    case Collection::Kinect: return KinectSpec{.seed = seed};
    case Collection::Festo: return FestoSpec{.seed = seed};
    case Collection::Trains: return TrainsSpec{.seed = seed};
    case Collection::Weather: return WeatherSpec{.seed = seed};
  }
  return KinectSpec{.seed = seed};
}

Formula gen_kinect(const KinectSpec& spec) {
  require(spec.n_points >= 0 && spec.n_colors >= 0, "kinect sizes must be >= 0");
  require(spec.time_millis >= 0, "kinect time must be >= 0");
  SplitMix64 rng(spec.seed);

  std::vector<Formula> points;
  points.reserve(static_cast<std::size_t>(spec.n_points));
  for (std::int64_t i = 0; i < spec.n_points; ++i) {
    std::int64_t x = rng.uniform(-256, 255);
    std::int64_t y = rng.uniform(-256, 255);
    std::int64_t z = rng.uniform(0, 15);
    std::int64_t u = rng.uniform(0, 1919);
    std::int64_t v = rng.uniform(0, 1079);
    points.push_back(make_implies(make_point(x, y, z), make_component_state(StateValue::ints({u, v}))));
  }

  std::vector<Formula> colors;
  colors.reserve(static_cast<std::size_t>(spec.n_colors));
  for (std::int64_t i = 0; i < spec.n_colors; ++i) {
    std::int64_t r = rng.uniform(-1, 255);
    std::int64_t g = rng.uniform(-1, 255);
    std::int64_t b = rng.uniform(-1, 255);
    colors.push_back(make_component_state(StateValue::ints({r, g, b})));
  }

  std::vector<Formula> branches;
  branches.push_back(make_implies(make_owner("Points"), make_big_and(std::move(points))));
  branches.push_back(make_implies(make_owner("Colors"), make_big_and(std::move(colors))));
  return make_implies(make_time_point(Timestamp::epoch_millis(spec.time_millis)),
                      make_big_and(std::move(branches)));
}

Formula gen_festo(const FestoSpec& spec) {
  require(spec.n_events >= 0, "festo event count must be >= 0");
  require(spec.start_millis >= 0, "festo start time must be >= 0");
  SplitMix64 rng(spec.seed);

  std::vector<Formula> events;
  events.reserve(static_cast<std::size_t>(spec.n_events));
  std::int64_t seconds = spec.start_millis / 1000;
  std::size_t step = 0;
  bool repeat_pending = false;
  for (std::int64_t i = 0; i < spec.n_events; ++i) {
    if (i > 0) {
      // 0 s w.p. 12/16, 1 s w.p. 3/16, 2 s w.p. 1/16.
      std::int64_t r = rng.uniform(0, 15);
      seconds += r < 12 ? 0 : (r < 15 ? 1 : 2);
    }
    const CycleStep& s = kFestoCycle[step];
    // Sensors occasionally report the same level twice.
    if (!repeat_pending && is_sensor_name(s.component) && rng.chance(1, 16)) {
      repeat_pending = true;
    } else {
      repeat_pending = false;
      step = (step + 1) % std::size(kFestoCycle);
    }
    events.push_back(make_implies(
        make_and(make_time_point(Timestamp::calendar(calendar::format_log_style(seconds))),
                 make_component(std::string(s.component))),
        make_component_state(StateValue::number(s.value))));
  }
  return make_big_and(std::move(events));
}

Formula gen_trains(const TrainsSpec& spec) {
  require(spec.n_frames >= 0, "train frame count must be >= 0");
  require(spec.track_nodes >= 1, "track must have at least one node");
  require(spec.train_length >= 1 && spec.train_length <= spec.track_nodes,
          "train length must be within 1..track_nodes");
  require(spec.start_node >= 1 && spec.start_node <= spec.track_nodes, "start node must be within 1..track_nodes");
  require(spec.start_millis >= 0, "train start time must be >= 0");
  SplitMix64 rng(spec.seed);

  std::vector<Formula> frames;
  frames.reserve(static_cast<std::size_t>(spec.n_frames));
  std::int64_t millis = spec.start_millis;
  for (std::int64_t i = 0; i < spec.n_frames; ++i) {
    if (i > 0) millis += rng.uniform(80, 110);
    std::vector<Formula> nodes;
    nodes.reserve(static_cast<std::size_t>(spec.train_length));
    for (std::int64_t j = 0; j < spec.train_length; ++j) {
      nodes.push_back(make_node((spec.start_node - 1 + i + j) % spec.track_nodes + 1));
    }
    frames.push_back(make_implies(make_time_point(Timestamp::epoch_millis(millis)), make_big_and(std::move(nodes))));
  }
  return make_big_and(std::move(frames));
}

Formula gen_weather(const WeatherSpec& spec) {
  require(spec.n_samples >= 0, "weather sample count must be >= 0");
  require(spec.start_index >= 0 && spec.start_index <= 1000 && spec.start_index % 10 == 0,
          "start index must be a multiple of 10 within 0..1000");
  auto start = calendar::parse_ordinal_style(spec.start_text);
  require(start.has_value(), "start text must look like '1st December 201511:04AM'");
  SplitMix64 rng(spec.seed);

  std::vector<Formula> samples;
  samples.reserve(static_cast<std::size_t>(spec.n_samples));
  std::int64_t index = spec.start_index;
  for (std::int64_t i = 0; i < spec.n_samples; ++i) {
    if (i > 0) index = std::clamp<std::int64_t>(index + 10 * rng.uniform(-3, 3), 0, 1000);
    std::vector<Formula> fields;
    fields.push_back(make_implies(make_owner("ID"), make_component_state(StateValue::text(spec.city_id))));
    fields.push_back(make_implies(make_owner("Index"), make_component_state(StateValue::ints({index}))));
    fields.push_back(make_implies(make_owner("Name"), make_component_state(StateValue::text(spec.city_name))));
    Timestamp when = Timestamp::calendar(calendar::format_ordinal_style(*start + 60 * i));
    samples.push_back(make_implies(make_time_point(std::move(when)), make_big_and(std::move(fields))));
  }
  return make_big_and(std::move(samples));
}

Formula generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Formula {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, KinectSpec>) return gen_kinect(s);
        if constexpr (std::is_same_v<T, FestoSpec>) return gen_festo(s);
        if constexpr (std::is_same_v<T, TrainsSpec>) return gen_trains(s);
        if constexpr (std::is_same_v<T, WeatherSpec>) return gen_weather(s);
      },
      spec);
}

}  // namespace invariant

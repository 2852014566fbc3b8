#pragma once

// Seeded synthetic datasets with the documented shape and cardinalities of
// each collection. Output depends only on the spec struct; every draw comes
// from one SplitMix64 stream seeded with `seed`.

#include <cstdint>
#include <string>
#include <variant>

#include "invariant/collection.hpp"
#include "invariant/formula.hpp"

namespace invariant {

struct KinectSpec {
  std::uint64_t seed = 1;
  std::int64_t n_points = 217088;
  std::int64_t n_colors = 2764800;
  std::int64_t time_millis = 1429188806320;
};

struct FestoSpec {
  std::uint64_t seed = 1;
  std::int64_t n_events = 4761;
  /// Wed Jul 27 09:11:28 UTC 2016; events carry second resolution.
  std::int64_t start_millis = 1469610688000;
};

struct TrainsSpec {
  std::uint64_t seed = 1;
  std::int64_t n_frames = 9601;
  std::int64_t track_nodes = 672;
  std::int64_t train_length = 10;
  std::int64_t start_node = 664;
  std::int64_t start_millis = 1429188806320;
};

struct WeatherSpec {
  std::uint64_t seed = 1;
  std::int64_t n_samples = 439;
  std::string city_id = "melbourne";
  std::string city_name = "mel";
  std::string start_text = "1st December 201511:04AM";
  std::int64_t start_index = 770;
};

using GeneratorSpec = std::variant<KinectSpec, FestoSpec, TrainsSpec, WeatherSpec>;

Collection collection_of(const GeneratorSpec& spec) noexcept;

/// Default sizes for a collection with the given seed.
GeneratorSpec default_spec(Collection collection, std::uint64_t seed = 1);

// Each generator throws std::invalid_argument for out-of-range parameters.

/// Points: x, y in -256..255, z in 0..15, UV in 0..1919 x 0..1079.
/// Colors: channels in -1..255.
Formula gen_kinect(const KinectSpec& spec);

/// Replays the station's pick-and-place cycle; 0-2 s between events.
Formula gen_festo(const FestoSpec& spec);

/// A train advancing one node per frame around a ring of track_nodes,
/// 80-110 ms between frames.
Formula gen_trains(const TrainsSpec& spec);

/// One sample per minute; the stored index random-walks in steps of
/// -30..30 within 0..1000, always a multiple of 10.
Formula gen_weather(const WeatherSpec& spec);

Formula generate(const GeneratorSpec& spec);

}  // namespace invariant

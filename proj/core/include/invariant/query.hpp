#pragma once

// Read-side helpers over collection-shaped formulas.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invariant/formula.hpp"

namespace invariant {

/// The formula is not (or not the right kind of) dataset for the query.
class NotADataset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EventSample {
  Timestamp time;
  std::string component;
  StateValue value;

  friend bool operator==(const EventSample&, const EventSample&) = default;
};

/// UV index as stored (index x 100) with decimal accessors.
struct UvIndex {
  std::int64_t stored = 0;

  double value() const noexcept { return static_cast<double>(stored) / 100.0; }
  /// One decimal place, e.g. "7.7".
  std::string str() const;

  friend bool operator==(const UvIndex&, const UvIndex&) = default;
};

struct UvSample {
  Timestamp time;
  UvIndex index;

  friend bool operator==(const UvSample&, const UvSample&) = default;
};

struct PointBounds {
  std::int64_t min_x, min_y, min_z;
  std::int64_t max_x, max_y, max_z;

  friend bool operator==(const PointBounds&, const PointBounds&) = default;
};

/// Premise time points of every frame, event or sample, in document order.
/// Throws NotADataset when no single collection schema accepts f.
std::vector<Timestamp> time_points(const Formula& f);

/// Festo events of one component in stream order. Throws NotADataset
/// unless f is a valid festo stream.
std::vector<EventSample> component_series(const Formula& f, std::string_view component);

/// Node set of the latest frame at or before `millis`; nullopt before the
/// first frame. Throws NotADataset unless f is a valid trains dataset.
std::optional<std::set<std::int64_t>> occupancy_at(const Formula& f, std::int64_t millis);

/// Throws NotADataset unless f is a valid weather dataset.
std::vector<UvSample> uv_series(const Formula& f);

/// Componentwise extent of the scanned points. Throws NotADataset unless f
/// is a valid kinect frame with at least one point.
PointBounds point_cloud_bounds(const Formula& f);

}  // namespace invariant

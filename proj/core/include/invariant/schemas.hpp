#pragma once

// Structural validators for the four collections.
//
//   kinect   IMPLIES(TimePoint, BIGAND(List(
//              IMPLIES(Owner(Points), BIGAND(List(IMPLIES(Occupy3DPoint, ComponentState((u,v))), ...))),
//              IMPLIES(Owner(Colors), BIGAND(List(ComponentState((r,g,b)), ...))))))
//   festo    BIGAND(List(IMPLIES(AND(TimePoint, Component(name)), ComponentState(number)), ...))
//   trains   BIGAND(List(IMPLIES(TimePoint(millis), BIGAND(List(OccupyNode x10))), ...))
//   weather  BIGAND(List(IMPLIES(TimePoint, BIGAND(List(
//              IMPLIES(Owner(ID), ComponentState(text)),
//              IMPLIES(Owner(Index), ComponentState(int)),
//              IMPLIES(Owner(Name), ComponentState(text))))), ...))

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invariant/collection.hpp"
#include "invariant/formula.hpp"

namespace invariant {

struct Violation {
  /// Location in the tree, e.g. "$[3].premise.right".
  std::string path;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct SchemaReport {
  /// At most this many violations are kept; stats["violations"] has the
  /// full count.
  static constexpr std::size_t kMaxViolations = 100;

  Collection collection = Collection::Kinect;
  bool valid = true;
  std::vector<Violation> violations;
  std::map<std::string, std::int64_t> stats;

  /// Summary line followed by one indented line per violation.
  std::string to_text() const;
  /// `key=value` lines: collection, valid, then every stat.
  std::string to_key_values() const;

  friend bool operator==(const SchemaReport&, const SchemaReport&) = default;
};

/// Signal identifiers of the factory station.
struct FestoComponentCatalog {
  static constexpr std::array<std::string_view, 5> kActuators{
      "stackEjectorExtendSol", "vacuumGripperSol", "ejectionAirPulseSol", "loaderPickupSol",
      "loaderDropoffSol"};
  static constexpr std::array<std::string_view, 6> kSensors{
      "stackEjectorExtendedLS", "stackEjectorRetractedLS", "workpieceGrippedSensor",
      "loaderPickupLS",         "loaderDropoffLS",         "stackEmptySensor"};

  static bool is_actuator(std::string_view name) noexcept;
  static bool is_sensor(std::string_view name) noexcept;
  static bool contains(std::string_view name) noexcept { return is_actuator(name) || is_sensor(name); }
  /// Actuators then sensors.
  static std::vector<std::string_view> all();
};

/// Signal levels a festo event may carry, for actuators and sensors alike.
inline constexpr std::array<double, 4> kFestoAdmissibleValues{5.0, 5.5, 80.0, 100.0};

/// Cars in a train; every trains frame occupies exactly this many nodes.
inline constexpr std::size_t kTrainLength = 10;

inline constexpr std::int64_t kUvIndexMax = 1000;

SchemaReport validate_kinect(const Formula& f);
SchemaReport validate_festo(const Formula& f);
SchemaReport validate_trains(const Formula& f);
SchemaReport validate_weather(const Formula& f);
SchemaReport validate(const Formula& f, Collection collection);

/// The single collection whose validator accepts f; nullopt when none or
/// several do.
std::optional<Collection> detect_schema(const Formula& f);

}  // namespace invariant

#include "invariant/collection.hpp"

namespace invariant {

std::string_view to_string(Collection c) noexcept {
  switch (c) {
    case Collection::Kinect: return "kinect";
    case Collection::Festo: return "festo";
    case Collection::Trains: return "trains";
    case Collection::Weather: return "weather";
  }
  return "?";
}

std::optional<Collection> parse_collection(std::string_view text) noexcept {
  for (Collection c : kAllCollections) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

}  // namespace invariant

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace invariant {

/// The four documented dataset families.
enum class Collection { Kinect, Festo, Trains, Weather };

inline constexpr std::array<Collection, 4> kAllCollections{
    Collection::Kinect, Collection::Festo, Collection::Trains, Collection::Weather};

std::string_view to_string(Collection c) noexcept;
std::optional<Collection> parse_collection(std::string_view text) noexcept;

}  // namespace invariant

#pragma once

// Calendar-text timestamp styles seen in the collections.
//
//   log style     "Wed Jul 27 09:11:28 UTC 2016"   (second resolution, UTC)
//   ordinal style "1st December 201511:04AM"        (minute resolution)
//
// Both are plain civil time; no time zone database is involved.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "invariant/formula.hpp"

namespace invariant::calendar {

std::string format_log_style(std::int64_t epoch_seconds);
std::optional<std::int64_t> parse_log_style(std::string_view text);

std::string format_ordinal_style(std::int64_t epoch_seconds);
std::optional<std::int64_t> parse_ordinal_style(std::string_view text);

/// Epoch millis of a timestamp: the value itself for numeric timestamps,
/// the parsed instant for log-style calendar text, nullopt otherwise.
std::optional<std::int64_t> to_epoch_millis(const Timestamp& ts);

}  // namespace invariant::calendar

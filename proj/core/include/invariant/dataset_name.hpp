#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invariant {

class InvalidName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// True when `text` is dot-separated segments of [A-Za-z0-9_]+ with at
/// least `min_segments` segments.
bool is_dotted_identifier(std::string_view text, std::size_t min_segments);

std::vector<std::string> split_dotted(std::string_view text);

/// Archive key such as `aicause.kinect.scan.bottle`: an organisation prefix
/// followed by at least one more segment.
class DatasetName {
 public:
  /// Throws InvalidName.
  explicit DatasetName(std::string raw);

  const std::string& str() const noexcept { return raw_; }
  std::vector<std::string> segments() const { return split_dotted(raw_); }

  static bool is_valid(std::string_view raw);

  friend auto operator<=>(const DatasetName&, const DatasetName&) = default;

 private:
  std::string raw_;
};

}  // namespace invariant

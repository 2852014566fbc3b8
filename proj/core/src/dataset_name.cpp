#include "invariant/dataset_name.hpp"

namespace invariant {
namespace {

bool segment_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

bool is_dotted_identifier(std::string_view text, std::size_t min_segments) {
  if (text.empty()) return false;
  std::size_t segments = 1;
  std::size_t run = 0;
  for (char c : text) {
    if (c == '.') {
      if (run == 0) return false;
      ++segments;
      run = 0;
    } else if (segment_char(c)) {
      ++run;
    } else {
      return false;
    }
  }
  return run > 0 && segments >= min_segments;
}

std::vector<std::string> split_dotted(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t dot = text.find('.', start);
    out.emplace_back(text.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

bool DatasetName::is_valid(std::string_view raw) {
  return is_dotted_identifier(raw, 2);
}

DatasetName::DatasetName(std::string raw) : raw_(std::move(raw)) {
  if (!is_valid(raw_)) {
    throw InvalidName("invalid dataset name '" + raw_ +
                      "': need dot-separated [A-Za-z0-9_]+ segments with an organisation prefix");
  }
}

}  // namespace invariant

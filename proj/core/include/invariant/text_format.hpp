#pragma once

// Term-language reader and writer.
//
//   term  := NAME '(' args ')' | NAME
//   args  := term (',' term)* | 'List' '(' [term (',' term)*] ')' | raw
//
// Accepted constructor names: AND OR NOT IMPLIES BIGAND BIGOR TRUE FALSE
// TimePoint Owner Component ComponentState Occupy3DPoint OccupyNode.
//
// Payload rules:
//   TimePoint(1429188806320)                 epoch millis (all digits)
//   TimePoint(Wed Jul 27 09:11:28 UTC 2016)  calendar text, up to the
//                                            balancing ')'
//   Owner("Points") / Owner(ID)              quoted or bare label
//   ComponentState((41,49,39)) / (0,0)       integer tuple, 1..3 values
//   ComponentState(770)                      one-element integer tuple
//   ComponentState(5.0)                      number (has a decimal point)
//   ComponentState(melbourne)                text
//
// Whitespace between tokens is ignored. Trailing commas and '...' are
// rejected.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "invariant/formula.hpp"

namespace invariant {

/// Byte range [start, end) into the parsed input.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found);

  const SourceSpan& span() const noexcept { return span_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// Parses one whole document. Throws ParseError on malformed input.
Formula parse(std::string_view input);

enum class PrintStyle {
  /// Everything on one line, ", " between list items.
  Compact,
  /// List items that are not atoms go on their own indented lines.
  Pretty,
};

/// Canonical text; parse(print(f)) is structurally equal to f.
std::string print(const Formula& f, PrintStyle style = PrintStyle::Compact);

/// Appends the canonical text of f to out.
void print_to(std::string& out, const Formula& f, PrintStyle style = PrintStyle::Compact);

}  // namespace invariant

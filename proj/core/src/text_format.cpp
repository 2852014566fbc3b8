#include "invariant/text_format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <system_error>
#include <utility>
#include <vector>

namespace invariant {

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : std::runtime_error("parse error at offset " + std::to_string(span.start) + ": expected " +
                         expected + ", found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

constexpr int kMaxNesting = 2000;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

// -?[0-9]+
bool looks_like_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return all_digits(s);
}

// -?[0-9]+\.[0-9]+([eE][+-]?[0-9]+)?
bool looks_like_decimal(std::string_view s) {
  std::size_t i = 0;
  auto digits = [&] {
    std::size_t start = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    return i > start;
  };
  if (i < s.size() && s[i] == '-') ++i;
  if (!digits()) return false;
  if (i >= s.size() || s[i] != '.') return false;
  ++i;
  if (!digits()) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (!digits()) return false;
  }
  return i == s.size();
}

std::optional<Kind> constructor_kind(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Kind>, 14> kNames{{
      {"AND", Kind::And},
      {"OR", Kind::Or},
      {"NOT", Kind::Not},
      {"IMPLIES", Kind::Implies},
      {"BIGAND", Kind::BigAnd},
      {"BIGOR", Kind::BigOr},
      {"TRUE", Kind::True},
      {"FALSE", Kind::False},
      {"TimePoint", Kind::TimePoint},
      {"Owner", Kind::Owner},
      {"Component", Kind::Component},
      {"ComponentState", Kind::ComponentState},
      {"Occupy3DPoint", Kind::Occupy3DPoint},
      {"OccupyNode", Kind::OccupyNode},
  }};
  for (const auto& [n, k] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view input) : in_(input) {}

  Formula document() {
    Formula f = term();
    skip_ws();
    if (pos_ != in_.size()) fail("end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(std::string expected) const { fail_at(pos_, std::move(expected)); }

  [[noreturn]] void fail_at(std::size_t at, std::string expected) const {
    auto [found, len] = describe(at);
    throw ParseError({at, at + len}, std::move(expected), std::move(found));
  }

  std::pair<std::string, std::size_t> describe(std::size_t at) const {
    if (at >= in_.size()) return {"end of input", 0};
    if (is_ident_char(in_[at]) || in_[at] == '-') {
      std::size_t end = at + 1;
      while (end < in_.size() && is_ident_char(in_[end]) && end - at < 32) ++end;
      return {"'" + std::string(in_.substr(at, end - at)) + "'", end - at};
    }
    return {"'" + std::string(1, in_[at]) + "'", 1};
  }

  void skip_ws() {
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < in_.size() && in_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("'") + c + "'");
    ++pos_;
  }

  std::string_view identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= in_.size() || !is_ident_start(in_[pos_])) fail("constructor name");
    while (pos_ < in_.size() && is_ident_char(in_[pos_])) ++pos_;
    return in_.substr(start, pos_ - start);
  }

  Formula term() {
    if (++depth_ > kMaxNesting) fail("nesting depth <= " + std::to_string(kMaxNesting));
    skip_ws();
    std::size_t start = pos_;
    std::string_view name = identifier();
    auto kind = constructor_kind(name);
    if (!kind) {
      throw ParseError({start, pos_}, "constructor name", "unknown constructor '" + std::string(name) + "'");
    }
    Formula f = body(*kind);
    --depth_;
    return f;
  }

  Formula body(Kind kind) {
    switch (kind) {
      case Kind::True:
      case Kind::False:
        if (peek('(')) {
          ++pos_;
          expect(')');
        }
        return kind == Kind::True ? make_true() : make_false();
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: {
        expect('(');
        Formula left = term();
        expect(',');
        Formula right = term();
        expect(')');
        if (kind == Kind::And) return make_and(std::move(left), std::move(right));
        if (kind == Kind::Or) return make_or(std::move(left), std::move(right));
        return make_implies(std::move(left), std::move(right));
      }
      case Kind::Not: {
        expect('(');
        Formula inner = term();
        expect(')');
        return make_not(std::move(inner));
      }
      case Kind::BigAnd:
      case Kind::BigOr: {
        expect('(');
        std::vector<Formula> items;
        if (at_list_keyword()) {
          identifier();
          expect('(');
          items = term_list();
          expect(')');
        } else {
          items = term_list();
        }
        expect(')');
        return kind == Kind::BigAnd ? make_big_and(std::move(items)) : make_big_or(std::move(items));
      }
      case Kind::TimePoint:
        return time_point();
      case Kind::Owner:
      case Kind::Component: {
        expect('(');
        std::string label = label_payload();
        expect(')');
        return kind == Kind::Owner ? make_owner(std::move(label)) : make_component(std::move(label));
      }
      case Kind::ComponentState:
        return component_state();
      case Kind::Occupy3DPoint: {
        expect('(');
        std::int64_t x = integer();
        expect(',');
        std::int64_t y = integer();
        expect(',');
        std::int64_t z = integer();
        expect(')');
        return make_point(x, y, z);
      }
      case Kind::OccupyNode: {
        expect('(');
        skip_ws();
        std::size_t at = pos_;
        std::int64_t id = integer();
        if (id < 1) fail_at(at, "node id >= 1");
        expect(')');
        return make_node(id);
      }
    }
    fail("constructor body");
  }

  bool at_list_keyword() {
    skip_ws();
    if (in_.substr(pos_, 4) != "List") return false;
    std::size_t after = pos_ + 4;
    if (after < in_.size() && is_ident_char(in_[after])) return false;
    while (after < in_.size() && is_space(in_[after])) ++after;
    return after < in_.size() && in_[after] == '(';
  }

  std::vector<Formula> term_list() {
    std::vector<Formula> items;
    if (peek(')')) return items;
    for (;;) {
      items.push_back(term());
      if (!peek(',')) break;
      ++pos_;
    }
    return items;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < in_.size() && in_[pos_] == '-') ++pos_;
    while (pos_ < in_.size() && is_digit(in_[pos_])) ++pos_;
    std::string_view text = in_.substr(start, pos_ - start);
    if (!looks_like_integer(text)) {
      pos_ = start;
      fail("integer");
    }
    return to_int(text, start);
  }

  std::int64_t to_int(std::string_view text, std::size_t at) const {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail_at(at, "64-bit integer");
    }
    return value;
  }

  // Raw payload up to the ')' that balances the already-consumed '('.
  // Leaves pos_ on that ')'.
  std::string_view raw_payload() {
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) return in_.substr(start, pos_ - start);
        --depth;
      }
      ++pos_;
    }
    fail("')'");
  }

  std::string quoted() {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < in_.size()) {
      char c = in_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= in_.size()) break;
        c = in_[pos_++];
      }
      out.push_back(c);
    }
    fail_at(start, "closing '\"'");
  }

  std::string label_payload() {
    if (peek('"')) return quoted();
    return std::string(trim(raw_payload()));
  }

  Formula time_point() {
    expect('(');
    skip_ws();
    std::size_t start = pos_;
    std::string_view raw = trim(raw_payload());
    if (raw.empty()) fail_at(start, "timestamp");
    Formula f = make_true();
    if (all_digits(raw)) {
      f = make_time_point(Timestamp::epoch_millis(to_int(raw, start)));
    } else {
      if (raw.find_first_of("()") != std::string_view::npos) fail_at(start, "timestamp without parentheses");
      f = make_time_point(Timestamp::calendar(std::string(raw)));
    }
    expect(')');
    return f;
  }

  Formula component_state() {
    expect('(');
    skip_ws();
    std::size_t start = pos_;
    if (peek('(')) {
      ++pos_;
      std::vector<std::int64_t> values;
      values.push_back(integer());
      while (peek(',')) {
        ++pos_;
        values.push_back(integer());
      }
      expect(')');
      if (values.size() > StateValue::kMaxTupleSize) fail_at(start, "at most 3 tuple elements");
      expect(')');
      return make_component_state(StateValue::ints(values));
    }
    if (peek('"')) {
      std::string text = quoted();
      expect(')');
      return make_component_state(StateValue::text(std::move(text)));
    }
    std::string_view raw = trim(raw_payload());
    if (raw.empty()) fail_at(start, "state value");
    Formula f = make_true();
    if (auto ints = split_ints(raw, start)) {
      if (ints->size() > StateValue::kMaxTupleSize) fail_at(start, "at most 3 tuple elements");
      f = make_component_state(StateValue::ints(*ints));
    } else if (looks_like_decimal(raw)) {
      double value = 0;
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
      if (ec != std::errc() || ptr != raw.data() + raw.size()) fail_at(start, "finite decimal");
      f = make_component_state(StateValue::number(value));
    } else {
      f = make_component_state(StateValue::text(std::string(raw)));
    }
    expect(')');
    return f;
  }

  // "a", "a,b", "a, b, c" with integer elements; nullopt otherwise.
  std::optional<std::vector<std::int64_t>> split_ints(std::string_view raw, std::size_t at) const {
    std::vector<std::int64_t> values;
    while (true) {
      std::size_t comma = raw.find(',');
      std::string_view part = trim(raw.substr(0, comma));
      if (!looks_like_integer(part)) return std::nullopt;
      values.push_back(to_int(part, at));
      if (comma == std::string_view::npos) break;
      raw.remove_prefix(comma + 1);
    }
    return values;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

bool bare_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ident_char);
}

bool bare_text_value(std::string_view s) {
  return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin(), s.end(), is_ident_char);
}

void append_quoted(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

void append_int(std::string& out, std::int64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_number(std::string& out, double v) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  std::string_view s(buf, ptr - buf);
  out.append(s);
  if (s.find('.') == std::string_view::npos) out.append(".0");
}

class Printer {
 public:
  Printer(std::string& out, PrintStyle style) : out_(out), style_(style) {}

  void emit(const Formula& f, int indent) {
    switch (f.kind()) {
      case Kind::And: {
        auto* n = f.as<node::And>();
        binary("AND(", n->left, n->right, indent);
        return;
      }
      case Kind::Or: {
        auto* n = f.as<node::Or>();
        binary("OR(", n->left, n->right, indent);
        return;
      }
      case Kind::Not:
        out_.append("NOT(");
        emit(f.as<node::Not>()->inner, indent);
        out_.push_back(')');
        return;
      case Kind::Implies: {
        auto* n = f.as<node::Implies>();
        binary("IMPLIES(", n->premise, n->conclusion, indent);
        return;
      }
      case Kind::BigAnd:
        list("BIGAND(List(", f.as<node::BigAnd>()->items, indent);
        return;
      case Kind::BigOr:
        list("BIGOR(List(", f.as<node::BigOr>()->items, indent);
        return;
      case Kind::True:
        out_.append("TRUE()");
        return;
      case Kind::False:
        out_.append("FALSE()");
        return;
      case Kind::TimePoint: {
        const auto& ts = f.as<node::TimePoint>()->value;
        out_.append("TimePoint(");
        if (ts.is_epoch()) {
          append_int(out_, ts.millis());
        } else {
          out_.append(ts.text());
        }
        out_.push_back(')');
        return;
      }
      case Kind::Owner:
        label("Owner(", f.as<node::Owner>()->label);
        return;
      case Kind::Component:
        label("Component(", f.as<node::Component>()->label);
        return;
      case Kind::ComponentState:
        state(f.as<node::ComponentState>()->value);
        return;
      case Kind::Occupy3DPoint: {
        auto* p = f.as<node::Occupy3DPoint>();
        out_.append("Occupy3DPoint(");
        append_int(out_, p->x);
        out_.push_back(',');
        append_int(out_, p->y);
        out_.push_back(',');
        append_int(out_, p->z);
        out_.push_back(')');
        return;
      }
      case Kind::OccupyNode:
        out_.append("OccupyNode(");
        append_int(out_, f.as<node::OccupyNode>()->id);
        out_.push_back(')');
        return;
    }
  }

 private:
  void binary(std::string_view head, const Formula& a, const Formula& b, int indent) {
    out_.append(head);
    emit(a, indent);
    out_.push_back(',');
    emit(b, indent);
    out_.push_back(')');
  }

  void list(std::string_view head, const std::vector<Formula>& items, int indent) {
    out_.append(head);
    bool broken = style_ == PrintStyle::Pretty &&
                  std::any_of(items.begin(), items.end(), [](const Formula& f) { return !f.is_atom(); });
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out_.append(broken ? "," : ", ");
      if (broken) newline(indent + 2);
      emit(items[i], indent + 2);
    }
    if (broken) newline(indent);
    out_.append("))");
  }

  void newline(int indent) {
    out_.push_back('\n');
    out_.append(static_cast<std::size_t>(indent), ' ');
  }

  void label(std::string_view head, const std::string& text) {
    out_.append(head);
    if (bare_label(text)) {
      out_.append(text);
    } else {
      append_quoted(out_, text);
    }
    out_.push_back(')');
  }

  void state(const StateValue& v) {
    out_.append("ComponentState(");
    switch (v.kind()) {
      case StateValue::Kind::Number:
        append_number(out_, v.as_number());
        break;
      case StateValue::Kind::IntTuple: {
        auto items = v.as_ints();
        if (items.size() == 1) {
          append_int(out_, items[0]);
          break;
        }
        out_.push_back('(');
        for (std::size_t i = 0; i < items.size(); ++i) {
          if (i > 0) out_.push_back(',');
          append_int(out_, items[i]);
        }
        out_.push_back(')');
        break;
      }
      case StateValue::Kind::Text:
        if (bare_text_value(v.as_text())) {
          out_.append(v.as_text());
        } else {
          append_quoted(out_, v.as_text());
        }
        break;
    }
    out_.push_back(')');
  }

  std::string& out_;
  PrintStyle style_;
};

}  // namespace

Formula parse(std::string_view input) {
  return Parser(input).document();
}

void print_to(std::string& out, const Formula& f, PrintStyle style) {
  Printer(out, style).emit(f, 0);
}

std::string print(const Formula& f, PrintStyle style) {
  std::string out;
  print_to(out, f, style);
  return out;
}

}  // namespace invariant

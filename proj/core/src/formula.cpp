#include "invariant/formula.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace invariant {

Timestamp Timestamp::epoch_millis(std::int64_t millis) {
  if (millis < 0) {
    throw std::invalid_argument("epoch millis must be non-negative");
  }
  return Timestamp(millis);
}

Timestamp Timestamp::calendar(std::string raw) {
  if (raw.empty()) {
    throw std::invalid_argument("calendar timestamp must not be empty");
  }
  if (std::all_of(raw.begin(), raw.end(), [](unsigned char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("all-digit timestamp text must be epoch millis: " + raw);
  }
  auto is_space = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  if (is_space(raw.front()) || is_space(raw.back())) {
    throw std::invalid_argument("calendar timestamp has surrounding whitespace: '" + raw + "'");
  }
  if (raw.find_first_of("()") != std::string::npos) {
    throw std::invalid_argument("calendar timestamp must not contain parentheses: " + raw);
  }
  return Timestamp(std::move(raw));
}

std::int64_t Timestamp::millis() const {
  return std::get<std::int64_t>(value_);
}

const std::string& Timestamp::text() const {
  return std::get<std::string>(value_);
}

StateValue StateValue::number(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("state number must be finite");
  }
  return StateValue(value);
}

StateValue StateValue::ints(std::span<const std::int64_t> values) {
  if (values.empty() || values.size() > kMaxTupleSize) {
    throw std::invalid_argument("integer tuple must hold 1 to 3 values");
  }
  Tuple t;
  std::copy(values.begin(), values.end(), t.items.begin());
  t.size = static_cast<std::uint8_t>(values.size());
  return StateValue(t);
}

StateValue StateValue::ints(std::initializer_list<std::int64_t> values) {
  return ints(std::span<const std::int64_t>(values.begin(), values.size()));
}

StateValue StateValue::text(std::string value) {
  return StateValue(std::move(value));
}

double StateValue::as_number() const {
  return std::get<double>(value_);
}

std::span<const std::int64_t> StateValue::as_ints() const {
  const auto& t = std::get<Tuple>(value_);
  return {t.items.data(), t.size};
}

const std::string& StateValue::as_text() const {
  return std::get<std::string>(value_);
}

bool operator==(const StateValue& a, const StateValue& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case StateValue::Kind::Number:
      return a.as_number() == b.as_number();
    case StateValue::Kind::IntTuple: {
      auto x = a.as_ints();
      auto y = b.as_ints();
      return std::equal(x.begin(), x.end(), y.begin(), y.end());
    }
    case StateValue::Kind::Text:
      return a.as_text() == b.as_text();
  }
  return false;
}

std::string_view kind_name(Kind kind) noexcept {
  switch (kind) {
    case Kind::And: return "AND";
    case Kind::Or: return "OR";
    case Kind::Not: return "NOT";
    case Kind::Implies: return "IMPLIES";
    case Kind::BigAnd: return "BIGAND";
    case Kind::BigOr: return "BIGOR";
    case Kind::True: return "TRUE";
    case Kind::False: return "FALSE";
    case Kind::TimePoint: return "TimePoint";
    case Kind::Owner: return "Owner";
    case Kind::Component: return "Component";
    case Kind::ComponentState: return "ComponentState";
    case Kind::Occupy3DPoint: return "Occupy3DPoint";
    case Kind::OccupyNode: return "OccupyNode";
  }
  return "?";
}

Formula make_and(Formula left, Formula right) {
  return make_formula(node::And{std::move(left), std::move(right)});
}

Formula make_or(Formula left, Formula right) {
  return make_formula(node::Or{std::move(left), std::move(right)});
}

Formula make_not(Formula inner) {
  return make_formula(node::Not{std::move(inner)});
}

Formula make_implies(Formula premise, Formula conclusion) {
  return make_formula(node::Implies{std::move(premise), std::move(conclusion)});
}

Formula make_big_and(std::vector<Formula> items) {
  return make_formula(node::BigAnd{std::move(items)});
}

Formula make_big_or(std::vector<Formula> items) {
  return make_formula(node::BigOr{std::move(items)});
}

Formula make_true() {
  static const Formula t = make_formula(node::True{});
  return t;
}

Formula make_false() {
  static const Formula f = make_formula(node::False{});
  return f;
}

Formula make_time_point(Timestamp value) {
  return make_formula(node::TimePoint{std::move(value)});
}

Formula make_owner(std::string label) {
  return make_formula(node::Owner{std::move(label)});
}

Formula make_component(std::string label) {
  return make_formula(node::Component{std::move(label)});
}

Formula make_component_state(StateValue value) {
  return make_formula(node::ComponentState{std::move(value)});
}

Formula make_point(std::int64_t x, std::int64_t y, std::int64_t z) {
  return make_formula(node::Occupy3DPoint{x, y, z});
}

Formula make_node(std::int64_t id) {
  if (id < 1) {
    throw std::invalid_argument("OccupyNode id must be >= 1");
  }
  return make_formula(node::OccupyNode{id});
}

namespace {

bool lists_equal(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!structural_equal(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool structural_equal(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::And: {
      auto *x = a.as<node::And>(), *y = b.as<node::And>();
      return structural_equal(x->left, y->left) && structural_equal(x->right, y->right);
    }
    case Kind::Or: {
      auto *x = a.as<node::Or>(), *y = b.as<node::Or>();
      return structural_equal(x->left, y->left) && structural_equal(x->right, y->right);
    }
    case Kind::Not:
      return structural_equal(a.as<node::Not>()->inner, b.as<node::Not>()->inner);
    case Kind::Implies: {
      auto *x = a.as<node::Implies>(), *y = b.as<node::Implies>();
      return structural_equal(x->premise, y->premise) &&
             structural_equal(x->conclusion, y->conclusion);
    }
    case Kind::BigAnd:
      return lists_equal(a.as<node::BigAnd>()->items, b.as<node::BigAnd>()->items);
    case Kind::BigOr:
      return lists_equal(a.as<node::BigOr>()->items, b.as<node::BigOr>()->items);
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::TimePoint:
      return a.as<node::TimePoint>()->value == b.as<node::TimePoint>()->value;
    case Kind::Owner:
      return a.as<node::Owner>()->label == b.as<node::Owner>()->label;
    case Kind::Component:
      return a.as<node::Component>()->label == b.as<node::Component>()->label;
    case Kind::ComponentState:
      return a.as<node::ComponentState>()->value == b.as<node::ComponentState>()->value;
    case Kind::Occupy3DPoint: {
      auto *x = a.as<node::Occupy3DPoint>(), *y = b.as<node::Occupy3DPoint>();
      return x->x == y->x && x->y == y->y && x->z == y->z;
    }
    case Kind::OccupyNode:
      return a.as<node::OccupyNode>()->id == b.as<node::OccupyNode>()->id;
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  return structural_equal(a, b);
}

namespace {

// Depth-first, left to right; premise before conclusion.
template <class Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Kind::And: {
      auto* n = f.as<node::And>();
      for_each_atom(n->left, fn);
      for_each_atom(n->right, fn);
      return;
    }
    case Kind::Or: {
      auto* n = f.as<node::Or>();
      for_each_atom(n->left, fn);
      for_each_atom(n->right, fn);
      return;
    }
    case Kind::Not:
      for_each_atom(f.as<node::Not>()->inner, fn);
      return;
    case Kind::Implies: {
      auto* n = f.as<node::Implies>();
      for_each_atom(n->premise, fn);
      for_each_atom(n->conclusion, fn);
      return;
    }
    case Kind::BigAnd:
      for (const auto& item : f.as<node::BigAnd>()->items) for_each_atom(item, fn);
      return;
    case Kind::BigOr:
      for (const auto& item : f.as<node::BigOr>()->items) for_each_atom(item, fn);
      return;
    default:
      fn(f);
      return;
  }
}

void splice_into(const Formula& item, std::vector<Formula>& out);

Formula flatten(const Formula& f) {
  switch (f.kind()) {
    case Kind::And: {
      auto* n = f.as<node::And>();
      return make_and(flatten(n->left), flatten(n->right));
    }
    case Kind::Or: {
      auto* n = f.as<node::Or>();
      return make_or(flatten(n->left), flatten(n->right));
    }
    case Kind::Not:
      return make_not(flatten(f.as<node::Not>()->inner));
    case Kind::Implies: {
      auto* n = f.as<node::Implies>();
      return make_implies(flatten(n->premise), flatten(n->conclusion));
    }
    case Kind::BigAnd: {
      std::vector<Formula> out;
      const auto& items = f.as<node::BigAnd>()->items;
      out.reserve(items.size());
      for (const auto& item : items) splice_into(item, out);
      return make_big_and(std::move(out));
    }
    case Kind::BigOr: {
      std::vector<Formula> out;
      const auto& items = f.as<node::BigOr>()->items;
      out.reserve(items.size());
      for (const auto& item : items) out.push_back(flatten(item));
      return make_big_or(std::move(out));
    }
    default:
      return f;
  }
}

void splice_into(const Formula& item, std::vector<Formula>& out) {
  if (auto* inner = item.as<node::BigAnd>()) {
    for (const auto& child : inner->items) splice_into(child, out);
  } else {
    out.push_back(flatten(item));
  }
}

}  // namespace

std::size_t count_atoms(const Formula& f) {
  std::size_t n = 0;
  for_each_atom(f, [&](const Formula&) { ++n; });
  return n;
}

AtomPredicate of_kind(Kind kind) {
  return [kind](const Formula& f) { return f.kind() == kind; };
}

std::vector<Formula> collect(const Formula& f, const AtomPredicate& predicate) {
  std::vector<Formula> out;
  for_each_atom(f, [&](const Formula& atom) {
    if (predicate(atom)) out.push_back(atom);
  });
  return out;
}

Formula flatten_bigand(const Formula& f) {
  return flatten(f);
}

}  // namespace invariant

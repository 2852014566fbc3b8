#pragma once

// Immutable formula trees over the invariant algebra.
//
// A Formula is a cheap, shareable handle to a const node. Nodes are never
// mutated after construction, so handles may be copied freely and read from
// any number of threads.
//
//   connectives : And, Or, Not, Implies, BigAnd, BigOr
//   constants   : True, False
//   atoms       : TimePoint, Owner, Component, ComponentState,
//                 Occupy3DPoint, OccupyNode

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace invariant {

/// Instant attached to a TimePoint atom: either epoch milliseconds or a
/// calendar string kept exactly as written in the source.
class Timestamp {
 public:
  /// Throws std::invalid_argument for negative values.
  static Timestamp epoch_millis(std::int64_t millis);
  /// Throws std::invalid_argument for text that is empty, all digits, has
  /// surrounding whitespace, or contains parentheses; such text could not
  /// survive a print/parse round trip.
  static Timestamp calendar(std::string raw);

  bool is_epoch() const noexcept { return std::holds_alternative<std::int64_t>(value_); }
  bool is_calendar() const noexcept { return !is_epoch(); }

  std::int64_t millis() const;      // requires is_epoch()
  const std::string& text() const;  // requires is_calendar()

  friend bool operator==(const Timestamp&, const Timestamp&) = default;

 private:
  explicit Timestamp(std::variant<std::int64_t, std::string> v) : value_(std::move(v)) {}
  std::variant<std::int64_t, std::string> value_;
};

/// Payload of a ComponentState atom.
///
/// Numbers compare by value. Integer tuples hold one to three elements
/// (UV pairs, RGB triples, scalar readings such as a UV index).
class StateValue {
 public:
  enum class Kind { Number, IntTuple, Text };

  static constexpr std::size_t kMaxTupleSize = 3;

  /// Throws std::invalid_argument for NaN or infinities.
  static StateValue number(double value);
  /// Throws std::invalid_argument unless 1 <= size <= kMaxTupleSize.
  static StateValue ints(std::span<const std::int64_t> values);
  static StateValue ints(std::initializer_list<std::int64_t> values);
  static StateValue text(std::string value);

  Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
  bool is_number() const noexcept { return kind() == Kind::Number; }
  bool is_ints() const noexcept { return kind() == Kind::IntTuple; }
  bool is_text() const noexcept { return kind() == Kind::Text; }

  double as_number() const;
  std::span<const std::int64_t> as_ints() const;
  const std::string& as_text() const;

  friend bool operator==(const StateValue& a, const StateValue& b);

 private:
  struct Tuple {
    std::array<std::int64_t, kMaxTupleSize> items{};
    std::uint8_t size = 0;
  };
  explicit StateValue(std::variant<double, Tuple, std::string> v) : value_(std::move(v)) {}
  std::variant<double, Tuple, std::string> value_;
};

/// Variant tag of a formula node. Order matches the node variant.
enum class Kind {
  And,
  Or,
  Not,
  Implies,
  BigAnd,
  BigOr,
  True,
  False,
  TimePoint,
  Owner,
  Component,
  ComponentState,
  Occupy3DPoint,
  OccupyNode,
};

std::string_view kind_name(Kind kind) noexcept;

/// True for every kind without children.
constexpr bool is_atom_kind(Kind kind) noexcept {
  return kind >= Kind::True;
}

struct Node;

class Formula {
 public:
  Kind kind() const noexcept;
  bool is_atom() const noexcept { return is_atom_kind(kind()); }

  /// Pointer to the payload when the node holds T, otherwise nullptr.
  template <class T>
  const T* as() const noexcept;

  template <class T>
  bool is() const noexcept { return as<T>() != nullptr; }

  template <class Visitor>
  decltype(auto) visit(Visitor&& visitor) const;

  /// Identity (same node), as opposed to structural equality.
  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }

  /// Structural equality; see structural_equal().
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  template <class T>
  friend Formula make_formula(T payload);

  std::shared_ptr<const Node> node_;
};

namespace node {

struct And { Formula left; Formula right; };
struct Or { Formula left; Formula right; };
struct Not { Formula inner; };
struct Implies { Formula premise; Formula conclusion; };
struct BigAnd { std::vector<Formula> items; };
struct BigOr { std::vector<Formula> items; };
struct True {};
struct False {};
struct TimePoint { Timestamp value; };
struct Owner { std::string label; };
struct Component { std::string label; };
struct ComponentState { StateValue value; };
struct Occupy3DPoint { std::int64_t x; std::int64_t y; std::int64_t z; };
struct OccupyNode { std::int64_t id; };

}  // namespace node

struct Node {
  std::variant<node::And, node::Or, node::Not, node::Implies, node::BigAnd, node::BigOr,
               node::True, node::False, node::TimePoint, node::Owner, node::Component,
               node::ComponentState, node::Occupy3DPoint, node::OccupyNode>
      value;
};

inline Kind Formula::kind() const noexcept {
  return static_cast<Kind>(node_->value.index());
}

template <class T>
const T* Formula::as() const noexcept {
  return std::get_if<T>(&node_->value);
}

template <class Visitor>
decltype(auto) Formula::visit(Visitor&& visitor) const {
  return std::visit(std::forward<Visitor>(visitor), node_->value);
}

template <class T>
Formula make_formula(T payload) {
  return Formula(std::make_shared<const Node>(Node{std::move(payload)}));
}

// Builders.
Formula make_and(Formula left, Formula right);
Formula make_or(Formula left, Formula right);
Formula make_not(Formula inner);
Formula make_implies(Formula premise, Formula conclusion);
Formula make_big_and(std::vector<Formula> items);
Formula make_big_or(std::vector<Formula> items);
Formula make_true();
Formula make_false();
Formula make_time_point(Timestamp value);
Formula make_owner(std::string label);
Formula make_component(std::string label);
Formula make_component_state(StateValue value);
Formula make_point(std::int64_t x, std::int64_t y, std::int64_t z);
/// Throws std::invalid_argument when id < 1.
Formula make_node(std::int64_t id);

/// True iff both trees match variant-by-variant with equal payloads and
/// equal list order.
bool structural_equal(const Formula& a, const Formula& b);

/// Number of leaves (constants and atoms).
std::size_t count_atoms(const Formula& f);

using AtomPredicate = std::function<bool(const Formula&)>;

/// Predicate matching atoms of one kind.
AtomPredicate of_kind(Kind kind);

/// Matching atoms in depth-first, left-to-right order.
std::vector<Formula> collect(const Formula& f, const AtomPredicate& predicate);

/// Splices BigAnd items that are themselves BigAnd into the enclosing list,
/// recursively through the whole tree.
Formula flatten_bigand(const Formula& f);

}  // namespace invariant

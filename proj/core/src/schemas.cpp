#include "invariant/schemas.hpp"

#include <algorithm>
#include <sstream>

#include "invariant/calendar.hpp"

namespace invariant {

bool FestoComponentCatalog::is_actuator(std::string_view name) noexcept {
  return std::find(kActuators.begin(), kActuators.end(), name) != kActuators.end();
}

bool FestoComponentCatalog::is_sensor(std::string_view name) noexcept {
  return std::find(kSensors.begin(), kSensors.end(), name) != kSensors.end();
}

std::vector<std::string_view> FestoComponentCatalog::all() {
  std::vector<std::string_view> out(kActuators.begin(), kActuators.end());
  out.insert(out.end(), kSensors.begin(), kSensors.end());
  return out;
}

std::string SchemaReport::to_text() const {
  std::ostringstream out;
  out << to_string(collection) << ": " << (valid ? "valid" : "INVALID");
  if (!valid) out << " (" << stats.at("violations") << " violations)";
  out << '\n';
  for (const auto& v : violations) out << "  " << v.path << ": " << v.message << '\n';
  if (!valid && static_cast<std::int64_t>(violations.size()) < stats.at("violations")) {
    out << "  ... " << stats.at("violations") - static_cast<std::int64_t>(violations.size()) << " more\n";
  }
  return out.str();
}

std::string SchemaReport::to_key_values() const {
  std::ostringstream out;
  out << "collection=" << to_string(collection) << '\n';
  out << "valid=" << (valid ? "true" : "false") << '\n';
  for (const auto& [key, value] : stats) out << key << '=' << value << '\n';
  return out.str();
}

namespace {

// Collects violations against one report.
class Checker {
 public:
  explicit Checker(Collection c) {
    report_.collection = c;
    report_.stats["violations"] = 0;
  }

  void fail(const std::string& path, std::string message) {
    ++report_.stats["violations"];
    if (report_.violations.size() < SchemaReport::kMaxViolations) {
      report_.violations.push_back({path, std::move(message)});
    }
  }

  // Payload of T at path, or a violation and nullptr.
  template <class T>
  const T* expect(const Formula& f, const std::string& path, Kind kind) {
    if (auto* p = f.as<T>()) return p;
    fail(path, "expected " + std::string(kind_name(kind)) + ", found " + std::string(kind_name(f.kind())));
    return nullptr;
  }

  std::int64_t& stat(const std::string& key) { return report_.stats[key]; }

  SchemaReport finish() {
    report_.valid = report_.stats["violations"] == 0;
    return std::move(report_);
  }

 private:
  SchemaReport report_;
};

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Returns the list items of a top-level BigAnd, or nullptr after a violation.
const std::vector<Formula>* top_list(Checker& c, const Formula& f) {
  auto* list = c.expect<node::BigAnd>(f, "$", Kind::BigAnd);
  return list ? &list->items : nullptr;
}

bool is_owner(const Formula& f, std::string_view label) {
  auto* o = f.as<node::Owner>();
  return o && o->label == label;
}

// The point and color lists are large; paths are only built on failure.
void check_points(Checker& c, const std::vector<Formula>& items, const std::string& path) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto* imp = items[i].as<node::Implies>();
    if (imp && imp->premise.is<node::Occupy3DPoint>()) {
      auto* cs = imp->conclusion.as<node::ComponentState>();
      if (cs && cs->value.is_ints() && cs->value.as_ints().size() == 2) continue;
    }
    std::string p = at(path, i);
    if (!c.expect<node::Implies>(items[i], p, Kind::Implies)) continue;
    c.expect<node::Occupy3DPoint>(imp->premise, p + ".premise", Kind::Occupy3DPoint);
    auto* cs = c.expect<node::ComponentState>(imp->conclusion, p + ".conclusion", Kind::ComponentState);
    if (cs && !(cs->value.is_ints() && cs->value.as_ints().size() == 2)) {
      c.fail(p + ".conclusion", "UV mapping must be an integer pair");
    }
  }
}

void check_colors(Checker& c, const std::vector<Formula>& items, const std::string& path) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto* cs = items[i].as<node::ComponentState>();
    if (!cs) {
      c.expect<node::ComponentState>(items[i], at(path, i), Kind::ComponentState);
      continue;
    }
    if (!(cs->value.is_ints() && cs->value.as_ints().size() == 3)) {
      c.fail(at(path, i), "color must be an integer triple");
      continue;
    }
    for (std::int64_t channel : cs->value.as_ints()) {
      if (channel < -1 || channel > 255) {
        c.fail(at(path, i), "color channel " + std::to_string(channel) + " outside -1..255");
        break;
      }
    }
  }
}

}  // namespace

SchemaReport validate_kinect(const Formula& f) {
  Checker c(Collection::Kinect);
  c.stat("points") = 0;
  c.stat("colors") = 0;
  auto* frame = c.expect<node::Implies>(f, "$", Kind::Implies);
  if (!frame) return c.finish();
  c.expect<node::TimePoint>(frame->premise, "$.premise", Kind::TimePoint);
  auto* parts = c.expect<node::BigAnd>(frame->conclusion, "$.conclusion", Kind::BigAnd);
  if (!parts) return c.finish();
  if (parts->items.size() != 2) {
    c.fail("$.conclusion", "expected Points and Colors branches, found " + std::to_string(parts->items.size()) +
                               " items");
  }
  static constexpr std::string_view kBranches[] = {"Points", "Colors"};
  for (std::size_t i = 0; i < std::min<std::size_t>(parts->items.size(), 2); ++i) {
    std::string p = at("$.conclusion", i);
    auto* branch = c.expect<node::Implies>(parts->items[i], p, Kind::Implies);
    if (!branch) continue;
    if (!is_owner(branch->premise, kBranches[i])) {
      c.fail(p + ".premise", "expected Owner(" + std::string(kBranches[i]) + ")");
      continue;
    }
    auto* list = c.expect<node::BigAnd>(branch->conclusion, p + ".conclusion", Kind::BigAnd);
    if (!list) continue;
    if (i == 0) {
      c.stat("points") = static_cast<std::int64_t>(list->items.size());
      check_points(c, list->items, p + ".conclusion");
    } else {
      c.stat("colors") = static_cast<std::int64_t>(list->items.size());
      check_colors(c, list->items, p + ".conclusion");
    }
  }
  return c.finish();
}

SchemaReport validate_festo(const Formula& f) {
  Checker c(Collection::Festo);
  c.stat("events") = 0;
  for (auto name : FestoComponentCatalog::all()) c.stat("component." + std::string(name)) = 0;
  auto* events = top_list(c, f);
  if (!events) return c.finish();
  c.stat("events") = static_cast<std::int64_t>(events->size());

  std::optional<std::int64_t> last_millis;
  for (std::size_t i = 0; i < events->size(); ++i) {
    std::string p = at("$", i);
    auto* imp = c.expect<node::Implies>((*events)[i], p, Kind::Implies);
    if (!imp) continue;
    if (auto* premise = c.expect<node::And>(imp->premise, p + ".premise", Kind::And)) {
      if (auto* tp = c.expect<node::TimePoint>(premise->left, p + ".premise.left", Kind::TimePoint)) {
        auto millis = calendar::to_epoch_millis(tp->value);
        if (!millis) {
          c.fail(p + ".premise.left", "unrecognised timestamp '" + tp->value.text() + "'");
        } else {
          if (last_millis && *millis < *last_millis) c.fail(p + ".premise.left", "timestamp goes backwards");
          last_millis = millis;
        }
      }
      if (auto* comp = c.expect<node::Component>(premise->right, p + ".premise.right", Kind::Component)) {
        if (FestoComponentCatalog::contains(comp->label)) {
          ++c.stat("component." + comp->label);
        } else {
          c.fail(p + ".premise.right", "unknown component '" + comp->label + "'");
        }
      }
    }
    if (auto* cs = c.expect<node::ComponentState>(imp->conclusion, p + ".conclusion", Kind::ComponentState)) {
      if (!cs->value.is_number()) {
        c.fail(p + ".conclusion", "signal value must be a number");
      } else if (std::find(kFestoAdmissibleValues.begin(), kFestoAdmissibleValues.end(),
                           cs->value.as_number()) == kFestoAdmissibleValues.end()) {
        c.fail(p + ".conclusion", "signal value " + std::to_string(cs->value.as_number()) +
                                      " not in {5.0, 5.5, 80.0, 100.0}");
      }
    }
  }
  return c.finish();
}

SchemaReport validate_trains(const Formula& f) {
  Checker c(Collection::Trains);
  c.stat("time_points") = 0;
  c.stat("max_node") = 0;
  c.stat("sliding_window") = 1;
  auto* frames = top_list(c, f);
  if (!frames) return c.finish();
  c.stat("time_points") = static_cast<std::int64_t>(frames->size());

  std::vector<std::vector<std::int64_t>> occupancy;
  occupancy.reserve(frames->size());
  std::optional<std::int64_t> last_millis;
  std::int64_t max_node = 0;
  for (std::size_t i = 0; i < frames->size(); ++i) {
    std::string p = at("$", i);
    std::vector<std::int64_t> nodes;
    auto* imp = c.expect<node::Implies>((*frames)[i], p, Kind::Implies);
    if (imp) {
      if (auto* tp = c.expect<node::TimePoint>(imp->premise, p + ".premise", Kind::TimePoint)) {
        if (!tp->value.is_epoch()) {
          c.fail(p + ".premise", "train time points must be epoch milliseconds");
        } else {
          if (last_millis && tp->value.millis() <= *last_millis) {
            c.fail(p + ".premise", "timestamps must strictly increase");
          }
          last_millis = tp->value.millis();
        }
      }
      if (auto* list = c.expect<node::BigAnd>(imp->conclusion, p + ".conclusion", Kind::BigAnd)) {
        if (list->items.size() != kTrainLength) {
          c.fail(p + ".conclusion", "expected exactly 10 OccupyNode, found " + std::to_string(list->items.size()));
        }
        for (std::size_t j = 0; j < list->items.size(); ++j) {
          auto* n = c.expect<node::OccupyNode>(list->items[j], at(p + ".conclusion", j), Kind::OccupyNode);
          if (!n) continue;
          if (n->id < 1) c.fail(at(p + ".conclusion", j), "node id must be >= 1");
          max_node = std::max(max_node, n->id);
          nodes.push_back(n->id);
        }
      }
    }
    occupancy.push_back(std::move(nodes));
  }
  c.stat("max_node") = max_node;

  bool sliding = true;
  for (std::size_t i = 1; i < occupancy.size() && sliding; ++i) {
    const auto& prev = occupancy[i - 1];
    const auto& next = occupancy[i];
    if (prev.empty() || prev.size() != next.size() ||
        !std::equal(prev.begin() + 1, prev.end(), next.begin()) ||
        next.back() != prev.back() % max_node + 1) {
      sliding = false;
    }
  }
  c.stat("sliding_window") = sliding ? 1 : 0;
  return c.finish();
}

SchemaReport validate_weather(const Formula& f) {
  Checker c(Collection::Weather);
  c.stat("time_points") = 0;
  auto* samples = top_list(c, f);
  if (!samples) return c.finish();
  c.stat("time_points") = static_cast<std::int64_t>(samples->size());

  static constexpr std::string_view kOwners[] = {"ID", "Index", "Name"};
  for (std::size_t i = 0; i < samples->size(); ++i) {
    std::string p = at("$", i);
    auto* imp = c.expect<node::Implies>((*samples)[i], p, Kind::Implies);
    if (!imp) continue;
    c.expect<node::TimePoint>(imp->premise, p + ".premise", Kind::TimePoint);
    auto* fields = c.expect<node::BigAnd>(imp->conclusion, p + ".conclusion", Kind::BigAnd);
    if (!fields) continue;
    if (fields->items.size() != 3) {
      c.fail(p + ".conclusion", "expected ID, Index and Name, found " + std::to_string(fields->items.size()) +
                                    " items");
    }
    int seen[3] = {0, 0, 0};
    for (std::size_t j = 0; j < fields->items.size(); ++j) {
      std::string q = at(p + ".conclusion", j);
      auto* field = c.expect<node::Implies>(fields->items[j], q, Kind::Implies);
      if (!field) continue;
      auto* owner = c.expect<node::Owner>(field->premise, q + ".premise", Kind::Owner);
      auto* cs = c.expect<node::ComponentState>(field->conclusion, q + ".conclusion", Kind::ComponentState);
      if (!owner) continue;
      auto which = std::find(std::begin(kOwners), std::end(kOwners), owner->label) - std::begin(kOwners);
      if (which == 3) {
        c.fail(q + ".premise", "unexpected owner '" + owner->label + "'");
        continue;
      }
      if (++seen[which] > 1) c.fail(q + ".premise", "duplicate owner '" + owner->label + "'");
      if (!cs) continue;
      if (which == 1) {
        if (!(cs->value.is_ints() && cs->value.as_ints().size() == 1)) {
          c.fail(q + ".conclusion", "UV index must be an integer");
          continue;
        }
        std::int64_t v = cs->value.as_ints()[0];
        if (v < 0 || v > kUvIndexMax) {
          c.fail(q + ".conclusion", "UV index " + std::to_string(v) + " outside 0..1000");
        } else if (v % 10 != 0) {
          c.fail(q + ".conclusion", "UV index " + std::to_string(v) + " has more than one decimal place");
        }
      } else if (!cs->value.is_text()) {
        c.fail(q + ".conclusion", std::string(kOwners[which]) + " must be text");
      }
    }
  }
  return c.finish();
}

SchemaReport validate(const Formula& f, Collection collection) {
  switch (collection) {
    case Collection::Kinect: return validate_kinect(f);
    case Collection::Festo: return validate_festo(f);
    case Collection::Trains: return validate_trains(f);
    case Collection::Weather: return validate_weather(f);
  }
  return validate_kinect(f);
}

std::optional<Collection> detect_schema(const Formula& f) {
  std::optional<Collection> found;
  for (Collection c : kAllCollections) {
    if (validate(f, c).valid) {
      if (found) return std::nullopt;
      found = c;
    }
  }
  return found;
}

}  // namespace invariant

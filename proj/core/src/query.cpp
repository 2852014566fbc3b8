#include "invariant/query.hpp"

#include <algorithm>

#include "invariant/schemas.hpp"

namespace invariant {
namespace {

void require_valid(const Formula& f, Collection c) {
  SchemaReport report = validate(f, c);
  if (!report.valid) {
    std::string msg = "not a valid " + std::string(to_string(c)) + " dataset";
    if (!report.violations.empty()) {
      msg += ": " + report.violations.front().path + ": " + report.violations.front().message;
    }
    throw NotADataset(msg);
  }
}

const std::vector<Formula>& items_of(const Formula& f) {
  return f.as<node::BigAnd>()->items;
}

const Timestamp& premise_time(const Formula& implies) {
  return implies.as<node::Implies>()->premise.as<node::TimePoint>()->value;
}

}  // namespace

std::string UvIndex::str() const {
  std::int64_t tenths = stored / 10;
  std::string out = std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
  return out;
}

std::vector<Timestamp> time_points(const Formula& f) {
  auto collection = detect_schema(f);
  if (!collection) throw NotADataset("formula does not match exactly one collection schema");
  std::vector<Timestamp> out;
  switch (*collection) {
    case Collection::Kinect:
      out.push_back(premise_time(f));
      break;
    case Collection::Festo:
      for (const auto& e : items_of(f)) {
        out.push_back(e.as<node::Implies>()->premise.as<node::And>()->left.as<node::TimePoint>()->value);
      }
      break;
    case Collection::Trains:
    case Collection::Weather:
      for (const auto& frame : items_of(f)) out.push_back(premise_time(frame));
      break;
  }
  return out;
}

std::vector<EventSample> component_series(const Formula& f, std::string_view component) {
  require_valid(f, Collection::Festo);
  std::vector<EventSample> out;
  for (const auto& e : items_of(f)) {
    auto* imp = e.as<node::Implies>();
    auto* premise = imp->premise.as<node::And>();
    const auto& label = premise->right.as<node::Component>()->label;
    if (label != component) continue;
    out.push_back({premise->left.as<node::TimePoint>()->value, label,
                   imp->conclusion.as<node::ComponentState>()->value});
  }
  return out;
}

std::optional<std::set<std::int64_t>> occupancy_at(const Formula& f, std::int64_t millis) {
  require_valid(f, Collection::Trains);
  const auto& frames = items_of(f);
  // Frames are strictly increasing in time: find the first frame after t.
  auto after = std::upper_bound(frames.begin(), frames.end(), millis, [](std::int64_t t, const Formula& frame) {
    return t < premise_time(frame).millis();
  });
  if (after == frames.begin()) return std::nullopt;
  const auto& nodes = std::prev(after)->as<node::Implies>()->conclusion.as<node::BigAnd>()->items;
  std::set<std::int64_t> out;
  for (const auto& n : nodes) out.insert(n.as<node::OccupyNode>()->id);
  return out;
}

std::vector<UvSample> uv_series(const Formula& f) {
  require_valid(f, Collection::Weather);
  std::vector<UvSample> out;
  for (const auto& sample : items_of(f)) {
    auto* imp = sample.as<node::Implies>();
    for (const auto& field : imp->conclusion.as<node::BigAnd>()->items) {
      auto* fi = field.as<node::Implies>();
      if (fi->premise.as<node::Owner>()->label != "Index") continue;
      out.push_back({imp->premise.as<node::TimePoint>()->value,
                     UvIndex{fi->conclusion.as<node::ComponentState>()->value.as_ints()[0]}});
    }
  }
  return out;
}

PointBounds point_cloud_bounds(const Formula& f) {
  require_valid(f, Collection::Kinect);
  const auto& branches = f.as<node::Implies>()->conclusion.as<node::BigAnd>()->items;
  const auto& points = branches[0].as<node::Implies>()->conclusion.as<node::BigAnd>()->items;
  if (points.empty()) throw NotADataset("kinect frame has no points");
  auto* first = points.front().as<node::Implies>()->premise.as<node::Occupy3DPoint>();
  PointBounds b{first->x, first->y, first->z, first->x, first->y, first->z};
  for (const auto& entry : points) {
    auto* p = entry.as<node::Implies>()->premise.as<node::Occupy3DPoint>();
    b.min_x = std::min(b.min_x, p->x);
    b.min_y = std::min(b.min_y, p->y);
    b.min_z = std::min(b.min_z, p->z);
    b.max_x = std::max(b.max_x, p->x);
    b.max_y = std::max(b.max_y, p->y);
    b.max_z = std::max(b.max_z, p->z);
  }
  return b;
}

}  // namespace invariant

#include "invariant/registry.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace invariant {

OntologyPath::OntologyPath(std::vector<std::string> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw InvalidName("ontology path must not be empty");
  for (const auto& s : segments_) {
    if (!is_dotted_identifier(s, 1) || s.find('.') != std::string::npos) {
      throw InvalidName("invalid ontology path segment '" + s + "'");
    }
  }
}

OntologyPath OntologyPath::parse(std::string_view dotted) {
  if (!is_dotted_identifier(dotted, 1)) {
    throw InvalidName("invalid ontology path '" + std::string(dotted) + "'");
  }
  return OntologyPath(split_dotted(dotted));
}

std::string OntologyPath::str() const {
  std::string out;
  for (const auto& s : segments_) {
    if (!out.empty()) out.push_back('.');
    out += s;
  }
  return out;
}

bool OntologyPath::starts_with(const OntologyPath& prefix) const {
  return prefix.segments_.size() <= segments_.size() &&
         std::equal(prefix.segments_.begin(), prefix.segments_.end(), segments_.begin());
}

UnknownPath::UnknownPath(const OntologyPath& path, std::string nearest_prefix)
    : std::out_of_range("unknown ontology path " + path.str() +
                        (nearest_prefix.empty() ? std::string(" (no registered prefix)")
                                                : " (nearest registered prefix: " + nearest_prefix + ")")),
      nearest_prefix_(std::move(nearest_prefix)) {}

DuplicatePath::DuplicatePath(const OntologyPath& path)
    : std::invalid_argument("ontology path already registered: " + path.str()) {}

ManifestError::ManifestError(std::size_t line, const std::string& message)
    : std::runtime_error("registry manifest line " + std::to_string(line) + ": " + message), line_(line) {}

Registry::Registry(const Registry& other) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
}

Registry& Registry::operator=(const Registry& other) {
  if (this == &other) return *this;
  std::map<OntologyPath, RegistryEntry> copy;
  {
    std::shared_lock lock(other.mutex_);
    copy = other.entries_;
  }
  std::unique_lock lock(mutex_);
  entries_ = std::move(copy);
  return *this;
}

Registry Registry::with_builtins() {
  struct Seed {
    std::string_view path;
    std::string_view dataset;
    Collection collection;
  };
  static constexpr Seed kAccessors[] = {
      {"Robotics.Lego.Trains.experiment1", "aicause.lego.trains.experiment1", Collection::Trains},
      {"Robotics.Festo.MiniFactory.station1.scenario1", "aicause.festo.station1.Scenario1.20mins",
       Collection::Festo},
      {"Robotics.Festo.MiniFactory.station1.capsBlocking", "aicause.festo.station1.small.2capsBlocking",
       Collection::Festo},
      {"Weather.SmartSpace.Melbourne.Aug_27_2015", "aicause.smartspace.melbourne.2015.aug.27",
       Collection::Weather},
      {"Weather.SmartSpace.Melbourne.uvIndex_Dec_28_2015", "aicause.smartspace.melbourne.2015.aug.27",
       Collection::Weather},
      {"Scan.Kinect.bottle", "aicause.kinect.scan.bottle", Collection::Kinect},
      {"Scan.Kinect.obstacles", "aicause.kinect.scan.obstacles1a", Collection::Kinect},
      {"Scan.Kinect.obstacles1a", "aicause.kinect.scan.obstacles1a", Collection::Kinect},
  };
  Registry r;
  for (const auto& s : kAccessors) {
    r.register_entry(OntologyPath::parse(s.path), DatasetName(std::string(s.dataset)), s.collection);
  }
  for (int i = 1; i <= 15; ++i) {
    std::string leaf = "obstacles" + std::to_string(i);
    r.register_entry(OntologyPath({"Scan", "Kinect", leaf}), DatasetName("aicause.kinect.scan." + leaf),
                     Collection::Kinect);
  }
  return r;
}

const RegistryEntry* Registry::find(const OntologyPath& path) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(path);
  return it == entries_.end() ? nullptr : &it->second;
}

DatasetName Registry::resolve(const OntologyPath& path) const {
  std::shared_lock lock(mutex_);
  if (auto it = entries_.find(path); it != entries_.end()) return it->second.dataset;

  std::size_t best = 0;
  for (const auto& [key, entry] : entries_) {
    const auto& a = key.segments();
    const auto& b = path.segments();
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
    best = std::max(best, n);
  }
  std::string prefix;
  if (best > 0) {
    prefix = OntologyPath(std::vector<std::string>(path.segments().begin(),
                                                   path.segments().begin() + static_cast<std::ptrdiff_t>(best)))
                 .str();
  }
  throw UnknownPath(path, prefix);
}

void Registry::register_entry(OntologyPath path, DatasetName dataset, Collection collection) {
  std::unique_lock lock(mutex_);
  if (entries_.contains(path)) throw DuplicatePath(path);
  OntologyPath key = path;
  entries_.emplace(std::move(key), RegistryEntry{std::move(path), std::move(dataset), collection});
}

std::vector<RegistryEntry> Registry::list_entries() const {
  std::shared_lock lock(mutex_);
  std::vector<RegistryEntry> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(entry);
  return out;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void Registry::load_manifest(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) {
      if (tok != "->" && tok != "→") tokens.push_back(tok);
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 3) throw ManifestError(number, "expected 'path dataset collection'");
    auto collection = parse_collection(tokens[2]);
    if (!collection) throw ManifestError(number, "unknown collection '" + tokens[2] + "'");
    try {
      register_entry(OntologyPath::parse(tokens[0]), DatasetName(tokens[1]), *collection);
    } catch (const std::invalid_argument& e) {
      throw ManifestError(number, e.what());
    }
  }
}

void Registry::load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ManifestError(0, "cannot open " + file.string());
  load_manifest(in);
}

}  // namespace invariant

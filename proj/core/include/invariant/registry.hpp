#pragma once

// Ontology paths (Scan.Kinect.bottle, Robotics.Lego.Trains.experiment1, ...)
// bound to archive dataset names.

#include <compare>
#include <filesystem>
#include <istream>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invariant/collection.hpp"
#include "invariant/dataset_name.hpp"

namespace invariant {

class OntologyPath {
 public:
  /// Throws InvalidName unless every segment matches [A-Za-z0-9_]+.
  explicit OntologyPath(std::vector<std::string> segments);
  /// Dotted form, e.g. "Scan.Kinect.bottle".
  static OntologyPath parse(std::string_view dotted);

  const std::vector<std::string>& segments() const noexcept { return segments_; }
  std::string str() const;

  /// True when this path's segments start with all of `prefix`'s segments.
  bool starts_with(const OntologyPath& prefix) const;

  friend auto operator<=>(const OntologyPath&, const OntologyPath&) = default;

 private:
  std::vector<std::string> segments_;
};

struct RegistryEntry {
  OntologyPath path;
  DatasetName dataset;
  Collection collection;
};

class UnknownPath : public std::out_of_range {
 public:
  UnknownPath(const OntologyPath& path, std::string nearest_prefix);
  const std::string& nearest_prefix() const noexcept { return nearest_prefix_; }

 private:
  std::string nearest_prefix_;
};

class DuplicatePath : public std::invalid_argument {
 public:
  explicit DuplicatePath(const OntologyPath& path);
};

class ManifestError : public std::runtime_error {
 public:
  ManifestError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class Registry {
 public:
  /// Empty registry.
  Registry() = default;

  /// Registry seeded with the published accessor paths and the Kinect scans.
  static Registry with_builtins();

  Registry(const Registry& other);
  Registry& operator=(const Registry& other);

  /// Throws UnknownPath naming the longest registered prefix.
  DatasetName resolve(const OntologyPath& path) const;
  const RegistryEntry* find(const OntologyPath& path) const;

  /// Throws DuplicatePath when the path is already bound.
  void register_entry(OntologyPath path, DatasetName dataset, Collection collection);

  /// Entries ordered lexicographically by path segments.
  std::vector<RegistryEntry> list_entries() const;
  std::size_t size() const;

  /// Reads `path  dataset  collection` triples, one per line. Fields are
  /// separated by whitespace and optional `->` arrows; `#` starts a comment.
  void load_manifest(std::istream& in);
  void load_manifest(const std::filesystem::path& file);

 private:
  mutable std::shared_mutex mutex_;
  std::map<OntologyPath, RegistryEntry> entries_;
};

}  // namespace invariant

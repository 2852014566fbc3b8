#pragma once

// Directory-backed persistence of named formulas with an in-process cache.
//
// Files written per dataset:
//   <data_dir>/<name>       gzip stream of the compact canonical text
//   <data_dir>/<name>.txt   the same formula, pretty-printed
//
// Access methods and their disk behaviour:
//
//   load_or_throw                    always reads disk, never caches, throws
//   load_and_cache                   always reads disk, inserts
//   find_in_cache                    never reads disk
//   find_in_cache_or_load            reads on miss, does not insert
//   find_in_cache_or_load_and_cache  reads on miss, inserts
//
// Cached entries live until clear_cache(); there is no eviction.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "invariant/dataset_name.hpp"
#include "invariant/formula.hpp"

namespace invariant {

inline constexpr std::string_view kDataDirEnvVar = "INVARIANT_DATA_DIR";
inline constexpr std::string_view kDefaultDataDir = "../data";

struct StoreConfig {
  std::filesystem::path data_dir{std::string(kDefaultDataDir)};

  /// Explicit directory if given, else $INVARIANT_DATA_DIR, else ../data.
  static StoreConfig resolve(std::optional<std::filesystem::path> explicit_dir = std::nullopt);
};

/// Filesystem failure while writing or listing archives.
class StoreError : public std::runtime_error {
 public:
  StoreError(const std::string& what, std::filesystem::path path);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// No usable archive for a dataset name.
class UnknownDataset : public std::runtime_error {
 public:
  explicit UnknownDataset(std::string name);
  UnknownDataset(std::string name, const std::string& what);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// The archive exists but does not decompress or parse.
class CorruptArchive : public UnknownDataset {
 public:
  CorruptArchive(std::string name, std::filesystem::path path, std::string detail);
  const std::filesystem::path& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::filesystem::path path_;
  std::string detail_;
};

namespace archive {

/// gzip member holding `text`.
std::string compress(std::string_view text);
/// Inverse of compress(). Throws std::runtime_error on a damaged stream.
std::string decompress(std::string_view bytes);
bool has_gzip_magic(std::string_view bytes) noexcept;

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Reads a compressed archive or a plain text file, sniffing the gzip
/// magic bytes. Throws CorruptArchive (named after the file) when the
/// content is unreadable and UnknownDataset when the file is missing.
Formula read_formula_file(const std::filesystem::path& path);
void write_archive_file(const std::filesystem::path& path, const Formula& f);
void write_text_file(const std::filesystem::path& path, const Formula& f);

}  // namespace archive

using DiagnosticSink = std::function<void(std::string_view)>;

class ArchiveStore {
 public:
  explicit ArchiveStore(StoreConfig config = StoreConfig::resolve(), DiagnosticSink diagnostics = {});

  ArchiveStore(const ArchiveStore&) = delete;
  ArchiveStore& operator=(const ArchiveStore&) = delete;

  const std::filesystem::path& data_dir() const noexcept { return config_.data_dir; }
  std::filesystem::path archive_path(const DatasetName& name) const;
  std::filesystem::path text_path(const DatasetName& name) const;

  void save(const Formula& data, const DatasetName& name);
  void save(const Formula& data, std::string_view name) { save(data, DatasetName(std::string(name))); }
  void save_and_cache(const Formula& data, const DatasetName& name);
  void save_and_cache(const Formula& data, std::string_view name) {
    save_and_cache(data, DatasetName(std::string(name)));
  }

  /// Fresh read from disk on every call. Throws UnknownDataset when no
  /// archive exists and CorruptArchive when it cannot be decoded.
  Formula load_or_throw(const DatasetName& name) const;
  Formula load_or_throw(std::string_view name) const { return load_or_throw(DatasetName(std::string(name))); }

  std::optional<Formula> load_and_cache(const DatasetName& name);
  std::optional<Formula> find_in_cache(const DatasetName& name) const;
  std::optional<Formula> find_in_cache_or_load(const DatasetName& name) const;
  std::optional<Formula> find_in_cache_or_load_and_cache(const DatasetName& name);

  void clear_cache();
  std::size_t cache_size() const;

  /// Number of times this store went to disk for a dataset.
  std::uint64_t disk_reads() const noexcept { return disk_reads_.load(); }

  /// Archives present in data_dir, sorted by name. `.txt` siblings and
  /// files that are not gzip archives with a valid dataset name are skipped.
  std::vector<DatasetName> list_archives() const;

 private:
  std::optional<Formula> load_quietly(const DatasetName& name) const;
  void insert(const DatasetName& name, const Formula& data);

  StoreConfig config_;
  DiagnosticSink diagnostics_;
  mutable std::atomic<std::uint64_t> disk_reads_{0};
  mutable std::shared_mutex cache_mutex_;
  std::unordered_map<std::string, Formula> cache_;
};

}  // namespace invariant

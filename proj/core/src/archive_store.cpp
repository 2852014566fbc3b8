#include "invariant/archive_store.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "invariant/text_format.hpp"

namespace fs = std::filesystem;

namespace invariant {

StoreConfig StoreConfig::resolve(std::optional<fs::path> explicit_dir) {
  StoreConfig config;
  if (explicit_dir && !explicit_dir->empty()) {
    config.data_dir = *explicit_dir;
  } else if (const char* env = std::getenv(std::string(kDataDirEnvVar).c_str()); env && *env) {
    config.data_dir = env;
  }
  return config;
}

StoreError::StoreError(const std::string& what, fs::path path)
    : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}

UnknownDataset::UnknownDataset(std::string name)
    : std::runtime_error("unknown dataset: " + name), name_(std::move(name)) {}

UnknownDataset::UnknownDataset(std::string name, const std::string& what)
    : std::runtime_error(what), name_(std::move(name)) {}

CorruptArchive::CorruptArchive(std::string name, fs::path path, std::string detail)
    : UnknownDataset(name, "corrupt archive for dataset " + name + " (" + path.string() + "): " + detail),
      path_(std::move(path)),
      detail_(std::move(detail)) {}

namespace archive {

namespace {
constexpr int kGzipWindowBits = 15 + 16;
constexpr std::size_t kChunk = 1 << 16;
}  // namespace

bool has_gzip_magic(std::string_view bytes) noexcept {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

std::string compress(std::string_view text) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, kGzipWindowBits, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(text.size())));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
  zs.avail_in = static_cast<uInt>(text.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) {
    throw std::runtime_error("deflate failed");
  }
  out.resize(zs.total_out);
  return out;
}

std::string decompress(std::string_view bytes) {
  if (!has_gzip_magic(bytes)) throw std::runtime_error("not a gzip stream");
  z_stream zs{};
  if (inflateInit2(&zs, kGzipWindowBits) != Z_OK) {
    throw std::runtime_error("inflateInit2 failed");
  }
  std::string out;
  std::vector<char> chunk(kChunk);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(chunk.data());
    zs.avail_out = static_cast<uInt>(chunk.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(chunk.data(), chunk.size() - zs.avail_out);
  }
  bool trailing = zs.avail_in != 0;
  std::string msg = zs.msg ? zs.msg : "truncated or damaged gzip stream";
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw std::runtime_error(msg);
  if (trailing) throw std::runtime_error("trailing bytes after gzip stream");
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open for reading", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  static std::atomic<std::uint64_t> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw StoreError("cannot create directory (" + ec.message() + ")", path.parent_path());
  }
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << '.' << counter.fetch_add(1);
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open for writing", tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw StoreError("write failed", tmp);
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StoreError("cannot move archive into place", path);
  }
}

Formula read_formula_file(const fs::path& path) {
  std::string label = path.filename().string();
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UnknownDataset(label);
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const StoreError& e) {
    throw CorruptArchive(label, path, e.what());
  }
  try {
    if (has_gzip_magic(bytes)) {
      return parse(decompress(bytes));
    }
    return parse(bytes);
  } catch (const std::exception& e) {
    throw CorruptArchive(label, path, e.what());
  }
}

void write_archive_file(const fs::path& path, const Formula& f) {
  write_file_atomic(path, compress(print(f)));
}

void write_text_file(const fs::path& path, const Formula& f) {
  std::string text = print(f, PrintStyle::Pretty);
  text.push_back('\n');
  write_file_atomic(path, text);
}

}  // namespace archive

ArchiveStore::ArchiveStore(StoreConfig config, DiagnosticSink diagnostics)
    : config_(std::move(config)), diagnostics_(std::move(diagnostics)) {
  if (!diagnostics_) {
    diagnostics_ = [](std::string_view msg) { std::cerr << "invariant: " << msg << '\n'; };
  }
}

fs::path ArchiveStore::archive_path(const DatasetName& name) const {
  return config_.data_dir / name.str();
}

fs::path ArchiveStore::text_path(const DatasetName& name) const {
  return config_.data_dir / (name.str() + ".txt");
}

void ArchiveStore::save(const Formula& data, const DatasetName& name) {
  archive::write_archive_file(archive_path(name), data);
  archive::write_text_file(text_path(name), data);
}

void ArchiveStore::save_and_cache(const Formula& data, const DatasetName& name) {
  save(data, name);
  insert(name, data);
}

Formula ArchiveStore::load_or_throw(const DatasetName& name) const {
  disk_reads_.fetch_add(1);
  fs::path path = archive_path(name);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UnknownDataset(name.str());
  std::string bytes;
  try {
    bytes = archive::read_file(path);
  } catch (const StoreError& e) {
    throw CorruptArchive(name.str(), path, e.what());
  }
  if (!archive::has_gzip_magic(bytes)) {
    throw CorruptArchive(name.str(), path, "missing gzip header");
  }
  try {
    return parse(archive::decompress(bytes));
  } catch (const std::exception& e) {
    throw CorruptArchive(name.str(), path, e.what());
  }
}

std::optional<Formula> ArchiveStore::load_quietly(const DatasetName& name) const {
  try {
    return load_or_throw(name);
  } catch (const CorruptArchive& e) {
    diagnostics_(e.what());
  } catch (const UnknownDataset&) {
  }
  return std::nullopt;
}

void ArchiveStore::insert(const DatasetName& name, const Formula& data) {
  std::unique_lock lock(cache_mutex_);
  cache_.insert_or_assign(name.str(), data);
}

std::optional<Formula> ArchiveStore::load_and_cache(const DatasetName& name) {
  auto f = load_quietly(name);
  if (f) insert(name, *f);
  return f;
}

std::optional<Formula> ArchiveStore::find_in_cache(const DatasetName& name) const {
  std::shared_lock lock(cache_mutex_);
  auto it = cache_.find(name.str());
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

std::optional<Formula> ArchiveStore::find_in_cache_or_load(const DatasetName& name) const {
  if (auto hit = find_in_cache(name)) return hit;
  return load_quietly(name);
}

std::optional<Formula> ArchiveStore::find_in_cache_or_load_and_cache(const DatasetName& name) {
  if (auto hit = find_in_cache(name)) return hit;
  return load_and_cache(name);
}

void ArchiveStore::clear_cache() {
  std::unique_lock lock(cache_mutex_);
  cache_.clear();
}

std::size_t ArchiveStore::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

std::vector<DatasetName> ArchiveStore::list_archives() const {
  std::vector<DatasetName> out;
  std::error_code ec;
  if (!fs::is_directory(config_.data_dir, ec)) return out;
  for (fs::directory_iterator it(config_.data_dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    std::string file = it->path().filename().string();
    if (!DatasetName::is_valid(file)) continue;
    std::ifstream in(it->path(), std::ios::binary);
    char magic[2] = {};
    in.read(magic, 2);
    if (!archive::has_gzip_magic(std::string_view(magic, static_cast<std::size_t>(in.gcount())))) continue;
    out.emplace_back(file);
  }
  if (ec) throw StoreError("cannot list data directory", config_.data_dir);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace invariant

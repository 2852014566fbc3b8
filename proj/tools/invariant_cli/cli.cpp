#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>

#include "invariant/archive_store.hpp"
#include "invariant/generators.hpp"
#include "invariant/query.hpp"
#include "invariant/registry.hpp"
#include "invariant/schemas.hpp"
#include "invariant/text_format.hpp"

namespace fs = std::filesystem;

namespace invariant::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data_dir;
  std::string registry_file;

  std::string collection;
  std::uint64_t seed = 1;
  std::string name;
  std::optional<std::int64_t> frames, events, samples, points, colors;

  std::string target;
  std::string output;
  std::string to;
  std::optional<std::int64_t> head;
  std::string series;
};

struct Context {
  ArchiveStore store;
  Registry registry;
  std::ostream& out;
  std::ostream& err;
};

Collection collection_arg(const std::string& text) {
  auto c = parse_collection(text);
  if (!c) throw UsageError("unknown collection '" + text + "' (expected kinect, festo, trains or weather)");
  return *c;
}

std::int64_t size_arg(const char* flag, std::int64_t value) {
  if (value < 0) throw UsageError(std::string(flag) + " must be >= 0");
  return value;
}

void reject_flag(const std::optional<std::int64_t>& value, const char* flag, Collection c) {
  if (value) throw UsageError(std::string(flag) + " does not apply to " + std::string(to_string(c)));
}

GeneratorSpec spec_from(const Options& o, Collection c) {
  GeneratorSpec spec = default_spec(c, o.seed);
  switch (c) {
    case Collection::Kinect: {
      auto& s = std::get<KinectSpec>(spec);
      if (o.points) s.n_points = size_arg("--points", *o.points);
      if (o.colors) s.n_colors = size_arg("--colors", *o.colors);
      reject_flag(o.frames, "--frames", c);
      reject_flag(o.events, "--events", c);
      reject_flag(o.samples, "--samples", c);
      break;
    }
    case Collection::Festo: {
      auto& s = std::get<FestoSpec>(spec);
      if (o.events) s.n_events = size_arg("--events", *o.events);
      reject_flag(o.frames, "--frames", c);
      reject_flag(o.samples, "--samples", c);
      reject_flag(o.points, "--points", c);
      reject_flag(o.colors, "--colors", c);
      break;
    }
    case Collection::Trains: {
      auto& s = std::get<TrainsSpec>(spec);
      if (o.frames) s.n_frames = size_arg("--frames", *o.frames);
      reject_flag(o.events, "--events", c);
      reject_flag(o.samples, "--samples", c);
      reject_flag(o.points, "--points", c);
      reject_flag(o.colors, "--colors", c);
      break;
    }
    case Collection::Weather: {
      auto& s = std::get<WeatherSpec>(spec);
      if (o.samples) s.n_samples = size_arg("--samples", *o.samples);
      reject_flag(o.frames, "--frames", c);
      reject_flag(o.events, "--events", c);
      reject_flag(o.points, "--points", c);
      reject_flag(o.colors, "--colors", c);
      break;
    }
  }
  return spec;
}

// A target is an existing file, a registered ontology path, or a dataset
// name in the data directory, tried in that order.
Formula load_target(Context& ctx, const std::string& target) {
  std::error_code ec;
  if (fs::is_regular_file(target, ec)) return archive::read_formula_file(target);
  if (is_dotted_identifier(target, 1)) {
    if (auto* entry = ctx.registry.find(OntologyPath::parse(target))) {
      return ctx.store.load_or_throw(entry->dataset);
    }
  }
  if (!DatasetName::is_valid(target)) throw UnknownDataset(target);
  return ctx.store.load_or_throw(DatasetName(target));
}

std::string time_text(const Timestamp& ts) {
  return ts.is_epoch() ? std::to_string(ts.millis()) : ts.text();
}

int cmd_generate(Context& ctx, const Options& o) {
  Collection c = collection_arg(o.collection);
  DatasetName name(o.name);
  GeneratorSpec spec = spec_from(o, c);
  Formula data = generate(spec);
  SchemaReport report = validate(data, c);
  ctx.store.save(data, name);
  ctx.out << "generated " << to_string(c) << " dataset " << name.str() << " in " << ctx.store.data_dir().string()
          << '\n';
  ctx.out << "name=" << name.str() << '\n';
  ctx.out << "seed=" << o.seed << '\n';
  ctx.out << report.to_key_values();
  return report.valid ? kExitOk : kExitInvalidData;
}

int cmd_validate(Context& ctx, const Options& o) {
  std::optional<Collection> requested;
  if (!o.collection.empty()) requested = collection_arg(o.collection);
  Formula data = load_target(ctx, o.target);
  std::optional<Collection> c = requested ? requested : detect_schema(data);
  if (!c) {
    ctx.out << o.target << ": no single collection schema matches\n";
    ctx.out << "collection=none\nvalid=false\n";
    for (Collection each : kAllCollections) {
      ctx.out << "accepts." << to_string(each) << '=' << (validate(data, each).valid ? "true" : "false") << '\n';
    }
    return kExitInvalidData;
  }
  SchemaReport report = validate(data, *c);
  ctx.out << report.to_text();
  ctx.out << report.to_key_values();
  return report.valid ? kExitOk : kExitInvalidData;
}

// CSV rows: festo component levels, weather "uv", trains "occupancy".
int print_series(Context& ctx, const Formula& data, Collection c, const std::string& series) {
  switch (c) {
    case Collection::Festo:
      if (!FestoComponentCatalog::contains(series)) break;
      ctx.out << "time,value\n";
      for (const auto& e : component_series(data, series)) {
        std::string value = print(make_component_state(e.value));  // ComponentState(5.0)
        value = value.substr(15, value.size() - 16);
        ctx.out << time_text(e.time) << ',' << value << '\n';
      }
      return kExitOk;
    case Collection::Weather:
      if (series != "uv") break;
      ctx.out << "time,uv_index\n";
      for (const auto& s : uv_series(data)) ctx.out << time_text(s.time) << ',' << s.index.str() << '\n';
      return kExitOk;
    case Collection::Trains:
      if (series != "occupancy") break;
      ctx.out << "time,nodes\n";
      for (const auto& t : time_points(data)) {
        ctx.out << t.millis() << ',';
        auto nodes = occupancy_at(data, t.millis());
        const char* sep = "";
        for (auto n : *nodes) {
          ctx.out << sep << n;
          sep = " ";
        }
        ctx.out << '\n';
      }
      return kExitOk;
    case Collection::Kinect:
      break;
  }
  throw UsageError("no series '" + series + "' for " + std::string(to_string(c)) +
                   " (festo: a component name, weather: uv, trains: occupancy)");
}

int cmd_inspect(Context& ctx, const Options& o) {
  Formula data = load_target(ctx, o.target);
  auto c = detect_schema(data);
  if (!c) {
    ctx.out << o.target << ": not a recognised dataset\n";
    ctx.out << "collection=none\natoms=" << count_atoms(data) << '\n';
    return kExitInvalidData;
  }
  if (!o.series.empty()) return print_series(ctx, data, *c, o.series);
  SchemaReport report = validate(data, *c);
  auto times = time_points(data);
  ctx.out << o.target << ": " << to_string(*c) << " dataset\n";
  ctx.out << report.to_key_values();
  ctx.out << "atoms=" << count_atoms(data) << '\n';
  if (!times.empty()) {
    ctx.out << "first_time=" << time_text(times.front()) << '\n';
    ctx.out << "last_time=" << time_text(times.back()) << '\n';
  }
  return kExitOk;
}

int cmd_convert(Context& ctx, const Options& o) {
  if (o.to != "txt" && o.to != "archive") throw UsageError("--to must be 'txt' or 'archive'");
  Formula data = load_target(ctx, o.target);
  if (o.to == "txt") {
    archive::write_text_file(o.output, data);
  } else {
    archive::write_archive_file(o.output, data);
  }
  ctx.out << "converted " << o.target << " -> " << o.output << " (" << o.to << ")\n";
  return kExitOk;
}

int cmd_ls(Context& ctx, const Options&) {
  auto entries = ctx.registry.list_entries();
  auto archives = ctx.store.list_archives();
  ctx.out << entries.size() << " registry entries, " << archives.size() << " archives in "
          << ctx.store.data_dir().string() << '\n';
  for (const auto& e : entries) {
    bool present = std::binary_search(archives.begin(), archives.end(), e.dataset);
    ctx.out << "entry=" << e.path.str() << ' ' << e.dataset.str() << ' ' << to_string(e.collection) << ' '
            << (present ? "present" : "absent") << '\n';
  }
  for (const auto& a : archives) ctx.out << "archive=" << a.str() << '\n';
  return kExitOk;
}

int cmd_cat(Context& ctx, const Options& o) {
  Formula data = load_target(ctx, o.target);
  if (o.head) {
    if (*o.head < 0) throw UsageError("--head must be >= 0");
    if (auto* list = data.as<node::BigAnd>()) {
      auto n = std::min<std::size_t>(list->items.size(), static_cast<std::size_t>(*o.head));
      data = make_big_and(std::vector<Formula>(list->items.begin(), list->items.begin() + static_cast<std::ptrdiff_t>(n)));
    }
  }
  ctx.out << print(data) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate, validate, inspect and convert invariant dataset archives", "invariant-data"};
  app.fallthrough();
  app.require_subcommand(1);

  Options o;
  app.add_option("--data-dir", o.data_dir, "Archive directory (default: $INVARIANT_DATA_DIR or ../data)");
  app.add_option("--registry", o.registry_file, "Extra registry manifest (path dataset collection per line)")
      ->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset and save it");
  gen->add_option("--collection", o.collection, "kinect, festo, trains or weather")->required();
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--name", o.name, "Dataset name to save under")->required();
  gen->add_option("--frames", o.frames, "Train frames");
  gen->add_option("--events", o.events, "Festo events");
  gen->add_option("--samples", o.samples, "Weather samples");
  gen->add_option("--points", o.points, "Kinect points");
  gen->add_option("--colors", o.colors, "Kinect colors");

  auto* val = app.add_subcommand("validate", "Validate a dataset against a collection schema");
  val->add_option("target", o.target, "Dataset name, ontology path or file")->required();
  val->add_option("--collection", o.collection, "Schema to check (default: detect)");

  auto* ins = app.add_subcommand("inspect", "Show collection, stats and time range");
  ins->add_option("target", o.target, "Dataset name, ontology path or file")->required();
  ins->add_option("--series", o.series, "Print a CSV series: festo component name, uv or occupancy");

  auto* conv = app.add_subcommand("convert", "Convert between compressed archive and plain text");
  conv->add_option("input", o.target, "Dataset name, ontology path or file")->required();
  conv->add_option("output", o.output, "Output file")->required();
  conv->add_option("--to", o.to, "txt or archive")->required();

  app.add_subcommand("ls", "List registry entries and archives on disk");

  auto* cat = app.add_subcommand("cat", "Print the canonical text of a dataset");
  cat->add_option("target", o.target, "Dataset name, ontology path or file")->required();
  cat->add_option("--head", o.head, "Only the first N conjuncts of a top-level BIGAND");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Registry registry = Registry::with_builtins();
    if (!o.registry_file.empty()) registry.load_manifest(fs::path(o.registry_file));
    std::optional<fs::path> dir;
    if (!o.data_dir.empty()) dir = o.data_dir;
    Context ctx{ArchiveStore(StoreConfig::resolve(dir), [&err](std::string_view m) { err << m << '\n'; }),
                std::move(registry), out, err};

    if (gen->parsed()) return cmd_generate(ctx, o);
    if (val->parsed()) return cmd_validate(ctx, o);
    if (ins->parsed()) return cmd_inspect(ctx, o);
    if (conv->parsed()) return cmd_convert(ctx, o);
    if (cat->parsed()) return cmd_cat(ctx, o);
    return cmd_ls(ctx, o);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidName& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ManifestError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownDataset& e) {
    err << "error: " << e.what() << '\n';
    return kExitMissingOrCorrupt;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMissingOrCorrupt;
  }
}

}  // namespace invariant::cli

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fail.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "invariant/archive_store.hpp"
#include "invariant/calendar.hpp"
#include "invariant/generators.hpp"
#include "invariant/registry.hpp"
#include "invariant/schemas.hpp"
#include "invariant/text_format.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace invariant;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Records failures for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Fixture {
  const char* file;
  Collection collection;
  std::map<std::string, std::int64_t> stats;
};

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> f{
      {"kinect_excerpt.txt", Collection::Kinect, {{"points", 10}, {"colors", 10}}},
      {"festo_excerpt.txt", Collection::Festo, {{"events", 28}}},
      {"trains_excerpt.txt", Collection::Trains, {{"time_points", 10}}},
      {"weather_excerpt.txt", Collection::Weather, {{"time_points", 8}}},
  };
  return f;
}

void fixture_round_trip(Check& c) {
  auto start = Clock::now();
  for (const auto& fx : fixtures()) {
    try {
      auto first = parse(testing::read_fixture(fx.file));
      auto printed = print(first);
      auto second = parse(printed);
      c.expect(first == second, std::string(fx.file) + ": re-parse differs");
      c.expect(print(second) == printed, std::string(fx.file) + ": re-print differs");
      c.expect(parse(print(first, PrintStyle::Pretty)) == first, std::string(fx.file) + ": pretty form differs");
    } catch (const std::exception& e) {
      c.expect(false, std::string(fx.file) + ": " + e.what());
    }
  }
  double took = seconds_since(start);
  c.expect(took < 1.0, "took " + std::to_string(took) + " s");
}

void fixture_validation(Check& c) {
  for (const auto& fx : fixtures()) {
    auto f = parse(testing::read_fixture(fx.file));
    int accepted = 0;
    for (Collection col : kAllCollections) {
      auto r = validate(f, col);
      if (!r.valid) continue;
      ++accepted;
      c.expect(col == fx.collection, std::string(fx.file) + " accepted by " + std::string(to_string(col)));
    }
    c.expect(accepted == 1, std::string(fx.file) + ": accepted by " + std::to_string(accepted) + " validators");
    auto r = validate(f, fx.collection);
    for (const auto& [key, value] : fx.stats) {
      auto it = r.stats.find(key);
      c.expect(it != r.stats.end() && it->second == value, std::string(fx.file) + ": " + key + " mismatch");
    }
  }
}

void cardinalities(Check& c) {
  const std::vector<std::pair<Collection, std::map<std::string, std::int64_t>>> expected{
      {Collection::Kinect, {{"points", 217088}, {"colors", 2764800}}},
      {Collection::Festo, {{"events", 4761}}},
      {Collection::Trains, {{"time_points", 9601}}},
      {Collection::Weather, {{"time_points", 439}}},
  };
  testing::TempDir dir;
  ArchiveStore store(StoreConfig{dir.path()});
  auto start = Clock::now();
  for (const auto& [collection, stats] : expected) {
    std::string label(to_string(collection));
    auto data = generate(default_spec(collection));
    auto report = validate(data, collection);
    c.expect(report.valid, label + ": generated data invalid");
    for (const auto& [key, value] : stats) {
      c.expect(report.stats[key] == value, label + ": " + key + "=" + std::to_string(report.stats[key]));
    }
    DatasetName name("acceptance." + label);
    store.save(data, name);
    auto back = store.load_or_throw(name);
    c.expect(back == data, label + ": disk round trip differs");
    c.expect(validate(back, collection) == report, label + ": report changed after round trip");
  }
  double took = seconds_since(start);
  c.expect(took < 60.0, "pipeline took " + std::to_string(took) + " s");
}

void caching(Check& c) {
  testing::TempDir dir;
  ArchiveStore store(StoreConfig{dir.path()});
  DatasetName name("test.trivial.true");
  store.save(make_true(), name);

  auto reads = store.disk_reads();
  store.load_or_throw(name);
  store.load_or_throw(name);
  c.expect(store.disk_reads() - reads == 2, "load_or_throw x2 should read twice");
  c.expect(store.cache_size() == 0, "load_or_throw cached");

  reads = store.disk_reads();
  store.find_in_cache_or_load_and_cache(name);
  store.find_in_cache_or_load_and_cache(name);
  c.expect(store.disk_reads() - reads == 1, "find_in_cache_or_load_and_cache x2 should read once");

  store.clear_cache();
  reads = store.disk_reads();
  c.expect(!store.find_in_cache(name), "find_in_cache hit after clear");
  c.expect(store.disk_reads() - reads == 0, "find_in_cache read disk");
}

void error_semantics(Check& c) {
  testing::TempDir dir;
  ArchiveStore store(StoreConfig{dir.path()}, [](std::string_view) {});
  try {
    store.load_or_throw("no.such.dataset");
    c.expect(false, "missing name loaded");
  } catch (const CorruptArchive&) {
    c.expect(false, "missing name reported corrupt");
  } catch (const UnknownDataset& e) {
    c.expect(e.name() == "no.such.dataset", "wrong name in error");
  }

  DatasetName name("acceptance.trains");
  store.save(gen_trains({.n_frames = 300}), name);
  auto bytes = archive::read_file(store.archive_path(name));
  archive::write_file_atomic(store.archive_path(name), bytes.substr(0, bytes.size() / 2));
  try {
    store.load_or_throw(name);
    c.expect(false, "truncated archive loaded");
  } catch (const CorruptArchive& e) {
    c.expect(e.name() == name.str(), "wrong name in corrupt error");
  }
}

void properties(Check& c) {
  constexpr int kCases = 150;
  std::size_t failures = 0;
  for (int i = 0; i < kCases; ++i) {
    auto seed = static_cast<std::uint64_t>(i);
    const GeneratorSpec specs[] = {KinectSpec{.seed = seed, .n_points = 60, .n_colors = 60},
                                   FestoSpec{.seed = seed, .n_events = 120}, TrainsSpec{.seed = seed, .n_frames = 700},
                                   WeatherSpec{.seed = seed, .n_samples = 120}};
    for (const auto& spec : specs) {
      auto f = generate(spec);
      if (!(parse(print(f)) == f)) ++failures;
    }
  }
  c.expect(failures == 0, std::to_string(failures) + " parse/print mismatches");

  testing::FormulaFuzzer fuzz(99);
  for (int i = 0; i < kCases; ++i) {
    auto a = fuzz.formula(4);
    auto b = fuzz.formula(4);
    auto a2 = parse(print(a));
    auto a3 = parse(print(a2));
    bool ok = a == a && (a == b) == (b == a) && a == a2 && a2 == a && a2 == a3 && a == a3;
    ok = ok && (a == b) == (print(a) == print(b));
    if (!ok) c.expect(false, "equality law broken for " + print(a));
  }

  for (int i = 0; i < kCases; ++i) {
    auto f = gen_trains({.seed = static_cast<std::uint64_t>(i), .n_frames = 700});
    const auto& frames = f.as<node::BigAnd>()->items;
    bool wrapped = false;
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
      const auto& prev = frames[k].as<node::Implies>()->conclusion.as<node::BigAnd>()->items;
      const auto& next = frames[k + 1].as<node::Implies>()->conclusion.as<node::BigAnd>()->items;
      if (prev.size() != 10 || next.size() != 10) {
        c.expect(false, "frame size");
        break;
      }
      for (std::size_t j = 0; j + 1 < 10; ++j) {
        if (!(next[j] == prev[j + 1])) c.expect(false, "window not shifted");
      }
      std::int64_t tail = prev[9].as<node::OccupyNode>()->id;
      std::int64_t head = next[9].as<node::OccupyNode>()->id;
      if (tail == 672) wrapped = true;
      c.expect(head == (tail == 672 ? 1 : tail + 1), "window did not advance by one node");
    }
    c.expect(wrapped, "no wraparound 672 -> 1");
  }

  for (int i = 0; i < kCases; ++i) {
    auto f = gen_weather({.seed = static_cast<std::uint64_t>(i), .n_samples = 100});
    for (const auto& idx : collect(f, of_kind(Kind::ComponentState))) {
      const auto& v = idx.as<node::ComponentState>()->value;
      if (v.kind() != StateValue::Kind::IntTuple) continue;
      auto n = v.as_ints()[0];
      c.expect(n % 10 == 0 && n >= 0 && n <= 1000, "uv index " + std::to_string(n));
    }
  }

  for (int i = 0; i < kCases; ++i) {
    auto f = gen_festo({.seed = static_cast<std::uint64_t>(i), .n_events = 100});
    for (const auto& s : collect(f, of_kind(Kind::ComponentState))) {
      double v = s.as<node::ComponentState>()->value.as_number();
      c.expect(v == 5.0 || v == 5.5 || v == 80.0 || v == 100.0, "festo value " + std::to_string(v));
    }
  }
}

void registry(Check& c) {
  auto r = Registry::with_builtins();
  const std::pair<const char*, const char*> accessors[] = {
      {"Robotics.Lego.Trains.experiment1", "aicause.lego.trains.experiment1"},
      {"Robotics.Festo.MiniFactory.station1.scenario1", "aicause.festo.station1.Scenario1.20mins"},
      {"Robotics.Festo.MiniFactory.station1.capsBlocking", "aicause.festo.station1.small.2capsBlocking"},
      {"Weather.SmartSpace.Melbourne.Aug_27_2015", "aicause.smartspace.melbourne.2015.aug.27"},
      {"Weather.SmartSpace.Melbourne.uvIndex_Dec_28_2015", "aicause.smartspace.melbourne.2015.aug.27"},
      {"Scan.Kinect.bottle", "aicause.kinect.scan.bottle"},
  };
  for (const auto& [path, dataset] : accessors) {
    try {
      c.expect(r.resolve(OntologyPath::parse(path)).str() == dataset, std::string(path) + " resolves wrongly");
    } catch (const std::exception& e) {
      c.expect(false, e.what());
    }
  }
  std::set<std::string> kinect;
  for (const auto& e : r.list_entries()) {
    if (e.collection == Collection::Kinect) kinect.insert(e.dataset.str());
  }
  std::set<std::string> expected{"aicause.kinect.scan.bottle", "aicause.kinect.scan.obstacles1a"};
  for (int i = 1; i <= 15; ++i) expected.insert("aicause.kinect.scan.obstacles" + std::to_string(i));
  c.expect(kinect == expected, std::to_string(kinect.size()) + " kinect names listed");
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"fixture round trip", fixture_round_trip},
      {"fixture validation", fixture_validation},
      {"default cardinalities and pipeline time", cardinalities},
      {"caching contract", caching},
      {"error semantics", error_semantics},
      {"property suites", properties},
      {"registry", registry},
  };
  int failed = 0;
  int n = 0;
  for (const auto& criterion : criteria) {
    ++n;
    Check check;
    auto start = Clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << criterion.title << " (" << seconds_since(start)
              << " s)";
    if (!ok) std::cout << ": " << check.failures.front() << " (+" << check.failures.size() - 1 << " more)";
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

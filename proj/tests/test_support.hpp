#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "invariant/formula.hpp"

namespace invariant::testing {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::filesystem::path(INVARIANT_FIXTURE_DIR) / name, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("invariant-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Random formulas covering every variant, for property tests.
class FormulaFuzzer {
 public:
  explicit FormulaFuzzer(std::uint64_t seed) : rng_(seed) {}

  Formula formula(int depth = 4) {
    int pick = depth <= 0 ? 6 + below(8) : below(14);
    switch (pick) {
      case 0: return make_and(formula(depth - 1), formula(depth - 1));
      case 1: return make_or(formula(depth - 1), formula(depth - 1));
      case 2: return make_not(formula(depth - 1));
      case 3: return make_implies(formula(depth - 1), formula(depth - 1));
      case 4: return make_big_and(list(depth - 1));
      case 5: return make_big_or(list(depth - 1));
      case 6: return make_true();
      case 7: return make_false();
      case 8: return make_time_point(timestamp());
      case 9: return make_owner(text());
      case 10: return make_component(text());
      case 11: return make_component_state(state());
      case 12: return make_point(integer(), integer(), integer());
      default: return make_node(1 + below(100000));
    }
  }

  std::vector<Formula> list(int depth) {
    std::vector<Formula> out;
    int n = below(5);
    for (int i = 0; i < n; ++i) out.push_back(formula(depth));
    return out;
  }

  Timestamp timestamp() {
    if (below(2) == 0) return Timestamp::epoch_millis(static_cast<std::int64_t>(rng_() >> 1));
    static const char* kSamples[] = {"Wed Jul 27 09:11:28 UTC 2016", "1st December 201511:04AM", "x", "2016-07-27T09:11:28Z",
                                     "a, b"};
    return Timestamp::calendar(kSamples[below(5)]);
  }

  std::string text() {
    static const char kAlphabet[] = "abcXYZ019_ -.,()\"\\#\n";
    int n = below(8);
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(kAlphabet[below(sizeof kAlphabet - 1)]);
    return s;
  }

  StateValue state() {
    switch (below(4)) {
      case 0: {
        std::uniform_real_distribution<double> d(-1e6, 1e6);
        return StateValue::number(d(rng_));
      }
      case 1: return StateValue::number(static_cast<double>(integer()));
      case 2: {
        std::vector<std::int64_t> v(static_cast<std::size_t>(1 + below(3)));
        for (auto& x : v) x = integer();
        return StateValue::ints(v);
      }
      default: return StateValue::text(text());
    }
  }

  std::int64_t integer() {
    switch (below(3)) {
      case 0: return below(512) - 256;
      case 1: return static_cast<std::int64_t>(rng_());
      default: return below(3) - 1;
    }
  }

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace invariant::testing

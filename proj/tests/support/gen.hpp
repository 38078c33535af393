#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mjq/value.hpp"

namespace mjq::testing {

/// Seeded source of random choices for the property suites.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))];
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Small integers and simple decimals; with `wild`, also extremes such as
/// int64 bounds, -0.0 and subnormals.
Number gen_number(Gen& g, bool wild = false);
std::string gen_string(Gen& g, int max_len = 4);
/// Keys from a small pool, so generated objects share keys often.
std::string gen_key(Gen& g);
Value gen_scalar(Gen& g, bool wild = false);
/// Finite JSON value of nesting depth at most `depth`.
Value gen_value(Gen& g, int depth = 3, bool wild = false);
Value gen_array(Gen& g, int depth = 2, bool wild = false);
Value gen_object(Gen& g, int depth = 2, bool wild = false);

/// Source text of a filter with finitely many outputs. `vars` are the
/// variables in scope (without "$").
std::string gen_filter(Gen& g, int depth, std::vector<std::string> vars = {});

/// Source text of a path expression: a filter that is valid on the left of
/// an update. With `allow_try` false no try/catch or "?" is produced.
std::string gen_path(Gen& g, int depth, std::vector<std::string> vars = {}, bool allow_try = true);

/// Value equality that distinguishes integers from decimals and compares
/// decimals by bit pattern.
bool same_bits(const Value& a, const Value& b);

/// Compact rendering of a result stream for failure messages.
std::string show(const std::vector<ValueResult>& rs);

}  // namespace mjq::testing

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace va {

// Deterministic, portable RNG.  splitmix64 core with explicit uniform and
// gaussian transforms so generated artifacts are byte-identical for a fixed
// seed regardless of the standard library in use.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).  n must be > 0.
  uint64_t below(uint64_t n) { return next_u64() % n; }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

  bool coin(double p = 0.5) { return uniform() < p; }

  double normal(double mean = 0.0, double sigma = 1.0) {
    if (has_cached_) {
      has_cached_ = false;
      return mean + sigma * cached_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return mean + sigma * r * std::cos(a);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Derive an independent stream, e.g. per epoch or per record.
  Rng fork(uint64_t salt) {
    uint64_t s = state_ ^ (salt * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
    Rng r(s);
    r.next_u64();
    return r;
  }

private:
  uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace va

#ifndef NBLAB_RNG_HPP
#define NBLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nblab {

// Deterministic RNG helpers. std::mt19937_64 has a fully specified output
// sequence, but the standard distributions do not, so every draw goes through
// the explicit conversions below. Same seed => same stream on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n). Rejection sampling, no modulo bias.
  std::size_t next_index(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  bool next_bool() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_index(i)]);
    }
  }

  // Gap to the next success in a Bernoulli(p) stream (>= 1). Returns a value
  // larger than any realistic trial count when p == 0.
  std::int64_t next_geometric_gap(double p) {
    if (p >= 1.0) return 1;
    if (p <= 0.0) return INT64_MAX;
    const double u = 1.0 - next_double();  // (0, 1]
    return 1 + static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

  // Exact Binomial(n, p) draw by enumerating the success positions of the
  // underlying Bernoulli stream. O(n*p) expected time, intended for small p.
  std::int64_t next_binomial(std::int64_t n, double p) {
    std::int64_t count = 0;
    std::int64_t pos = 0;
    while (true) {
      const std::int64_t gap = next_geometric_gap(p);
      if (gap > n - pos) break;
      pos += gap;
      ++count;
    }
    return count;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive combine used to derive per-sample seeds from a base seed
// and the grid-point coordinates.
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ v);
}

}  // namespace nblab

#endif  // NBLAB_RNG_HPP

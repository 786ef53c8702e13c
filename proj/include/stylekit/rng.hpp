#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stylekit {

// Deterministic splitmix64 generator. The standard library's shuffle and
// distributions are implementation-defined, which would break the
// byte-identical-output contract across toolchains; everything random in this
// project flows through this class.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    while (true) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double normal();

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // Draws `draw` distinct indices from [0, population); result order is random.
  std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t draw);

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Independent stream derived from a base seed, for per-trial sampling.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  Rng mixer(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
  return Rng(mixer.next());
}

}  // namespace stylekit

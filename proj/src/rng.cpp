#include "stylekit/rng.hpp"

#include <cmath>

namespace stylekit {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; unit() never returns 0 exactly once nudged below.
  double u1 = unit();
  while (u1 == 0.0) u1 = unit();
  const double u2 = unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t population, std::size_t draw) {
  std::vector<std::size_t> indices(population);
  for (std::size_t i = 0; i < population; ++i) indices[i] = i;
  // Partial Fisher-Yates: the first `draw` slots end up uniformly sampled.
  for (std::size_t i = 0; i < draw && i + 1 < population; ++i) {
    std::size_t j = i + static_cast<std::size_t>(below(population - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(draw);
  return indices;
}

}  // namespace stylekit

#include "graphforge/rng.hpp"

#include <cmath>
#include <limits>

namespace graphforge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed) ^ h);
}

RngSpec RngSpec::child(std::string_view label) const {
  std::string joined = stream;
  joined += '/';
  joined += label;
  return RngSpec{seed, std::move(joined)};
}

Rng::Rng(const RngSpec& spec) : engine_(derive_seed(spec.seed, spec.stream)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire-style rejection on the top of the range keeps draws unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::laplace(double location, double scale) {
  double u = uniform() - 0.5;
  while (u == -0.5) u = uniform() - 0.5;
  const double sign = u < 0 ? -1.0 : 1.0;
  return location - scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

std::size_t Rng::weighted_index(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return weights.size();
  const double target = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

}  // namespace graphforge

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace graphforge {

/// Identifies one independent random stream: a root seed plus a label naming
/// the task that consumes it. Equal specs always yield equal draws.
struct RngSpec {
  std::uint64_t seed = 0;
  std::string stream;

  RngSpec child(std::string_view label) const;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// 64-bit mixing of (seed, label) into a stream seed. FNV-1a over the label
/// followed by splitmix64 finalization.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/// Random source with platform-independent draws.
///
/// std::mt19937_64 is fully specified by the standard, the distributions are
/// not, so all conversions to doubles/integers are done here by hand.
class Rng {
 public:
  explicit Rng(const RngSpec& spec);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  /// Laplace(location, scale) by inverse CDF.
  double laplace(double location, double scale);

  /// Index drawn with probability proportional to weights[i]. Returns
  /// weights.size() when the total weight is not positive.
  std::size_t weighted_index(const std::vector<double>& weights);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphforge

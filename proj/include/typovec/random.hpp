#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace typovec {

// Seeded PRNG with platform-stable derived draws. std::mt19937_64's raw
// output is fixed by the standard; the distributions below are implemented
// here because the std:: ones are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  // Uniform on [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  // Gamma(shape, 1), shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a tag.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace typovec

// Seeded randomness with a platform-independent output sequence.
// std::mt19937_64 is fully specified by the standard, the standard
// distributions are not, so the mappings to ranges live here.

#ifndef DLEARN_RANDOM_H_
#define DLEARN_RANDOM_H_

#include <algorithm>
#include <cstdint>
#include <random>

namespace dlearn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, n), n > 0; rejection sampling avoids modulo bias.
  std::uint64_t Below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double Unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  template <typename It>
  void Shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) std::iter_swap(first + (n - 1), first + Below(n));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dlearn

#endif  // DLEARN_RANDOM_H_

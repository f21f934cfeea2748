#ifndef HODGEHX_RNG_HPP
#define HODGEHX_RNG_HPP

#include <cstdint>
#include <vector>

namespace hodgehx {

inline constexpr std::uint64_t kDefaultSeed = 20240101;

// splitmix64. Small, seedable, and emits the same stream on every platform,
// which keeps experiment CSVs byte-identical across runs and machines.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::vector<double> uniform_vector(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = next_double();
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace hodgehx

#endif

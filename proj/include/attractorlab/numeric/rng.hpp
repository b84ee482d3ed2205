#ifndef ATTRACTORLAB_NUMERIC_RNG_HPP
#define ATTRACTORLAB_NUMERIC_RNG_HPP

#include <cstdint>

namespace attractorlab {

/// Counter-based deterministic generator (splitmix64 over root ^ counter).
/// Every ensemble draws from one recorded 64-bit root seed, so results do not
/// depend on the order in which parallel workers run.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t root_seed) : root_(root_seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = root_ + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    std::uint64_t root() const { return root_; }

  private:
    std::uint64_t root_;
};

}  // namespace attractorlab

#endif

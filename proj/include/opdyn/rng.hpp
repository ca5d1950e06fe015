#ifndef OPDYN_RNG_HPP_
#define OPDYN_RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace opdyn {

// Finalizer of the splitmix64 generator; bijective on 64-bit values.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives the seed of stream `index` from a base seed. This is the fixed
// mixing function behind every derived RNG stream in the project: cell seeds
// mix (sweep seed, cell index), replication seeds mix (cell seed, replication
// index), and the engine mixes (replication seed, phase tag) for its graph,
// initialization and stepping streams.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Deterministic uniform draws on top of std::mt19937_64. The standard pins
// the raw mt19937_64 sequence but not the distribution adaptors, so the
// [0,1) and bounded-integer draws are implemented here; results are
// identical on every platform and compiler.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); bound must be positive. Unbiased via
    // rejection of the top partial cycle.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = next_u64();
        while (x >= limit)
            x = next_u64();
        return x % bound;
    }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace opdyn

#endif  // OPDYN_RNG_HPP_

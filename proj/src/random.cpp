#include "mfea/random.hpp"

#include <stdexcept>

namespace mfea {

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::index: empty range");
    }
    const std::uint64_t bound = n;
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x = next();
    while (x >= limit) {
        x = next();
    }
    return static_cast<std::size_t>(x % bound);
}

int Rng::between(int lo, int hi) {
    if (hi < lo) {
        throw std::invalid_argument("Rng::between: hi < lo");
    }
    return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo) + 1));
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<std::size_t, std::size_t> Rng::distinct_pair(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("Rng::distinct_pair: need at least two values");
    }
    std::size_t a = index(n);
    std::size_t b = index(n - 1);
    if (b >= a) {
        ++b;
    }
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t repetition) {
    return splitmix64(splitmix64(base) + repetition);
}

}  // namespace mfea

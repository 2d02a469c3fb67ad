#ifndef MFEA_RANDOM_HPP
#define MFEA_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace mfea {

/// Random stream owned by one engine run.
///
/// Wraps a 64-bit Mersenne Twister and draws integers and reals with
/// explicit arithmetic instead of <random> distributions, whose output is
/// implementation-defined. The same seed therefore produces the same run on
/// every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    /// Uniform integer in [lo, hi].
    int between(int lo, int hi);

    /// Uniform real in [0, 1).
    double uniform();

    bool coin() { return (next() >> 63) != 0; }

    /// Two distinct indices in [0, n), returned in ascending order.
    std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n);

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent seeds from a counter.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for repetition `repetition` of a plan with base seed `base`.
/// Both engines share the seed of a repetition, so runs are paired.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t repetition);

}  // namespace mfea

#endif

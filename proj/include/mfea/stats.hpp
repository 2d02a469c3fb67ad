#ifndef MFEA_STATS_HPP
#define MFEA_STATS_HPP

#include <span>
#include <string>
#include <vector>

namespace mfea {

struct SampleSet {
    std::vector<double> values;
    std::string label;
};

struct Summary {
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation (n - 1); 0 for n = 1
};

Summary summarize(std::span<const double> values);
inline Summary summarize(const SampleSet& s) { return summarize(s.values); }

enum class Direction { ABetter, BBetter, None };
std::string direction_name(Direction d);

struct TestVerdict {
    double z_value = 0.0;
    double critical = 0.0;  // positive magnitude; A is better when z <= -critical
    bool significant = false;
    Direction direction = Direction::None;
};

/// Wilcoxon rank-sum test of "A has lower values than B".
///
/// The pooled samples get midranks; z is the rank sum of A standardized with
/// the tie-corrected normal approximation and a 0.5 continuity correction.
/// The critical value is the standard normal quantile at
/// 1 - (1 - confidence) / 2 (1.645 for 0.90). `significant` means
/// z <= -critical; `direction` is BBetter when z >= critical. Identical
/// pooled values give z = 0. Throws std::invalid_argument on an empty
/// sample.
TestVerdict ranksum_test(std::span<const double> a, std::span<const double> b, double confidence = 0.90);
inline TestVerdict ranksum_test(const SampleSet& a, const SampleSet& b, double confidence = 0.90) {
    return ranksum_test(a.values, b.values, confidence);
}

/// Midranks (1-based, ties averaged) of `values`.
std::vector<double> midranks(std::span<const double> values);

}  // namespace mfea

#endif

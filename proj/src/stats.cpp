#include "mfea/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfea {

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("summarize: empty sample");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::ABetter: return "A_better";
        case Direction::BBetter: return "B_better";
        case Direction::None: break;
    }
    return "none";
}

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mid;
        i = j + 1;
    }
    return ranks;
}

TestVerdict ranksum_test(std::span<const double> a, std::span<const double> b, double confidence) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ranksum_test: both samples must be non-empty");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("ranksum_test: confidence must lie in (0, 1)");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    const double n = static_cast<double>(a.size());
    const double m = static_cast<double>(b.size());
    const double total = n + m;
    const double rank_sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);

    // Tie correction: sum of (t^3 - t) over groups of equal values.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double variance = n * m / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));

    TestVerdict v;
    const boost::math::normal standard;
    v.critical = boost::math::quantile(standard, 1.0 - (1.0 - confidence) / 2.0);
    if (variance <= 0.0) {
        return v;
    }
    double diff = rank_sum - n * (total + 1.0) / 2.0;
    if (diff > 0.5) {
        diff -= 0.5;
    } else if (diff < -0.5) {
        diff += 0.5;
    } else {
        diff = 0.0;
    }
    v.z_value = diff / std::sqrt(variance);
    v.significant = v.z_value <= -v.critical;
    if (v.significant) {
        v.direction = Direction::ABetter;
    } else if (v.z_value >= v.critical) {
        v.direction = Direction::BBetter;
    }
    return v;
}

}  // namespace mfea

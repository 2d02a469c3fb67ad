#include "mfea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mfea {

namespace {

std::vector<int> ox_child(std::span<const int> keep, std::span<const int> fill, CrossoverWindow w) {
    const std::size_t n = keep.size();
    std::vector<int> child(n, 0);
    std::vector<char> used(n + 1, 0);
    for (std::size_t i = w.start; i < w.end(); ++i) {
        child[i] = keep[i];
        used[static_cast<std::size_t>(keep[i])] = 1;
    }
    std::size_t out = w.end() % n;
    for (std::size_t step = 0; step < n; ++step) {
        const int v = fill[(w.end() + step) % n];
        if (used[static_cast<std::size_t>(v)]) continue;
        child[out] = v;
        out = (out + 1) % n;
        if (out == w.start) out = w.end() % n;
    }
    return child;
}

}  // namespace

CrossoverWindow random_cut_window(std::size_t d_max, Rng& rng) {
    const auto [lo, hi] = rng.distinct_pair(d_max + 1);
    return CrossoverWindow{lo, hi - lo};
}

std::pair<UnifiedGenome, UnifiedGenome> order_crossover(const UnifiedGenome& a, const UnifiedGenome& b,
                                                        CrossoverWindow window) {
    const std::size_t n = static_cast<std::size_t>(a.d_max());
    if (b.d_max() != a.d_max()) {
        throw std::invalid_argument("order_crossover: parents have different lengths");
    }
    if (window.length < 1 || window.end() > n) {
        throw std::invalid_argument("order_crossover: window outside the genome");
    }
    return {GenomeEditor::adopt(ox_child(a.order(), b.order(), window)),
            GenomeEditor::adopt(ox_child(b.order(), a.order(), window))};
}

std::size_t window_length(double w, double rmp_entry, int d_k, int d_max) {
    if (d_max < 2) {
        throw std::invalid_argument("window_length: genome too short for a crossover window");
    }
    const double raw = std::floor(w * rmp_entry * d_k + 0.5);
    const double capped = std::clamp(raw, 1.0, static_cast<double>(d_max - 1));
    return static_cast<std::size_t>(capped);
}

DynamicOxResult dynamic_ox_detailed(const UnifiedGenome& dominant, const UnifiedGenome& donor, double rmp_entry,
                                    double w, int d_k, Rng& rng) {
    const int d_max = dominant.d_max();
    if (donor.d_max() != d_max) {
        throw std::invalid_argument("dynamic_ox: parents have different lengths");
    }
    const std::size_t n = static_cast<std::size_t>(d_max);
    const std::size_t length = window_length(w, rmp_entry, d_k, d_max);
    const CrossoverWindow window{rng.index(n - length + 1), length};

    std::vector<int> child(dominant.order().begin(), dominant.order().end());
    std::vector<char> in_window(n + 1, 0);
    for (std::size_t i = window.start; i < window.end(); ++i) {
        in_window[static_cast<std::size_t>(child[i])] = 1;
    }
    std::size_t out = window.start;
    for (int v : donor.order()) {
        if (in_window[static_cast<std::size_t>(v)]) child[out++] = v;
    }

    DynamicOxResult result{GenomeEditor::adopt(std::move(child)), window, false};
    if (result.child == dominant) {
        const std::size_t i = rng.index(n - 1);
        const std::size_t j_max = std::min(n - 1, i + length + 1);
        const std::size_t j = i + 1 + rng.index(j_max - i);
        result.child = two_opt(result.child, i, j);
        result.guard_applied = true;
    }
    return result;
}

UnifiedGenome two_opt(const UnifiedGenome& genome, std::size_t i, std::size_t j) {
    if (!(i < j && j < static_cast<std::size_t>(genome.d_max()))) {
        throw std::invalid_argument("two_opt: need 0 <= i < j < d_max");
    }
    UnifiedGenome out = genome;
    auto& order = GenomeEditor::order(out);
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    return out;
}

UnifiedGenome two_opt(const UnifiedGenome& genome, Rng& rng) {
    const auto [i, j] = rng.distinct_pair(static_cast<std::size_t>(genome.d_max()));
    return two_opt(genome, i, j);
}

}  // namespace mfea

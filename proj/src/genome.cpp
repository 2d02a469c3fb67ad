#include "mfea/genome.hpp"

#include <numeric>
#include <stdexcept>

namespace mfea {

bool is_permutation_of_1_to_n(std::span<const int> values) {
    const int n = static_cast<int>(values.size());
    std::vector<char> seen(values.size() + 1, 0);
    for (int v : values) {
        if (v < 1 || v > n || seen[v]) {
            return false;
        }
        seen[v] = 1;
    }
    return true;
}

UnifiedGenome::UnifiedGenome(std::vector<int> order) : order_(std::move(order)) {
    if (order_.empty() || !is_permutation_of_1_to_n(order_)) {
        throw std::invalid_argument("UnifiedGenome: order is not a permutation of 1..d_max");
    }
}

UnifiedGenome UnifiedGenome::identity(int d_max) {
    if (d_max < 1) {
        throw std::invalid_argument("UnifiedGenome: d_max must be positive");
    }
    std::vector<int> order(static_cast<std::size_t>(d_max));
    std::iota(order.begin(), order.end(), 1);
    return GenomeEditor::adopt(std::move(order));
}

UnifiedGenome UnifiedGenome::random(int d_max, Rng& rng) {
    UnifiedGenome g = identity(d_max);
    rng.shuffle(std::span<int>(g.order_));
    return g;
}

}  // namespace mfea

#ifndef MFEA_GENOME_HPP
#define MFEA_GENOME_HPP

#include <span>
#include <vector>

#include "mfea/random.hpp"

namespace mfea {

/// A permutation of {1, ..., d_max} shared by every task.
///
/// Each task reads the genome through `project`, which keeps the values that
/// belong to that task's dimension in their genome order.
class UnifiedGenome {
public:
    UnifiedGenome() = default;

    /// Takes ownership of `order`; throws std::invalid_argument if it is not
    /// a permutation of 1..order.size().
    explicit UnifiedGenome(std::vector<int> order);

    static UnifiedGenome identity(int d_max);
    static UnifiedGenome random(int d_max, Rng& rng);

    int d_max() const { return static_cast<int>(order_.size()); }
    std::span<const int> order() const { return order_; }
    int operator[](std::size_t i) const { return order_[i]; }

    bool operator==(const UnifiedGenome&) const = default;

private:
    friend class GenomeEditor;
    std::vector<int> order_;
};

/// True if `values` holds each of 1..values.size() exactly once.
bool is_permutation_of_1_to_n(std::span<const int> values);

/// Mutable access for the variation operators, which preserve validity by
/// construction. Not part of the public surface of UnifiedGenome.
class GenomeEditor {
public:
    static std::vector<int>& order(UnifiedGenome& g) { return g.order_; }
    static UnifiedGenome adopt(std::vector<int> order) {
        UnifiedGenome g;
        g.order_ = std::move(order);
        return g;
    }
};

}  // namespace mfea

#endif

#ifndef MFEA_OPERATORS_HPP
#define MFEA_OPERATORS_HPP

#include <cstddef>
#include <utility>

#include "mfea/genome.hpp"
#include "mfea/random.hpp"

namespace mfea {

/// Cutting window covering positions [start, start + length). Windows never
/// wrap around the end of the genome.
struct CrossoverWindow {
    std::size_t start = 0;
    std::size_t length = 1;

    std::size_t end() const { return start + length; }
    bool contains(std::size_t pos) const { return pos >= start && pos < end(); }
};

/// Window between two different cut points drawn from {0, ..., d_max}.
CrossoverWindow random_cut_window(std::size_t d_max, Rng& rng);

/// Order crossover (OX).
///
/// child1 keeps a's genes inside the window. The remaining genes are the ones
/// absent from that segment, read from b cyclically starting just after the
/// window and written cyclically into the free positions, also starting just
/// after the window. child2 swaps the parents' roles. Throws std::invalid_argument on mismatched
/// parents or an out-of-range window.
std::pair<UnifiedGenome, UnifiedGenome> order_crossover(const UnifiedGenome& a, const UnifiedGenome& b,
                                                        CrossoverWindow window);

/// Number of genes a dynamic OX moves: round(w * rmp_entry * d_k), at least 1
/// and at most d_max - 1.
std::size_t window_length(double w, double rmp_entry, int d_k, int d_max);

struct DynamicOxResult {
    UnifiedGenome child;
    CrossoverWindow window;
    bool guard_applied = false;  // child matched the dominant parent and was 2-opt moved
};

/// Dynamic parent-centric OX (dOX).
///
/// The child is the dominant parent except inside a window of
/// window_length(w, rmp_entry, d_k, d_max) genes, where the dominant's genes
/// are rearranged into the order they have in the donor: OX keeping the
/// dominant's out-of-window segment and filling the window from the donor.
/// If that leaves the child identical to the dominant, a 2-opt move spanning
/// at most length + 2 positions is applied, so the child always differs from
/// the dominant in between 1 and length + 2 positions.
DynamicOxResult dynamic_ox_detailed(const UnifiedGenome& dominant, const UnifiedGenome& donor, double rmp_entry,
                                    double w, int d_k, Rng& rng);

inline UnifiedGenome dynamic_ox(const UnifiedGenome& dominant, const UnifiedGenome& donor, double rmp_entry,
                                double w, int d_k, Rng& rng) {
    return dynamic_ox_detailed(dominant, donor, rmp_entry, w, d_k, rng).child;
}

/// Reverses positions i..j inclusive. Requires i < j < d_max.
UnifiedGenome two_opt(const UnifiedGenome& genome, std::size_t i, std::size_t j);

/// 2-opt at a uniformly random pair i < j.
UnifiedGenome two_opt(const UnifiedGenome& genome, Rng& rng);

}  // namespace mfea

#endif

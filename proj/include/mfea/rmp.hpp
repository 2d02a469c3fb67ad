#ifndef MFEA_RMP_HPP
#define MFEA_RMP_HPP

#include <Eigen/Core>

namespace mfea {

/// Symmetric K x K matrix of random mating probabilities learned online.
///
/// Entry (i, j) is the probability that a pair with skills i != j performs an
/// inter-task crossover and, together with the diagonal, sizes the dOX
/// window. Every entry stays in [floor, 1].
class RmpMatrix {
public:
    RmpMatrix(int k_tasks, double initial, double delta_inc, double delta_dec, double floor = 0.1);

    int k_tasks() const { return static_cast<int>(entries_.rows()); }
    double operator()(int i, int j) const { return entries_(i, j); }
    const Eigen::MatrixXd& entries() const { return entries_; }

    double delta_inc() const { return delta_inc_; }
    double delta_dec() const { return delta_dec_; }
    double floor() const { return floor_; }

    /// Positive transfer: entry := min(1, entry / delta_inc).
    /// Negative transfer: entry := max(floor, entry * delta_dec).
    /// The mirrored entry gets the same value.
    void update(int i, int j, bool transfer_positive);

    bool is_valid(double tolerance = 0.0) const;

private:
    Eigen::MatrixXd entries_;
    double delta_inc_;
    double delta_dec_;
    double floor_;
};

/// Value form of RmpMatrix::update.
RmpMatrix rmp_update(RmpMatrix m, int i, int j, bool transfer_positive);

}  // namespace mfea

#endif

#include "mfea/rmp.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfea {

RmpMatrix::RmpMatrix(int k_tasks, double initial, double delta_inc, double delta_dec, double floor)
    : entries_(Eigen::MatrixXd::Constant(k_tasks, k_tasks, initial)),
      delta_inc_(delta_inc),
      delta_dec_(delta_dec),
      floor_(floor) {
    if (k_tasks < 1) {
        throw std::invalid_argument("RmpMatrix: need at least one task");
    }
    if (!(delta_inc > 0.0 && delta_inc <= 1.0) || !(delta_dec > 0.0 && delta_dec <= 1.0)) {
        throw std::invalid_argument("RmpMatrix: delta_inc and delta_dec must lie in (0, 1]");
    }
    if (!(floor >= 0.0 && floor <= initial && initial <= 1.0)) {
        throw std::invalid_argument("RmpMatrix: need 0 <= floor <= initial <= 1");
    }
}

void RmpMatrix::update(int i, int j, bool transfer_positive) {
    if (i < 0 || j < 0 || i >= k_tasks() || j >= k_tasks()) {
        throw std::out_of_range("RmpMatrix::update: task index out of range");
    }
    const double current = entries_(i, j);
    const double next = transfer_positive ? std::min(1.0, current / delta_inc_) : std::max(floor_, current * delta_dec_);
    entries_(i, j) = next;
    entries_(j, i) = next;
}

bool RmpMatrix::is_valid(double tolerance) const {
    const bool symmetric = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() <= tolerance;
    const bool bounded = entries_.minCoeff() >= floor_ - tolerance && entries_.maxCoeff() <= 1.0 + tolerance;
    return symmetric && bounded;
}

RmpMatrix rmp_update(RmpMatrix m, int i, int j, bool transfer_positive) {
    m.update(i, j, transfer_positive);
    return m;
}

}  // namespace mfea

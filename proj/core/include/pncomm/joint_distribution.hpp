#ifndef PNCOMM_JOINT_DISTRIBUTION_HPP
#define PNCOMM_JOINT_DISTRIBUTION_HPP

#include <stdexcept>
#include <vector>

namespace pncomm {

/// Joint photon-number distribution of a two-mode state, truncated to
/// photon numbers 0..cutoff in each mode. probs is row-major in (p, q)
/// where p counts photons in mode 1 and q in mode 2. tail_mass records the
/// probability outside the stored square.
struct JointDistribution {
    int cutoff = 0;
    std::vector<double> probs;
    double tail_mass = 0.0;

    JointDistribution() : probs(1, 0.0) {}

    explicit JointDistribution(int cutoff_)
        : cutoff(cutoff_) {
        if (cutoff_ < 0) {
            throw std::invalid_argument("JointDistribution: cutoff must be nonnegative");
        }
        probs.assign(static_cast<std::size_t>(cutoff_ + 1) * (cutoff_ + 1), 0.0);
    }

    int dim() const { return cutoff + 1; }

    double operator()(int p, int q) const {
        return probs[static_cast<std::size_t>(p) * dim() + q];
    }

    double& at(int p, int q) {
        return probs[static_cast<std::size_t>(p) * dim() + q];
    }

    /// Compensated sum of all stored entries.
    double sum() const {
        double s = 0.0, c = 0.0;
        for (double v : probs) {
            const double y = v - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    }
};

}  // namespace pncomm

#endif

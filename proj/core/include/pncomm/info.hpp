#ifndef PNCOMM_INFO_HPP
#define PNCOMM_INFO_HPP

#include <utility>
#include <vector>

#include "pncomm/joint_distribution.hpp"

namespace pncomm {

/// First and second moments of a truncated two-mode photon-number
/// distribution.
struct Moments {
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    double cov = 0.0;
};

/// Discrete joint input/output symbol distribution of a classical channel
/// with alphabet letters 0..alphabet-1; probs is row-major in
/// (sent, decoded).
struct SymbolTable {
    int alphabet = 2;
    std::vector<double> probs;

    SymbolTable(int alphabet_, std::vector<double> probs_);

    double operator()(int i, int j) const {
        return probs[static_cast<std::size_t>(i) * alphabet + j];
    }
};

/// Per-mode marginal photon-number distributions (first, second).
std::pair<std::vector<double>, std::vector<double>> marginals(
    const JointDistribution& joint);

/// Means, variances and covariance of the stored (truncated) distribution.
Moments moments(const JointDistribution& joint);

/// Pearson correlation cov / sqrt(var1 var2). Throws if either variance
/// vanishes.
double correlation_index(const Moments& m);

/// Mandel Q = var/mean - 1 of a single-mode photon-number distribution
/// given as a weight vector starting at n = 0. Throws on zero mean.
double mandel_q(const std::vector<double>& distribution);

/// Mutual information of a joint symbol table, in bits, with the
/// 0 log 0 = 0 convention.
double mutual_information(const SymbolTable& table);

namespace detail {
/// Same computation over a raw row-major alphabet x alphabet array without
/// construction or validation; the hot path of the threshold search.
double mutual_information_unchecked(const double* probs, int alphabet);
}  // namespace detail

}  // namespace pncomm

#endif

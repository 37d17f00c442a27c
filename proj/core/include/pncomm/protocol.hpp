#ifndef PNCOMM_PROTOCOL_HPP
#define PNCOMM_PROTOCOL_HPP

#include <cstdint>
#include <vector>

#include "pncomm/info.hpp"
#include "pncomm/joint_distribution.hpp"
#include "pncomm/loss.hpp"
#include "pncomm/states.hpp"

namespace pncomm {

/// Strictly increasing photon-count thresholds T_1 < ... < T_{M-1} defining
/// an M-letter alphabet: a count n decodes to the number of thresholds
/// strictly below n, i.e. letter k covers T_k < n <= T_{k+1}.
struct ThresholdSet {
    std::vector<int> thresholds;

    explicit ThresholdSet(std::vector<int> thresholds_);

    int alphabet() const { return static_cast<int>(thresholds.size()) + 1; }
};

/// Letter assigned to a photon count: #{i : T_i < count}.
int decode(int photon_count, const ThresholdSet& thresholds);

/// Joint table of (letter decoded from mode 1, letter decoded from mode 2)
/// when both arms apply the same thresholds to a shared two-mode photon
/// distribution.
SymbolTable symbol_table(const JointDistribution& joint,
                         const ThresholdSet& thresholds);

struct CapacityResult {
    double capacity_bits = 0.0;
    std::vector<int> thresholds;        // the optimizer, lexicographically
                                        // smallest among ties
    std::int64_t n_evaluated = 0;       // threshold tuples examined
};

/// Channel capacity of the threshold protocol: mutual information maximized
/// exhaustively over all strictly increasing (alphabet-1)-tuples of
/// thresholds within the stored photon range. Ties resolve to the
/// lexicographically smallest tuple (the first one found in ascending
/// enumeration order).
CapacityResult capacity(const JointDistribution& joint, int alphabet);

/// One grid point of a capacity sweep.
struct SweepRow {
    double mean_total = 0.0;
    double parameter = 0.0;             // lambda, x or N, by kind
    double eta_overall = 1.0;           // geometric mean of the two arms
    double eta1 = 1.0;
    double eta2 = 1.0;
    CapacityResult result;
    // Historical fixed-threshold comparison point, binary alphabets only:
    // the threshold sits at the mean count of the received mode instead of
    // being optimized.
    int mean_threshold = -1;
    double mean_threshold_bits = 0.0;
};

/// Capacity on a (mean photon number) x (symmetric transmissivity) grid.
/// Means are state totals over both modes.
std::vector<SweepRow> capacity_sweep(StateKind kind,
                                     const std::vector<double>& mean_grid,
                                     const std::vector<double>& eta_grid,
                                     int alphabet,
                                     double tail_tol = kDefaultTailTol);

/// Binary capacity across channel asymmetry at fixed overall loss: each
/// eta1 in the grid is paired with eta2 = eta_overall^2 / eta1, keeping the
/// geometric mean at eta_overall. Grid values outside [eta_overall^2, 1]
/// are rejected.
std::vector<SweepRow> asymmetry_sweep(StateKind kind, double mean_total,
                                      double eta_overall,
                                      const std::vector<double>& eta1_grid,
                                      double tail_tol = kDefaultTailTol);

/// Second-order response of the coincidence probability P(n, n) to channel
/// asymmetry at fixed overall loss, estimated by a symmetric finite
/// difference in delta = eta1 - eta2 along the curve eta1 eta2 = eta^2.
struct CurvatureEstimate {
    double coefficient = 0.0;           // quadratic coefficient at step delta
    double halved_step_estimate = 0.0;  // same stencil at delta/2
    bool step_stable = true;            // the two estimates agree to 25%
};

CurvatureEstimate coincidence_curvature(StateKind kind, double parameter, double eta,
                                        int n, double delta = 1e-3);

}  // namespace pncomm

#endif

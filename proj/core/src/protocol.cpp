#include "pncomm/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pncomm {

namespace {

/// Inclusive 2D prefix sums: S[a][b] = sum of J(p, q) over p < a, q < b,
/// with a, b in [0, dim]. Lets every symbol-table block be four lookups.
std::vector<double> prefix_sums(const JointDistribution& joint) {
    const int dim = joint.dim();
    std::vector<double> s(static_cast<std::size_t>(dim + 1) * (dim + 1), 0.0);
    auto at = [dim, &s](int a, int b) -> double& {
        return s[static_cast<std::size_t>(a) * (dim + 1) + b];
    };
    for (int p = 0; p < dim; ++p) {
        double row = 0.0;
        for (int q = 0; q < dim; ++q) {
            row += joint(p, q);
            at(p + 1, q + 1) = at(p, q + 1) + row;
        }
    }
    return s;
}

/// Fills the M x M symbol table for bin boundaries B (length M + 1,
/// B[0] = 0, B[M] = dim) from prefix sums.
void fill_table(const std::vector<double>& s, int dim, const std::vector<int>& bounds,
                int alphabet, double* table) {
    auto at = [dim, &s](int a, int b) {
        return s[static_cast<std::size_t>(a) * (dim + 1) + b];
    };
    for (int i = 0; i < alphabet; ++i) {
        for (int j = 0; j < alphabet; ++j) {
            table[i * alphabet + j] = at(bounds[i + 1], bounds[j + 1]) -
                                      at(bounds[i], bounds[j + 1]) -
                                      at(bounds[i + 1], bounds[j]) +
                                      at(bounds[i], bounds[j]);
        }
    }
}

}  // namespace

ThresholdSet::ThresholdSet(std::vector<int> thresholds_)
    : thresholds(std::move(thresholds_)) {
    if (thresholds.empty()) {
        throw std::invalid_argument("ThresholdSet: need at least one threshold");
    }
    int prev = -1;
    for (int t : thresholds) {
        if (t < 0) {
            throw std::invalid_argument("ThresholdSet: thresholds must be nonnegative");
        }
        if (t <= prev) {
            throw std::invalid_argument("ThresholdSet: thresholds must strictly increase");
        }
        prev = t;
    }
}

int decode(int photon_count, const ThresholdSet& thresholds) {
    if (photon_count < 0) {
        throw std::invalid_argument("decode: photon count must be nonnegative");
    }
    int letter = 0;
    for (int t : thresholds.thresholds) {
        if (t < photon_count) {
            ++letter;
        } else {
            break;
        }
    }
    return letter;
}

SymbolTable symbol_table(const JointDistribution& joint, const ThresholdSet& thresholds) {
    const int alphabet = thresholds.alphabet();
    const int dim = joint.dim();
    // Bin boundaries in count space: letter k covers [B_k, B_{k+1}).
    std::vector<int> bounds(alphabet + 1, 0);
    for (int i = 0; i < alphabet - 1; ++i) {
        bounds[i + 1] = std::min(thresholds.thresholds[i] + 1, dim);
    }
    bounds[alphabet] = dim;
    for (int i = 0; i < alphabet; ++i) {
        bounds[i + 1] = std::max(bounds[i + 1], bounds[i]);
    }
    std::vector<double> probs(static_cast<std::size_t>(alphabet) * alphabet, 0.0);
    for (int p = 0; p < dim; ++p) {
        const int i =
            static_cast<int>(std::upper_bound(bounds.begin() + 1, bounds.end(), p) -
                             (bounds.begin() + 1));
        for (int q = 0; q < dim; ++q) {
            const int j =
                static_cast<int>(std::upper_bound(bounds.begin() + 1, bounds.end(), q) -
                                 (bounds.begin() + 1));
            probs[static_cast<std::size_t>(i) * alphabet + j] += joint(p, q);
        }
    }
    return SymbolTable(alphabet, std::move(probs));
}

CapacityResult capacity(const JointDistribution& joint, int alphabet) {
    if (alphabet < 2) {
        throw std::invalid_argument("capacity: alphabet must be at least 2");
    }
    const int cutoff = joint.cutoff;
    const int k = alphabet - 1;
    if (cutoff < k) {
        throw std::invalid_argument(
            "capacity: photon range too small for the requested alphabet");
    }
    const int dim = cutoff + 1;
    const std::vector<double> s = prefix_sums(joint);
    std::vector<double> table(static_cast<std::size_t>(alphabet) * alphabet);
    std::vector<int> bounds(alphabet + 1);
    bounds[0] = 0;
    bounds[alphabet] = dim;

    // Ascending lexicographic enumeration of strictly increasing threshold
    // tuples in [0, cutoff); the first maximizer found is therefore the
    // lexicographically smallest.
    std::vector<int> t(k);
    for (int i = 0; i < k; ++i) t[i] = i;
    CapacityResult best;
    best.capacity_bits = -1.0;
    while (true) {
        for (int i = 0; i < k; ++i) bounds[i + 1] = t[i] + 1;
        fill_table(s, dim, bounds, alphabet, table.data());
        const double bits = detail::mutual_information_unchecked(table.data(), alphabet);
        ++best.n_evaluated;
        if (bits > best.capacity_bits) {
            best.capacity_bits = bits;
            best.thresholds = t;
        }
        // Advance the odometer: bump the rightmost index with headroom.
        int j = k - 1;
        while (j >= 0 && t[j] == cutoff - 1 - (k - 1 - j)) --j;
        if (j < 0) break;
        ++t[j];
        for (int i = j + 1; i < k; ++i) t[i] = t[i - 1] + 1;
    }
    best.capacity_bits = std::max(0.0, best.capacity_bits);
    return best;
}

namespace {

double parameter_for_mean(StateKind kind, double mean_total) {
    switch (kind) {
        case StateKind::Tmc:
            return lambda_for_mean(mean_total);
        case StateKind::Twb:
            return x_for_mean(mean_total);
        case StateKind::Tth:
            return mean_total;
    }
    throw std::invalid_argument("unknown state kind");
}

/// Appends the historical comparison point for binary rows: the threshold
/// parked at the mean count of the received first mode.
void add_mean_threshold(SweepRow& row, const JointDistribution& joint) {
    const Moments m = moments(joint);
    int t = static_cast<int>(std::floor(m.mean1));
    t = std::max(0, std::min(t, joint.cutoff - 1));
    row.mean_threshold = t;
    const SymbolTable table = symbol_table(joint, ThresholdSet({t}));
    row.mean_threshold_bits = mutual_information(table);
}

}  // namespace

std::vector<SweepRow> capacity_sweep(StateKind kind, const std::vector<double>& mean_grid,
                                     const std::vector<double>& eta_grid, int alphabet,
                                     double tail_tol) {
    std::vector<SweepRow> rows;
    rows.reserve(mean_grid.size() * eta_grid.size());
    for (double mean : mean_grid) {
        const double parameter = parameter_for_mean(kind, mean);
        for (double eta : eta_grid) {
            const ChannelParams channel(eta, eta);
            SweepRow row;
            row.mean_total = mean;
            row.parameter = parameter;
            row.eta_overall = eta;
            row.eta1 = eta;
            row.eta2 = eta;
            const JointDistribution joint =
                lossy_joint(kind, parameter, channel, -1, tail_tol);
            row.result = capacity(joint, alphabet);
            if (alphabet == 2) add_mean_threshold(row, joint);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SweepRow> asymmetry_sweep(StateKind kind, double mean_total,
                                      double eta_overall,
                                      const std::vector<double>& eta1_grid,
                                      double tail_tol) {
    if (!(eta_overall > 0) || eta_overall > 1.0) {
        throw std::invalid_argument("asymmetry_sweep: overall eta must lie in (0, 1]");
    }
    const double floor_eta1 = eta_overall * eta_overall;
    const double parameter = parameter_for_mean(kind, mean_total);
    std::vector<SweepRow> rows;
    rows.reserve(eta1_grid.size());
    for (double eta1 : eta1_grid) {
        // Keeping eta1 eta2 = eta^2 with both arms in (0, 1] confines eta1
        // to [eta^2, 1].
        if (eta1 < floor_eta1 * (1.0 - 1e-12) || eta1 > 1.0 + 1e-12) {
            throw std::invalid_argument(
                "asymmetry_sweep: eta1 grid value outside [eta^2, 1]");
        }
        const double eta1c = std::min(eta1, 1.0);
        const double eta2 = std::min(floor_eta1 / eta1c, 1.0);
        const ChannelParams channel(eta1c, eta2);
        SweepRow row;
        row.mean_total = mean_total;
        row.parameter = parameter;
        row.eta_overall = eta_overall;
        row.eta1 = eta1c;
        row.eta2 = eta2;
        const JointDistribution joint = lossy_joint(kind, parameter, channel, -1, tail_tol);
        row.result = capacity(joint, 2);
        add_mean_threshold(row, joint);
        rows.push_back(std::move(row));
    }
    return rows;
}

CurvatureEstimate coincidence_curvature(StateKind kind, double parameter, double eta,
                                        int n, double delta) {
    if (n < 0) {
        throw std::invalid_argument("coincidence_curvature: n must be nonnegative");
    }
    if (!(eta > 0) || eta > 1.0) {
        throw std::invalid_argument("coincidence_curvature: eta must lie in (0, 1]");
    }
    if (!(delta >= 0)) {
        throw std::invalid_argument("coincidence_curvature: delta must be nonnegative");
    }
    if (delta == 0.0) {
        return CurvatureEstimate{0.0, 0.0, true};
    }
    if (delta > 1.0 - eta * eta) {
        throw std::invalid_argument(
            "coincidence_curvature: delta exceeds the asymmetry range at this eta");
    }
    const double symmetric = lossy_joint_entry(kind, parameter, ChannelParams(eta, eta), n, n);
    auto estimate = [&](double d) {
        // eta1 - eta2 = d along eta1 eta2 = eta^2.
        const double eta1 = 0.5 * (std::sqrt(4.0 * eta * eta + d * d) + d);
        const double eta2 = eta * eta / eta1;
        const double plus = lossy_joint_entry(kind, parameter, ChannelParams(eta1, eta2), n, n);
        const double swapped =
            lossy_joint_entry(kind, parameter, ChannelParams(eta2, eta1), n, n);
        return (plus + swapped - 2.0 * symmetric) / (2.0 * d * d);
    };
    CurvatureEstimate out;
    out.coefficient = estimate(delta);
    out.halved_step_estimate = estimate(0.5 * delta);
    out.step_stable = std::abs(out.coefficient - out.halved_step_estimate) <=
                      0.25 * std::max(std::abs(out.coefficient),
                                      std::abs(out.halved_step_estimate)) +
                          1e-12;
    return out;
}

}  // namespace pncomm

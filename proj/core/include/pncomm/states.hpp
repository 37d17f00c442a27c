#ifndef PNCOMM_STATES_HPP
#define PNCOMM_STATES_HPP

#include <vector>

#include "pncomm/joint_distribution.hpp"

namespace pncomm {

/// Families of photon-number-correlated two-mode states.
///
///  - Tmc: two-mode coherently-correlated (pair-coherent) state,
///         c_n = lambda^n / (n! sqrt(I_0(2 lambda)))
///  - Twb: twin beam, c_n = sqrt(1 - x^2) x^n
///  - Tth: two-mode thermal state, a classically correlated mixture
enum class StateKind { Tmc, Twb, Tth };

/// Default bound on the probability mass a truncation may discard.
inline constexpr double kDefaultTailTol = 1e-12;

/// Schmidt coefficients c_0..c_cutoff of a photon-number entangled state
/// |Psi>> = sum_n c_n |n,n>>. The parameter field holds lambda (Tmc) or
/// x (Twb).
struct PhotonProfile {
    StateKind kind = StateKind::Twb;
    double parameter = 0.0;
    std::vector<double> coefficients;

    int cutoff() const { return static_cast<int>(coefficients.size()) - 1; }
    double weight(int n) const { return coefficients[n] * coefficients[n]; }
    /// 1 - sum of weights.
    double tail_mass() const;
};

/// Two-mode thermal state, fully described by its total mean photon number.
struct TthSpec {
    double mean_total = 0.0;

    explicit TthSpec(double mean_total_);
};

/// Smallest truncation cutoff whose discarded mass is certified below
/// tail_tol (by geometric tail bounds for Twb/Tth and a term-ratio bound
/// for Tmc). parameter is lambda, x or the total mean, by kind.
int auto_cutoff(StateKind kind, double parameter, double tail_tol = kDefaultTailTol);

/// Pair-coherent profile for lambda >= 0. If cutoff < 0 it is chosen
/// automatically; either way the discarded mass must end up below tail_tol.
PhotonProfile tmc_coefficients(double lambda, int cutoff = -1,
                               double tail_tol = kDefaultTailTol);

/// Twin-beam profile for 0 <= x < 1.
PhotonProfile twb_coefficients(double x, int cutoff = -1,
                               double tail_tol = kDefaultTailTol);

/// Total mean photon number over both modes: 2 lambda I_1(2 lambda) / I_0(2 lambda).
double tmc_mean_photons(double lambda);

/// Total mean photon number over both modes: 2 x^2 / (1 - x^2).
double twb_mean_photons(double x);

/// Inverts tmc_mean_photons by bisection to |mean(lambda) - target| < 1e-10.
double lambda_for_mean(double target_mean_total);

/// Inverts twb_mean_photons in closed form: x = sqrt(N / (N + 2)).
double x_for_mean(double target_mean_total);

/// Mandel Q of either single-mode marginal of the ideal state. Negative
/// values flag sub-Poissonian (nonclassical) photon statistics.
double mandel_q_ideal(const PhotonProfile& profile);

/// Each Tth marginal is thermal with mean N/2, so Q = N/2.
double mandel_q_ideal(const TthSpec& spec);

/// Entanglement entropy - sum c_n^2 log2 c_n^2 of the pure two-mode state,
/// in bits.
double entanglement_entropy(const PhotonProfile& profile);

/// Joint photon-number distribution of the two-mode thermal state,
///   P(p, q) = (1 / (1 + N)) C(p+q, p) (N / (2 (1 + N)))^(p+q).
JointDistribution tth_joint_ideal(const TthSpec& spec, int cutoff = -1,
                                  double tail_tol = kDefaultTailTol);

/// Pearson photon-number correlation of the ideal two-mode thermal state,
/// N / (N + 2). (Ideal PNES states have correlation exactly 1.)
double tth_correlation_ideal(const TthSpec& spec);

/// Diagonal joint distribution of an ideal PNES: P(n, n) = c_n^2.
JointDistribution pnes_joint_ideal(const PhotonProfile& profile);

}  // namespace pncomm

#endif

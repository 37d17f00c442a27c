#ifndef PNCOMM_LOSS_HPP
#define PNCOMM_LOSS_HPP

#include "pncomm/joint_distribution.hpp"
#include "pncomm/states.hpp"

namespace pncomm {

/// Transmissivities of the two independent lossy arms, each in (0, 1].
struct ChannelParams {
    double eta1 = 1.0;
    double eta2 = 1.0;

    ChannelParams(double eta1_, double eta2_);
};

/// Matrix element <p| A_n |p + n> of the single-mode loss Kraus operator that
/// removes exactly n photons at transmissivity eta:
///
///   sqrt(C(p + n, n)) eta^(p/2) (1 - eta)^(n/2)
double kraus_element(int p, int n, int p_plus_n, double eta);

/// Propagates a truncated joint photon-number distribution through the two
/// lossy arms by independent binomial thinning of each mode. This is the
/// reference path the closed forms are checked against; it touches every
/// input entry directly and never evaluates a special function.
JointDistribution thinning_oracle(const JointDistribution& input,
                                  const ChannelParams& channel);

/// Same map evaluated as the literal four-index Kraus sum
/// P_out(p, q) = sum_{n,m} |<p| A_n |p+n>|^2 |<q| A_m |q+m>|^2 P_in(p+n, q+m).
/// Quadratically slower than thinning_oracle; kept as an independent
/// cross-check at small cutoffs.
JointDistribution kraus_reference(const JointDistribution& input,
                                  const ChannelParams& channel);

/// Closed-form joint photon-number distribution of a pair-coherent state
/// after the two-arm loss channel. Assembled in the log domain around
/// a monomial-stripped Bessel series, so no intermediate under/overflows.
JointDistribution joint_tmc(double lambda, const ChannelParams& channel,
                            int cutoff = -1, double tail_tol = kDefaultTailTol);

/// Closed-form lossy joint distribution of a twin-beam state (Gauss
/// hypergeometric series).
JointDistribution joint_twb(double x, const ChannelParams& channel,
                            int cutoff = -1, double tail_tol = kDefaultTailTol);

/// Closed-form lossy joint distribution of the two-mode thermal state,
///   P(p, q) = 2 eta1^p eta2^q N^(p+q) C(p+q, p) / (2 + N(eta1+eta2))^(p+q+1).
JointDistribution joint_tth(double mean_total, const ChannelParams& channel,
                            int cutoff = -1, double tail_tol = kDefaultTailTol);

/// Ideal (lossless) joint distribution of any family. parameter is lambda,
/// x or the total mean, by kind.
JointDistribution ideal_joint(StateKind kind, double parameter, int cutoff = -1,
                              double tail_tol = kDefaultTailTol);

/// Closed-form lossy joint distribution of any family.
JointDistribution lossy_joint(StateKind kind, double parameter,
                              const ChannelParams& channel, int cutoff = -1,
                              double tail_tol = kDefaultTailTol);

/// Single entry P(p, q) of the closed-form lossy joint distribution, without
/// building the whole truncated matrix. Used by probes that only need a few
/// matrix elements, e.g. the coincidence-curvature estimate.
double lossy_joint_entry(StateKind kind, double parameter,
                         const ChannelParams& channel, int p, int q);

/// Pearson photon-number correlation between the two output modes, in
/// closed form:
///
///   Tmc:  sqrt(eta1 eta2)
///   Twb:  (2 + N) sqrt(eta1 eta2) / sqrt((2 + N eta1)(2 + N eta2))
///   Tth:  N sqrt(eta1 eta2) / sqrt((2 + N eta1)(2 + N eta2))
///
/// where N is the total mean photon number of the input. Throws for a
/// vacuum input (zero variance).
double correlation_after_loss(StateKind kind, double parameter,
                              const ChannelParams& channel);

}  // namespace pncomm

#endif

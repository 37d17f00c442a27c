#include "pncomm/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pncomm/special_functions.hpp"

namespace pncomm {

namespace {

void check_tail_tol(double tail_tol) {
    if (!(tail_tol > 0) || tail_tol > 1.0) {
        throw std::invalid_argument("tail_tol must lie in (0, 1]");
    }
}

bool tail_ok(double tail, double tail_tol) {
    return tail <= tail_tol * (1.0 + 1e-6) + 1e-14;
}

[[noreturn]] void throw_tail(const char* what, double tail, double tail_tol) {
    throw std::runtime_error(std::string(what) + ": truncation discards mass " +
                             std::to_string(tail) + " > tail_tol " +
                             std::to_string(tail_tol));
}

/// Binomial thinning matrix B[n][p] = C(n, p) eta^p (1 - eta)^(n - p),
/// p <= n <= cutoff. Lossless arms get an exact identity.
std::vector<std::vector<double>> thinning_matrix(int cutoff, double eta) {
    std::vector<std::vector<double>> b(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) {
        b[n].assign(n + 1, 0.0);
        if (eta == 1.0) {
            b[n][n] = 1.0;
            continue;
        }
        for (int p = 0; p <= n; ++p) {
            b[n][p] = std::exp(log_binomial(n, p) + p * std::log(eta) +
                               (n - p) * std::log1p(-eta));
        }
    }
    return b;
}

JointDistribution point_mass_at_origin(int cutoff) {
    JointDistribution joint(std::max(cutoff, 0));
    joint.at(0, 0) = 1.0;
    return joint;
}

/// Per-entry evaluator for the closed-form lossy PNES distributions. The
/// exactly-lossless arms are dispatched to dedicated branches so eta = 1
/// never meets a log(0).
struct PnesClosedForm {
    bool is_tmc = false;
    double log_param = 0.0;    // ln lambda or ln x
    double log_head = 0.0;     // -ln I_0(2 lambda) or ln(1 - x^2)
    double log_eta1 = 0.0, log_eta2 = 0.0;
    double log_w1 = 0.0, log_w2 = 0.0;
    double series_arg = 0.0;   // lambda^2 w1 w2 or x^2 w1 w2
    bool arm1_lossless = false, arm2_lossless = false;

    PnesClosedForm(StateKind kind, double parameter, const ChannelParams& channel) {
        is_tmc = kind == StateKind::Tmc;
        log_param = std::log(parameter);
        log_head = is_tmc ? -log_bessel_i_scaled(0, parameter * parameter)
                          : std::log1p(-parameter * parameter);
        arm1_lossless = channel.eta1 == 1.0;
        arm2_lossless = channel.eta2 == 1.0;
        log_eta1 = std::log(channel.eta1);
        log_eta2 = std::log(channel.eta2);
        log_w1 = arm1_lossless ? 0.0 : std::log1p(-channel.eta1);
        log_w2 = arm2_lossless ? 0.0 : std::log1p(-channel.eta2);
        series_arg = parameter * parameter * (1.0 - channel.eta1) * (1.0 - channel.eta2);
    }

    /// ln of the ideal number weight c_n^2.
    double log_weight(int n) const {
        return is_tmc ? log_head + 2.0 * n * log_param - 2.0 * log_factorial(n)
                      : log_head + 2.0 * n * log_param;
    }

    double entry(int p, int q) const {
        if (arm1_lossless && arm2_lossless) {
            return p == q ? std::exp(log_weight(p)) : 0.0;
        }
        if (arm1_lossless || arm2_lossless) {
            // The intact arm pins the input photon number; the other arm is
            // a single binomial draw from it.
            const int hi = arm1_lossless ? p : q;
            const int lo = arm1_lossless ? q : p;
            if (lo > hi) return 0.0;
            const double log_eta = arm1_lossless ? log_eta2 : log_eta1;
            const double log_w = arm1_lossless ? log_w2 : log_w1;
            return std::exp(log_weight(hi) + log_binomial(hi, lo) + lo * log_eta +
                            (hi - lo) * log_w);
        }
        const int hi = std::max(p, q);
        const int lo = std::min(p, q);
        const int d = hi - lo;
        // The d excess photons of the larger count were lost from the other
        // arm, hence that arm's (1 - eta)^d.
        const double log_w_star = p >= q ? log_w2 : log_w1;
        const double shared = log_head + p * log_eta1 + q * log_eta2 +
                              2.0 * hi * log_param + d * log_w_star;
        if (is_tmc) {
            return std::exp(shared - log_factorial(p) - log_factorial(q) +
                            log_bessel_i_scaled(d, series_arg));
        }
        return std::exp(shared + log_binomial(hi, lo) +
                        log_hyp2f1_equal(hi, d, series_arg));
    }
};

/// Per-entry evaluator for the closed-form lossy two-mode thermal
/// distribution (valid for any eta in (0, 1], including 1).
struct TthClosedForm {
    double log_eta1, log_eta2, log_mean, log_denom;

    TthClosedForm(double mean_total, const ChannelParams& channel)
        : log_eta1(std::log(channel.eta1)),
          log_eta2(std::log(channel.eta2)),
          log_mean(std::log(mean_total)),
          log_denom(std::log(2.0 + mean_total * (channel.eta1 + channel.eta2))) {}

    double entry(int p, int q) const {
        return std::exp(std::log(2.0) + p * log_eta1 + q * log_eta2 +
                        (p + q) * log_mean + log_binomial(p + q, p) -
                        (p + q + 1) * log_denom);
    }
};

template <typename EntryFn>
JointDistribution fill_joint(int cutoff, EntryFn entry, const char* what,
                             double tail_tol) {
    JointDistribution joint(cutoff);
    for (int p = 0; p <= cutoff; ++p) {
        for (int q = 0; q <= cutoff; ++q) {
            joint.at(p, q) = entry(p, q);
        }
    }
    joint.tail_mass = 1.0 - joint.sum();
    if (!tail_ok(joint.tail_mass, tail_tol)) throw_tail(what, joint.tail_mass, tail_tol);
    return joint;
}

}  // namespace

ChannelParams::ChannelParams(double eta1_, double eta2_) : eta1(eta1_), eta2(eta2_) {
    if (!(eta1 > 0) || eta1 > 1.0 || !(eta2 > 0) || eta2 > 1.0) {
        throw std::invalid_argument("ChannelParams: transmissivities must lie in (0, 1]");
    }
}

double kraus_element(int p, int n, int p_plus_n, double eta) {
    if (p < 0 || n < 0 || p_plus_n < 0) {
        throw std::invalid_argument("kraus_element: photon numbers must be nonnegative");
    }
    if (!(eta > 0) || eta > 1.0) {
        throw std::invalid_argument("kraus_element: eta must lie in (0, 1]");
    }
    if (p_plus_n != p + n) return 0.0;
    if (n == 0 && p == 0) return 1.0;
    if (eta == 1.0 && n > 0) return 0.0;
    return std::exp(0.5 * (log_binomial(p + n, n) + p * std::log(eta) +
                           (n > 0 ? n * std::log1p(-eta) : 0.0)));
}

JointDistribution thinning_oracle(const JointDistribution& input,
                                  const ChannelParams& channel) {
    const int cutoff = input.cutoff;
    const auto b1 = thinning_matrix(cutoff, channel.eta1);
    const auto b2 = thinning_matrix(cutoff, channel.eta2);

    // Thin one mode at a time; the map is a product of independent
    // single-mode channels.
    JointDistribution half(cutoff);
    for (int p = 0; p <= cutoff; ++p) {
        for (int m = 0; m <= cutoff; ++m) {
            double acc = 0.0;
            for (int n = p; n <= cutoff; ++n) {
                acc += b1[n][p] * input(n, m);
            }
            half.at(p, m) = acc;
        }
    }
    JointDistribution out(cutoff);
    for (int p = 0; p <= cutoff; ++p) {
        for (int q = 0; q <= cutoff; ++q) {
            double acc = 0.0;
            for (int m = q; m <= cutoff; ++m) {
                acc += b2[m][q] * half(p, m);
            }
            out.at(p, q) = acc;
        }
    }
    // Thinning only moves photons downward, so no mass crosses the cutoff.
    out.tail_mass = input.tail_mass;
    return out;
}

JointDistribution kraus_reference(const JointDistribution& input,
                                  const ChannelParams& channel) {
    const int cutoff = input.cutoff;
    JointDistribution out(cutoff);
    for (int p = 0; p <= cutoff; ++p) {
        for (int q = 0; q <= cutoff; ++q) {
            double acc = 0.0;
            for (int n = 0; p + n <= cutoff; ++n) {
                const double k1 = kraus_element(p, n, p + n, channel.eta1);
                for (int m = 0; q + m <= cutoff; ++m) {
                    const double k2 = kraus_element(q, m, q + m, channel.eta2);
                    acc += k1 * k1 * k2 * k2 * input(p + n, q + m);
                }
            }
            out.at(p, q) = acc;
        }
    }
    out.tail_mass = input.tail_mass;
    return out;
}

JointDistribution joint_tmc(double lambda, const ChannelParams& channel, int cutoff,
                            double tail_tol) {
    if (!(lambda >= 0)) {
        throw std::invalid_argument("joint_tmc: lambda must be nonnegative");
    }
    check_tail_tol(tail_tol);
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Tmc, lambda, tail_tol);
    if (lambda == 0.0) return point_mass_at_origin(cutoff);
    const PnesClosedForm form(StateKind::Tmc, lambda, channel);
    return fill_joint(
        cutoff, [&](int p, int q) { return form.entry(p, q); }, "joint_tmc", tail_tol);
}

JointDistribution joint_twb(double x, const ChannelParams& channel, int cutoff,
                            double tail_tol) {
    if (!(x >= 0) || x >= 1.0) {
        throw std::invalid_argument("joint_twb: need 0 <= x < 1");
    }
    check_tail_tol(tail_tol);
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Twb, x, tail_tol);
    if (x == 0.0) return point_mass_at_origin(cutoff);
    const PnesClosedForm form(StateKind::Twb, x, channel);
    return fill_joint(
        cutoff, [&](int p, int q) { return form.entry(p, q); }, "joint_twb", tail_tol);
}

JointDistribution joint_tth(double mean_total, const ChannelParams& channel, int cutoff,
                            double tail_tol) {
    if (!(mean_total >= 0)) {
        throw std::invalid_argument("joint_tth: mean must be nonnegative");
    }
    check_tail_tol(tail_tol);
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Tth, mean_total, tail_tol);
    if (mean_total == 0.0) return point_mass_at_origin(cutoff);
    const TthClosedForm form(mean_total, channel);
    return fill_joint(
        cutoff, [&](int p, int q) { return form.entry(p, q); }, "joint_tth", tail_tol);
}

JointDistribution ideal_joint(StateKind kind, double parameter, int cutoff,
                              double tail_tol) {
    switch (kind) {
        case StateKind::Tmc:
            return pnes_joint_ideal(tmc_coefficients(parameter, cutoff, tail_tol));
        case StateKind::Twb:
            return pnes_joint_ideal(twb_coefficients(parameter, cutoff, tail_tol));
        case StateKind::Tth:
            return tth_joint_ideal(TthSpec(parameter), cutoff, tail_tol);
    }
    throw std::invalid_argument("ideal_joint: unknown state kind");
}

JointDistribution lossy_joint(StateKind kind, double parameter,
                              const ChannelParams& channel, int cutoff,
                              double tail_tol) {
    switch (kind) {
        case StateKind::Tmc:
            return joint_tmc(parameter, channel, cutoff, tail_tol);
        case StateKind::Twb:
            return joint_twb(parameter, channel, cutoff, tail_tol);
        case StateKind::Tth:
            return joint_tth(parameter, channel, cutoff, tail_tol);
    }
    throw std::invalid_argument("lossy_joint: unknown state kind");
}

double lossy_joint_entry(StateKind kind, double parameter, const ChannelParams& channel,
                         int p, int q) {
    if (p < 0 || q < 0) {
        throw std::invalid_argument("lossy_joint_entry: photon numbers must be nonnegative");
    }
    switch (kind) {
        case StateKind::Tmc: {
            if (!(parameter >= 0)) {
                throw std::invalid_argument("lossy_joint_entry: lambda must be nonnegative");
            }
            if (parameter == 0.0) return p == 0 && q == 0 ? 1.0 : 0.0;
            return PnesClosedForm(kind, parameter, channel).entry(p, q);
        }
        case StateKind::Twb: {
            if (!(parameter >= 0) || parameter >= 1.0) {
                throw std::invalid_argument("lossy_joint_entry: need 0 <= x < 1");
            }
            if (parameter == 0.0) return p == 0 && q == 0 ? 1.0 : 0.0;
            return PnesClosedForm(kind, parameter, channel).entry(p, q);
        }
        case StateKind::Tth: {
            if (!(parameter >= 0)) {
                throw std::invalid_argument("lossy_joint_entry: mean must be nonnegative");
            }
            if (parameter == 0.0) return p == 0 && q == 0 ? 1.0 : 0.0;
            return TthClosedForm(parameter, channel).entry(p, q);
        }
    }
    throw std::invalid_argument("lossy_joint_entry: unknown state kind");
}

double correlation_after_loss(StateKind kind, double parameter,
                              const ChannelParams& channel) {
    const double geo = std::sqrt(channel.eta1 * channel.eta2);
    switch (kind) {
        case StateKind::Tmc: {
            if (!(parameter > 0)) {
                throw std::invalid_argument(
                    "correlation_after_loss: undefined at zero variance");
            }
            return geo;
        }
        case StateKind::Twb: {
            if (!(parameter > 0) || parameter >= 1.0) {
                throw std::invalid_argument(
                    "correlation_after_loss: Twb needs 0 < x < 1");
            }
            const double n = twb_mean_photons(parameter);
            return (2.0 + n) * geo /
                   std::sqrt((2.0 + n * channel.eta1) * (2.0 + n * channel.eta2));
        }
        case StateKind::Tth: {
            if (!(parameter > 0)) {
                throw std::invalid_argument(
                    "correlation_after_loss: undefined at zero variance");
            }
            const double n = parameter;
            return n * geo /
                   std::sqrt((2.0 + n * channel.eta1) * (2.0 + n * channel.eta2));
        }
    }
    throw std::invalid_argument("correlation_after_loss: unknown state kind");
}

}  // namespace pncomm

#include "pncomm/states.hpp"

#include <cmath>
#include <stdexcept>

#include "pncomm/special_functions.hpp"

namespace pncomm {

namespace {

double kahan_sum(const std::vector<double>& values) {
    double s = 0.0, c = 0.0;
    for (double v : values) {
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

void check_tail_tol(double tail_tol) {
    if (!(tail_tol > 0) || tail_tol > 1.0) {
        throw std::invalid_argument("tail_tol must lie in (0, 1]");
    }
}

/// Shared fp slack so a truncation sitting exactly at its certified bound is
/// not rejected for rounding noise in the final summation.
bool tail_ok(double tail, double tail_tol) {
    return tail <= tail_tol * (1.0 + 1e-6) + 1e-14;
}

[[noreturn]] void throw_tail(const char* what, double tail, double tail_tol) {
    throw std::runtime_error(std::string(what) + ": truncation discards mass " +
                             std::to_string(tail) + " > tail_tol " +
                             std::to_string(tail_tol));
}

/// Smallest c >= 0 with ratio^(c+1) <= tol, for 0 < ratio < 1.
int geometric_cutoff(double ratio, double tol) {
    int c = static_cast<int>(std::ceil(std::log(tol) / std::log(ratio))) - 1;
    if (c < 0) c = 0;
    while (std::pow(ratio, c + 1) > tol) ++c;
    while (c > 0 && std::pow(ratio, c) <= tol) --c;
    return c;
}

/// ln of the TMC number weight w_n = lambda^(2n) / (n!^2 I_0(2 lambda)).
double tmc_log_weight(int n, double lambda, double log_bessel0) {
    return 2.0 * n * std::log(lambda) - 2.0 * log_factorial(n) - log_bessel0;
}

}  // namespace

double PhotonProfile::tail_mass() const {
    std::vector<double> w(coefficients.size());
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
        w[n] = coefficients[n] * coefficients[n];
    }
    return 1.0 - kahan_sum(w);
}

TthSpec::TthSpec(double mean_total_) : mean_total(mean_total_) {
    if (!(mean_total_ >= 0)) {
        throw std::invalid_argument("TthSpec: mean photon number must be nonnegative");
    }
}

int auto_cutoff(StateKind kind, double parameter, double tail_tol) {
    check_tail_tol(tail_tol);
    switch (kind) {
        case StateKind::Twb: {
            if (!(parameter >= 0) || parameter >= 1.0) {
                throw std::invalid_argument("auto_cutoff: Twb needs 0 <= x < 1");
            }
            if (parameter == 0.0) return 0;
            return geometric_cutoff(parameter * parameter, tail_tol);
        }
        case StateKind::Tth: {
            if (!(parameter >= 0)) {
                throw std::invalid_argument("auto_cutoff: Tth needs mean >= 0");
            }
            if (parameter == 0.0) return 0;
            // The total photon number s = p + q is geometric, so the mass
            // outside the square (every omitted cell has s > c) is bounded by
            // (N / (1 + N))^(c+1).
            return geometric_cutoff(parameter / (1.0 + parameter), tail_tol);
        }
        case StateKind::Tmc: {
            if (!(parameter >= 0)) {
                throw std::invalid_argument("auto_cutoff: Tmc needs lambda >= 0");
            }
            const double lambda = parameter;
            if (lambda == 0.0) return 0;
            // Past the weight peak the term ratio r_n = lambda^2 / (n+1)^2
            // decreases, so the tail beyond cutoff c is bounded by
            // w_{c+1} / (1 - r_{c+1}).
            const double log_bessel0 = log_bessel_i_scaled(0, lambda * lambda);
            for (int c = 0;; ++c) {
                const double r = lambda * lambda / ((c + 2.0) * (c + 2.0));
                if (r >= 1.0) continue;
                const double bound =
                    std::exp(tmc_log_weight(c + 1, lambda, log_bessel0)) / (1.0 - r);
                if (bound <= tail_tol) return c;
            }
        }
    }
    throw std::invalid_argument("auto_cutoff: unknown state kind");
}

PhotonProfile tmc_coefficients(double lambda, int cutoff, double tail_tol) {
    if (!(lambda >= 0)) {
        throw std::invalid_argument("tmc_coefficients: lambda must be nonnegative");
    }
    check_tail_tol(tail_tol);
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Tmc, lambda, tail_tol);
    PhotonProfile profile;
    profile.kind = StateKind::Tmc;
    profile.parameter = lambda;
    profile.coefficients.assign(cutoff + 1, 0.0);
    if (lambda == 0.0) {
        profile.coefficients[0] = 1.0;
        return profile;
    }
    const double log_bessel0 = log_bessel_i_scaled(0, lambda * lambda);
    for (int n = 0; n <= cutoff; ++n) {
        profile.coefficients[n] = std::exp(0.5 * tmc_log_weight(n, lambda, log_bessel0));
    }
    const double tail = profile.tail_mass();
    if (!tail_ok(tail, tail_tol)) throw_tail("tmc_coefficients", tail, tail_tol);
    return profile;
}

PhotonProfile twb_coefficients(double x, int cutoff, double tail_tol) {
    if (!(x >= 0) || x >= 1.0) {
        throw std::invalid_argument("twb_coefficients: need 0 <= x < 1");
    }
    check_tail_tol(tail_tol);
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Twb, x, tail_tol);
    PhotonProfile profile;
    profile.kind = StateKind::Twb;
    profile.parameter = x;
    profile.coefficients.assign(cutoff + 1, 0.0);
    const double head = std::sqrt(1.0 - x * x);
    double power = 1.0;
    for (int n = 0; n <= cutoff; ++n) {
        profile.coefficients[n] = head * power;
        power *= x;
    }
    const double tail = profile.tail_mass();
    if (!tail_ok(tail, tail_tol)) throw_tail("twb_coefficients", tail, tail_tol);
    return profile;
}

double tmc_mean_photons(double lambda) {
    if (!(lambda >= 0)) {
        throw std::invalid_argument("tmc_mean_photons: lambda must be nonnegative");
    }
    if (lambda == 0.0) return 0.0;
    // 2 lambda I_1(2 lambda) / I_0(2 lambda), via the monomial-stripped series
    // so large arguments cannot overflow.
    const double u = lambda * lambda;
    const double ratio = std::exp(log_bessel_i_scaled(1, u) - log_bessel_i_scaled(0, u));
    return 2.0 * u * ratio;
}

double twb_mean_photons(double x) {
    if (!(x >= 0) || x >= 1.0) {
        throw std::invalid_argument("twb_mean_photons: need 0 <= x < 1");
    }
    return 2.0 * x * x / (1.0 - x * x);
}

double lambda_for_mean(double target_mean_total) {
    if (!(target_mean_total >= 0)) {
        throw std::invalid_argument("lambda_for_mean: target must be nonnegative");
    }
    if (target_mean_total == 0.0) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (tmc_mean_photons(hi) < target_mean_total) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) {
            throw std::runtime_error("lambda_for_mean: failed to bracket target");
        }
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double value = tmc_mean_photons(mid);
        if (std::abs(value - target_mean_total) < 1e-10) return mid;
        if (value < target_mean_total) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    const double mid = 0.5 * (lo + hi);
    if (std::abs(tmc_mean_photons(mid) - target_mean_total) < 1e-10) return mid;
    throw std::runtime_error("lambda_for_mean: bisection failed to converge");
}

double x_for_mean(double target_mean_total) {
    if (!(target_mean_total >= 0)) {
        throw std::invalid_argument("x_for_mean: target must be nonnegative");
    }
    return std::sqrt(target_mean_total / (target_mean_total + 2.0));
}

double mandel_q_ideal(const PhotonProfile& profile) {
    switch (profile.kind) {
        case StateKind::Tmc: {
            const double lambda = profile.parameter;
            if (lambda == 0.0) return 0.0;
            // Q = lambda (I_0/I_1 - I_1/I_0) - 1, always in (-1, 0): the TMC
            // marginals are sub-Poissonian.
            const double u = lambda * lambda;
            const double rho =
                lambda * std::exp(log_bessel_i_scaled(1, u) - log_bessel_i_scaled(0, u));
            return lambda * (1.0 / rho - rho) - 1.0;
        }
        case StateKind::Twb: {
            // Thermal marginal: Q equals the per-mode mean.
            return 0.5 * twb_mean_photons(profile.parameter);
        }
        default:
            throw std::invalid_argument("mandel_q_ideal: profile must be a PNES family");
    }
}

double mandel_q_ideal(const TthSpec& spec) {
    return 0.5 * spec.mean_total;
}

double entanglement_entropy(const PhotonProfile& profile) {
    double bits = 0.0;
    for (int n = 0; n <= profile.cutoff(); ++n) {
        const double w = profile.weight(n);
        if (w > 0.0) bits -= w * std::log2(w);
    }
    return bits;
}

JointDistribution tth_joint_ideal(const TthSpec& spec, int cutoff, double tail_tol) {
    check_tail_tol(tail_tol);
    const double mean = spec.mean_total;
    if (cutoff < 0) cutoff = auto_cutoff(StateKind::Tth, mean, tail_tol);
    JointDistribution joint(cutoff);
    if (mean == 0.0) {
        joint.at(0, 0) = 1.0;
        joint.tail_mass = 0.0;
        return joint;
    }
    const double log_head = -std::log1p(mean);
    const double log_step = std::log(mean) - std::log(2.0 * (1.0 + mean));
    for (int p = 0; p <= cutoff; ++p) {
        for (int q = 0; q <= cutoff; ++q) {
            joint.at(p, q) = std::exp(log_head + log_binomial(p + q, p) + (p + q) * log_step);
        }
    }
    joint.tail_mass = 1.0 - joint.sum();
    if (!tail_ok(joint.tail_mass, tail_tol)) {
        throw_tail("tth_joint_ideal", joint.tail_mass, tail_tol);
    }
    return joint;
}

double tth_correlation_ideal(const TthSpec& spec) {
    if (spec.mean_total == 0.0) {
        throw std::invalid_argument(
            "tth_correlation_ideal: correlation undefined at zero variance");
    }
    return spec.mean_total / (spec.mean_total + 2.0);
}

JointDistribution pnes_joint_ideal(const PhotonProfile& profile) {
    JointDistribution joint(profile.cutoff());
    for (int n = 0; n <= profile.cutoff(); ++n) {
        joint.at(n, n) = profile.weight(n);
    }
    joint.tail_mass = profile.tail_mass();
    return joint;
}

}  // namespace pncomm

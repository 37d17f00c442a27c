#include "pncomm/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pncomm {

namespace {

constexpr int kLogFactorialTableSize = 4097;

void check_series_config(const SeriesConfig& config) {
    if (!(config.rel_tol > 0)) {
        throw std::invalid_argument("SeriesConfig.rel_tol must be positive");
    }
    if (config.max_terms < 1) {
        throw std::invalid_argument("SeriesConfig.max_terms must be at least 1");
    }
}

/// Sums a positive-term series given the ratio t_{k+1}/t_k of consecutive
/// terms, starting from t_0 = 1. Returns ln of the sum. The running sum is
/// rescaled whenever it grows large, so the result is finite even when the
/// sum itself would overflow a double.
///
/// Termination: once the term ratio has dropped below 1 the remaining tail
/// is bounded by term * r / (1 - r); we stop when that bound is below
/// rel_tol * sum.
template <typename RatioFn>
double log_sum_unit_series(RatioFn ratio_of, const SeriesConfig& config,
                           const char* name) {
    double sum = 1.0;
    double term = 1.0;
    double log_scale = 0.0;
    for (int k = 0; k < config.max_terms; ++k) {
        const double r = ratio_of(k);
        term *= r;
        sum += term;
        if (r < 1.0) {
            const double tail_bound = term * r / (1.0 - r);
            if (tail_bound <= config.rel_tol * sum) {
                return log_scale + std::log(sum);
            }
        }
        if (sum > 1e280) {
            log_scale += std::log(sum);
            term /= sum;
            sum = 1.0;
        }
    }
    throw std::runtime_error(std::string(name) + " series did not converge within " +
                             std::to_string(config.max_terms) + " terms");
}

}  // namespace

double log_factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("log_factorial: n must be nonnegative");
    }
    // Compensated summation keeps the cumulative table accurate to a few ulp
    // across its whole range.
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactorialTableSize);
        t[0] = 0.0;
        double sum = 0.0;
        double comp = 0.0;
        for (int i = 1; i < kLogFactorialTableSize; ++i) {
            const double y = std::log(static_cast<double>(i)) - comp;
            const double next = sum + y;
            comp = (next - sum) - y;
            sum = next;
            t[i] = sum;
        }
        return t;
    }();
    if (n < kLogFactorialTableSize) {
        return table[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        throw std::invalid_argument("log_binomial: need 0 <= k <= n");
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double bessel_i(int order, double x, const SeriesConfig& config) {
    if (order < 0) {
        throw std::invalid_argument("bessel_i: order must be nonnegative");
    }
    if (!(x >= 0)) {
        throw std::invalid_argument("bessel_i: x must be nonnegative");
    }
    if (x == 0.0) {
        return order == 0 ? 1.0 : 0.0;
    }
    const double u = 0.25 * x * x;
    return std::exp(order * std::log(0.5 * x) + log_bessel_i_scaled(order, u, config));
}

double bessel_i_scaled(int order, double u, const SeriesConfig& config) {
    return std::exp(log_bessel_i_scaled(order, u, config));
}

double log_bessel_i_scaled(int order, double u, const SeriesConfig& config) {
    if (order < 0) {
        throw std::invalid_argument("bessel_i_scaled: order must be nonnegative");
    }
    if (!(u >= 0)) {
        throw std::invalid_argument("bessel_i_scaled: u must be nonnegative");
    }
    check_series_config(config);
    if (u == 0.0) {
        return -log_factorial(order);
    }
    const double log_leading = -log_factorial(order);
    const double d = static_cast<double>(order);
    const double log_rest = log_sum_unit_series(
        [u, d](int k) { return u / ((k + 1.0) * (k + 1.0 + d)); }, config,
        "bessel_i_scaled");
    return log_leading + log_rest;
}

double hyp2f1_equal(int upper, int denom, double z, const SeriesConfig& config) {
    return std::exp(log_hyp2f1_equal(upper, denom, z, config));
}

double log_hyp2f1_equal(int upper, int denom, double z, const SeriesConfig& config) {
    if (upper < 0 || denom < 0) {
        throw std::invalid_argument("hyp2f1_equal: parameters must be nonnegative");
    }
    if (!(z >= 0) || z >= 1.0) {
        throw std::invalid_argument("hyp2f1_equal: need 0 <= z < 1");
    }
    check_series_config(config);
    if (z == 0.0) {
        return 0.0;
    }
    const double a = upper + 1.0;
    const double c = denom + 1.0;
    return log_sum_unit_series(
        [a, c, z](int k) { return (a + k) * (a + k) * z / ((c + k) * (k + 1.0)); },
        config, "hyp2f1_equal");
}

}  // namespace pncomm

#ifndef PNCOMM_SPECIAL_FUNCTIONS_HPP
#define PNCOMM_SPECIAL_FUNCTIONS_HPP

namespace pncomm {

/// Controls truncation of the power series used for the special functions
/// below. A series stops once the bound on its remaining tail drops below
/// rel_tol times the accumulated sum; if that never happens within max_terms
/// terms, the evaluation throws std::runtime_error rather than returning a
/// silently inaccurate value.
struct SeriesConfig {
    double rel_tol = 1e-14;
    int max_terms = 10000;
};

/// ln(n!) for n >= 0. Uses a precomputed compensated-summation table for the
/// photon-number ranges that occur in practice and falls back to lgamma
/// beyond it.
double log_factorial(int n);

/// ln C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);

/// Modified Bessel function of the first kind I_order(x) for integer
/// order >= 0 and x >= 0, by direct power series.
double bessel_i(int order, double x, const SeriesConfig& config = {});

/// The Bessel series with its leading monomial stripped:
///
///   S_d(u) = sum_{k>=0} u^k / (k! (k+d)!)  =  I_d(2 sqrt(u)) / u^(d/2)
///
/// for integer d >= 0 and u >= 0. Unlike I_d itself, S_d is a plain power
/// series in u, so it composes with integer-exponent prefactors without ever
/// forming a fractional power of a possibly tiny number.
double bessel_i_scaled(int order, double u, const SeriesConfig& config = {});

/// ln S_d(u); safe even where S_d(u) would overflow or the leading term
/// 1/d! underflows.
double log_bessel_i_scaled(int order, double u, const SeriesConfig& config = {});

/// Gauss hypergeometric function with equal upper parameters,
///
///   2F1(upper + 1, upper + 1; denom + 1; z)
///
/// for integer upper >= 0, integer denom >= 0 and 0 <= z < 1.
double hyp2f1_equal(int upper, int denom, double z, const SeriesConfig& config = {});

/// ln of the above; safe where the value itself would overflow.
double log_hyp2f1_equal(int upper, int denom, double z, const SeriesConfig& config = {});

}  // namespace pncomm

#endif

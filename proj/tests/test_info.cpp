#include "pncomm/info.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "pncomm/loss.hpp"
#include "pncomm/states.hpp"

using namespace pncomm;

TEST_CASE("marginals of the two-mode thermal state are thermal") {
    // Each arm of a TTH state with total mean N is thermal with mean N/2,
    // so P(p) = (1/2)^(p+1) when N = 2.
    const JointDistribution joint = tth_joint_ideal(TthSpec(2.0));
    const auto margs = marginals(joint);
    for (int p = 0; p <= 6; ++p) {
        const double expected = std::pow(0.5, p + 1);
        CHECK(margs.first[p] == doctest::Approx(expected).epsilon(1e-10));
        CHECK(margs.second[p] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("moments of ideal pair-correlated states") {
    // TWB at x = 0.5: each arm is thermal with mean x^2/(1-x^2) = 1/3 and
    // variance m(1+m) = 4/9; perfect number correlation makes cov = var.
    {
        const JointDistribution joint =
            pnes_joint_ideal(twb_coefficients(0.5));
        // Moments come from the truncated matrix (tail 1e-12), which biases
        // mean and variance by O(cutoff * tail); allow for that.
        const Moments m = moments(joint);
        CHECK(m.mean1 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(m.mean2 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
        CHECK(m.var1 == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
        CHECK(m.cov == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
        CHECK(correlation_index(m) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // TMC at lambda = 1: per-mode mean is half the 30-digit total
    // 1.39554931592801604... and the variance follows from the sub-Poissonian
    // Mandel parameter Q = -0.264647231241696.
    {
        const PhotonProfile profile = tmc_coefficients(1.0);
        const JointDistribution joint = pnes_joint_ideal(profile);
        const Moments m = moments(joint);
        const double mean = 0.69777465796400802;
        const double q = mandel_q_ideal(profile);
        CHECK(m.mean1 == doctest::Approx(mean).epsilon(1e-12));
        CHECK(m.var1 == doctest::Approx(mean * (1.0 + q)).epsilon(1e-10));
        CHECK(correlation_index(m) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("moments agree with the marginals") {
    const JointDistribution joint = joint_twb(0.5, ChannelParams(0.8, 0.55));
    const Moments m = moments(joint);
    const auto margs = marginals(joint);
    double mean1 = 0.0;
    double mean2 = 0.0;
    for (std::size_t n = 0; n < margs.first.size(); ++n) {
        mean1 += static_cast<double>(n) * margs.first[n];
        mean2 += static_cast<double>(n) * margs.second[n];
    }
    CHECK(m.mean1 == doctest::Approx(mean1).epsilon(1e-13));
    CHECK(m.mean2 == doctest::Approx(mean2).epsilon(1e-13));
}

TEST_CASE("thinning a deterministic pair decorrelates the arms") {
    // A single photon pair sent through (eta1, eta2) yields independent
    // Bernoulli counts, so the Pearson index is exactly zero.
    JointDistribution pair(1);
    pair.at(1, 1) = 1.0;
    const Moments m = moments(thinning_oracle(pair, ChannelParams(0.8, 0.3)));
    CHECK(m.mean1 == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(m.mean2 == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(m.var1 == doctest::Approx(0.16).epsilon(1e-13));
    CHECK(std::abs(correlation_index(m)) <= 1e-14);
}

TEST_CASE("correlation_index rejects degenerate distributions") {
    JointDistribution point(2);
    point.at(1, 1) = 1.0;
    CHECK_THROWS_AS(correlation_index(moments(point)), std::invalid_argument);
}

TEST_CASE("mandel_q on hand-computable vectors") {
    // {1/4, 1/2, 1/4}: mean 1, var 1/2 -> Q = -1/2
    CHECK(mandel_q({0.25, 0.5, 0.25}) == doctest::Approx(-0.5).epsilon(1e-14));
    // Two-point {1/2 at 0, 1/2 at 2}: mean 1, var 1 -> Q = 0
    CHECK(mandel_q({0.5, 0.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-14));
    // Truncated Poisson with mean 2 is Poissonian to truncation error
    std::vector<double> poisson(41);
    double w = std::exp(-2.0);
    for (int n = 0; n <= 40; ++n) {
        poisson[n] = w;
        w *= 2.0 / (n + 1);
    }
    CHECK(std::abs(mandel_q(poisson)) <= 1e-8);
    CHECK_THROWS_AS(mandel_q({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("symbol table validation") {
    CHECK_THROWS_AS(SymbolTable(1, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SymbolTable(2, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SymbolTable(2, {0.5, 0.6, -0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SymbolTable(2, {0.3, 0.3, 0.3, 0.3}), std::invalid_argument);
    const SymbolTable ok(2, {0.4, 0.1, 0.1, 0.4});
    CHECK(ok(0, 1) == 0.1);
}

TEST_CASE("mutual information reference values") {
    // Independent symbols carry nothing
    CHECK(mutual_information(SymbolTable(2, {0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(0.0).epsilon(1e-15));
    // A noiseless uniform binary channel carries exactly one bit
    CHECK(mutual_information(SymbolTable(2, {0.5, 0.0, 0.0, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // Binary symmetric channel with flip probability 0.2:
    // I = 1 - H2(0.2) = 0.278071905112638
    CHECK(mutual_information(SymbolTable(2, {0.4, 0.1, 0.1, 0.4})) ==
          doctest::Approx(0.2780719051126377).epsilon(1e-13));
    // A constant input or constant output carries nothing
    CHECK(mutual_information(SymbolTable(2, {0.5, 0.5, 0.0, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mutual_information(SymbolTable(2, {0.5, 0.0, 0.5, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mutual information properties") {
    const std::vector<double> probs = {0.20, 0.05, 0.03, 0.02, 0.24, 0.06,
                                       0.01, 0.07, 0.32};
    const double mi = mutual_information(SymbolTable(3, probs));
    CHECK(mi >= 0.0);
    CHECK(mi <= std::log2(3.0));
    // Swapping two output letters everywhere leaves I unchanged
    std::vector<double> swapped = probs;
    for (int i = 0; i < 3; ++i) std::swap(swapped[i * 3 + 0], swapped[i * 3 + 2]);
    CHECK(mutual_information(SymbolTable(3, swapped)) ==
          doctest::Approx(mi).epsilon(1e-14));
    // Transposing (relabeling sender/receiver) also leaves I unchanged
    std::vector<double> transposed(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) transposed[j * 3 + i] = probs[i * 3 + j];
    CHECK(mutual_information(SymbolTable(3, transposed)) ==
          doctest::Approx(mi).epsilon(1e-14));
    // The unchecked kernel is the same computation
    CHECK(detail::mutual_information_unchecked(probs.data(), 3) ==
          doctest::Approx(mi).epsilon(1e-15));
}

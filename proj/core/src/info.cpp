#include "pncomm/info.hpp"

#include <cmath>
#include <stdexcept>

namespace pncomm {

SymbolTable::SymbolTable(int alphabet_, std::vector<double> probs_)
    : alphabet(alphabet_), probs(std::move(probs_)) {
    if (alphabet < 2) {
        throw std::invalid_argument("SymbolTable: alphabet must be at least 2");
    }
    if (probs.size() != static_cast<std::size_t>(alphabet) * alphabet) {
        throw std::invalid_argument("SymbolTable: need alphabet^2 entries");
    }
    double sum = 0.0;
    for (double v : probs) {
        if (!(v >= 0)) {
            throw std::invalid_argument("SymbolTable: entries must be nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("SymbolTable: entries must sum to 1 within 1e-9");
    }
}

std::pair<std::vector<double>, std::vector<double>> marginals(
    const JointDistribution& joint) {
    const int dim = joint.dim();
    std::vector<double> first(dim, 0.0), second(dim, 0.0);
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            const double v = joint(p, q);
            first[p] += v;
            second[q] += v;
        }
    }
    return {first, second};
}

Moments moments(const JointDistribution& joint) {
    // Moments of the stored truncated distribution as-is; no renormalization
    // by the (certified tiny) missing mass.
    const int dim = joint.dim();
    double m1 = 0.0, m2 = 0.0, s1 = 0.0, s2 = 0.0, cross = 0.0;
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            const double v = joint(p, q);
            m1 += v * p;
            m2 += v * q;
            s1 += v * p * p;
            s2 += v * q * q;
            cross += v * p * q;
        }
    }
    Moments m;
    m.mean1 = m1;
    m.mean2 = m2;
    m.var1 = s1 - m1 * m1;
    m.var2 = s2 - m2 * m2;
    m.cov = cross - m1 * m2;
    return m;
}

double correlation_index(const Moments& m) {
    if (!(m.var1 > 0) || !(m.var2 > 0)) {
        throw std::invalid_argument("correlation_index: undefined at zero variance");
    }
    return m.cov / std::sqrt(m.var1 * m.var2);
}

double mandel_q(const std::vector<double>& distribution) {
    double mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < distribution.size(); ++n) {
        if (!(distribution[n] >= 0)) {
            throw std::invalid_argument("mandel_q: weights must be nonnegative");
        }
        mean += distribution[n] * n;
        second += distribution[n] * n * n;
    }
    if (!(mean > 0)) {
        throw std::invalid_argument("mandel_q: undefined at zero mean");
    }
    const double var = second - mean * mean;
    return var / mean - 1.0;
}

namespace detail {

double mutual_information_unchecked(const double* probs, int alphabet) {
    // Row and column marginals, then sum p log2(p / (r c)) over positive
    // entries; zero rows/columns only ever multiply zero entries.
    double row[64], col[64];
    std::vector<double> row_big, col_big;
    double* r = row;
    double* c = col;
    if (alphabet > 64) {
        row_big.assign(alphabet, 0.0);
        col_big.assign(alphabet, 0.0);
        r = row_big.data();
        c = col_big.data();
    }
    for (int i = 0; i < alphabet; ++i) r[i] = c[i] = 0.0;
    for (int i = 0; i < alphabet; ++i) {
        for (int j = 0; j < alphabet; ++j) {
            const double v = probs[i * alphabet + j];
            r[i] += v;
            c[j] += v;
        }
    }
    double bits = 0.0;
    for (int i = 0; i < alphabet; ++i) {
        for (int j = 0; j < alphabet; ++j) {
            const double v = probs[i * alphabet + j];
            if (v > 0.0) bits += v * std::log2(v / (r[i] * c[j]));
        }
    }
    return bits;
}

}  // namespace detail

double mutual_information(const SymbolTable& table) {
    return detail::mutual_information_unchecked(table.probs.data(), table.alphabet);
}

}  // namespace pncomm

#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "pncomm/info.hpp"
#include "pncomm/loss.hpp"
#include "pncomm/protocol.hpp"

namespace pncomm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

/// All floating-point output is serialized to 12 significant digits so runs
/// are byte-identical across platforms with a conforming printf.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// JSON numbers carry the same 12-digit rounding as the CSV text.
double rounded(double v) {
    return std::strtod(fmt(v).c_str(), nullptr);
}

const char* kind_name(StateKind kind) {
    switch (kind) {
        case StateKind::Tmc:
            return "tmc";
        case StateKind::Twb:
            return "twb";
        case StateKind::Tth:
            return "tth";
    }
    return "?";
}

const char* convention_name(MeanConvention convention) {
    return convention == MeanConvention::Total ? "total" : "per-mode";
}

double parameter_for(StateKind kind, double mean_total) {
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

/// Historical comparison point: a single threshold parked at the mean count
/// of the received first mode.
std::pair<int, double> mean_threshold_point(const JointDistribution& joint) {
    const Moments m = moments(joint);
    int t = static_cast<int>(std::floor(m.mean1));
    t = std::max(0, std::min(t, joint.cutoff - 1));
    const double bits = mutual_information(symbol_table(joint, ThresholdSet({t})));
    return {t, bits};
}

void write_sweep_csv_header(std::ostream& out, int alphabet) {
    out << "N,eta,eta1,eta2,capacity_bits";
    for (int i = 1; i < alphabet; ++i) out << ",T" << i;
    out << "\n";
}

void write_sweep_csv_row(std::ostream& out, const SweepRow& row) {
    out << fmt(row.mean_total) << ',' << fmt(row.eta_overall) << ',' << fmt(row.eta1)
        << ',' << fmt(row.eta2) << ',' << fmt(row.result.capacity_bits);
    for (int t : row.result.thresholds) out << ',' << t;
    out << "\n";
}

ordered_json sweep_row_json(const SweepRow& row, int alphabet) {
    ordered_json j;
    j["mean_total"] = rounded(row.mean_total);
    j["parameter"] = rounded(row.parameter);
    j["eta"] = rounded(row.eta_overall);
    j["eta1"] = rounded(row.eta1);
    j["eta2"] = rounded(row.eta2);
    j["capacity_bits"] = rounded(row.result.capacity_bits);
    j["thresholds"] = row.result.thresholds;
    j["n_evaluated"] = row.result.n_evaluated;
    if (alphabet == 2 && row.mean_threshold >= 0) {
        j["mean_threshold"] = row.mean_threshold;
        j["mean_threshold_bits"] = rounded(row.mean_threshold_bits);
    }
    return j;
}

void emit_json(std::ostream& out, const ordered_json& j) {
    out << j.dump(2) << "\n";
}

int cmd_state_info(const RunConfig& config, std::ostream& out) {
    const double mean_total = resolved_mean_total(config);
    const double parameter = parameter_for(config.kind, mean_total);
    const int cutoff = auto_cutoff(config.kind, parameter, config.tail_tol);

    double tail = 0.0;
    double mandel = 0.0;
    bool has_entropy = false;
    double entropy = 0.0;
    bool has_correlation = mean_total > 0.0;
    double correlation = 1.0;
    if (config.kind == StateKind::Tth) {
        const TthSpec spec(mean_total);
        tail = tth_joint_ideal(spec, cutoff, config.tail_tol).tail_mass;
        mandel = mandel_q_ideal(spec);
        if (has_correlation) correlation = tth_correlation_ideal(spec);
    } else {
        const PhotonProfile profile =
            config.kind == StateKind::Tmc
                ? tmc_coefficients(parameter, cutoff, config.tail_tol)
                : twb_coefficients(parameter, cutoff, config.tail_tol);
        tail = profile.tail_mass();
        mandel = mandel_q_ideal(profile);
        has_entropy = true;
        entropy = entanglement_entropy(profile);
        // An ideal PNES has perfectly correlated photon numbers.
        correlation = 1.0;
    }

    if (config.format == OutputFormat::Csv) {
        out << "kind,convention,mean_total,mean_per_mode,parameter,cutoff,tail_mass,"
               "mandel_q,correlation,entropy_bits\n";
        out << kind_name(config.kind) << ',' << convention_name(config.convention) << ','
            << fmt(mean_total) << ',' << fmt(0.5 * mean_total) << ',' << fmt(parameter)
            << ',' << cutoff << ',' << fmt(tail) << ',' << fmt(mandel) << ','
            << (has_correlation ? fmt(correlation) : std::string()) << ','
            << (has_entropy ? fmt(entropy) : std::string()) << "\n";
    } else {
        ordered_json j;
        j["command"] = "state-info";
        j["kind"] = kind_name(config.kind);
        j["mean_convention"] = convention_name(config.convention);
        j["mean_input"] = rounded(config.mean);
        j["mean_total"] = rounded(mean_total);
        j["mean_per_mode"] = rounded(0.5 * mean_total);
        j["parameter"] = rounded(parameter);
        j["cutoff"] = cutoff;
        j["tail_mass"] = rounded(tail);
        j["mandel_q"] = rounded(mandel);
        if (has_correlation) {
            j["correlation"] = rounded(correlation);
        } else {
            j["correlation"] = nullptr;
        }
        if (has_entropy) {
            j["entropy_bits"] = rounded(entropy);
        } else {
            j["entropy_bits"] = nullptr;
        }
        emit_json(out, j);
    }
    return 0;
}

int cmd_joint_dist(const RunConfig& config, std::ostream& out) {
    const double mean_total = resolved_mean_total(config);
    const double parameter = parameter_for(config.kind, mean_total);
    const ChannelParams channel(config.eta1, config.eta2);
    const JointDistribution joint =
        lossy_joint(config.kind, parameter, channel, -1, config.tail_tol);

    if (config.format == OutputFormat::Csv) {
        for (int p = 0; p < joint.dim(); ++p) {
            for (int q = 0; q < joint.dim(); ++q) {
                if (q) out << ',';
                out << fmt(joint(p, q));
            }
            out << "\n";
        }
    } else {
        ordered_json j;
        j["command"] = "joint-dist";
        j["kind"] = kind_name(config.kind);
        j["mean_total"] = rounded(mean_total);
        j["parameter"] = rounded(parameter);
        j["eta1"] = rounded(config.eta1);
        j["eta2"] = rounded(config.eta2);
        j["cutoff"] = joint.cutoff;
        j["tail_mass"] = rounded(joint.tail_mass);
        ordered_json rows = ordered_json::array();
        for (int p = 0; p < joint.dim(); ++p) {
            ordered_json r = ordered_json::array();
            for (int q = 0; q < joint.dim(); ++q) r.push_back(rounded(joint(p, q)));
            rows.push_back(std::move(r));
        }
        j["probs"] = std::move(rows);
        emit_json(out, j);
    }
    return 0;
}

int cmd_capacity(const RunConfig& config, std::ostream& out) {
    const double mean_total = resolved_mean_total(config);
    const double parameter = parameter_for(config.kind, mean_total);
    const ChannelParams channel(config.eta1, config.eta2);
    const JointDistribution joint =
        lossy_joint(config.kind, parameter, channel, -1, config.tail_tol);

    SweepRow row;
    row.mean_total = mean_total;
    row.parameter = parameter;
    row.eta_overall = config.eta1 == config.eta2
                          ? config.eta1
                          : std::sqrt(config.eta1 * config.eta2);
    row.eta1 = config.eta1;
    row.eta2 = config.eta2;
    row.result = capacity(joint, config.alphabet);
    if (config.alphabet == 2) {
        std::tie(row.mean_threshold, row.mean_threshold_bits) = mean_threshold_point(joint);
    }

    if (config.format == OutputFormat::Csv) {
        write_sweep_csv_header(out, config.alphabet);
        write_sweep_csv_row(out, row);
    } else {
        ordered_json j;
        j["command"] = "capacity";
        j["kind"] = kind_name(config.kind);
        j["mean_convention"] = convention_name(config.convention);
        j["alphabet"] = config.alphabet;
        j["cutoff"] = joint.cutoff;
        j["tail_mass"] = rounded(joint.tail_mass);
        ordered_json r = sweep_row_json(row, config.alphabet);
        const SymbolTable table =
            symbol_table(joint, ThresholdSet(row.result.thresholds));
        ordered_json tj = ordered_json::array();
        for (int i = 0; i < table.alphabet; ++i) {
            ordered_json line = ordered_json::array();
            for (int k = 0; k < table.alphabet; ++k) line.push_back(rounded(table(i, k)));
            tj.push_back(std::move(line));
        }
        r["symbol_table"] = std::move(tj);
        j["row"] = std::move(r);
        emit_json(out, j);
    }
    return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    if (config.mean_grid.empty() || config.eta_grid.empty()) {
        throw std::invalid_argument("sweep: --mean-grid and --eta-grid must be nonempty");
    }
    std::vector<double> totals = config.mean_grid;
    if (config.convention == MeanConvention::PerMode) {
        for (double& v : totals) v *= 2.0;
    }
    const std::vector<SweepRow> rows =
        capacity_sweep(config.kind, totals, config.eta_grid, config.alphabet,
                       config.tail_tol);

    if (config.format == OutputFormat::Csv) {
        write_sweep_csv_header(out, config.alphabet);
        for (const SweepRow& row : rows) write_sweep_csv_row(out, row);
    } else {
        ordered_json j;
        j["command"] = "sweep";
        j["kind"] = kind_name(config.kind);
        j["mean_convention"] = convention_name(config.convention);
        j["alphabet"] = config.alphabet;
        j["tail_tol"] = rounded(config.tail_tol);
        ordered_json arr = ordered_json::array();
        for (const SweepRow& row : rows) arr.push_back(sweep_row_json(row, config.alphabet));
        j["rows"] = std::move(arr);
        emit_json(out, j);
    }
    return 0;
}

int cmd_asym_sweep(const RunConfig& config, std::ostream& out) {
    const double mean_total = resolved_mean_total(config);
    const double eta = config.eta_overall;
    if (!(eta > 0) || eta > 1.0) {
        throw std::invalid_argument("asym-sweep: --eta must lie in (0, 1]");
    }
    std::vector<double> grid = config.eta1_grid;
    if (grid.empty()) {
        // Default: 17 evenly spaced arm-1 transmissivities across the full
        // asymmetry range at this overall loss.
        const double lo = eta * eta;
        for (int i = 0; i <= 16; ++i) {
            grid.push_back(std::min(1.0, lo + (1.0 - lo) * i / 16.0));
        }
    }
    const std::vector<SweepRow> rows =
        asymmetry_sweep(config.kind, mean_total, eta, grid, config.tail_tol);

    if (config.format == OutputFormat::Csv) {
        write_sweep_csv_header(out, 2);
        for (const SweepRow& row : rows) write_sweep_csv_row(out, row);
    } else {
        ordered_json j;
        j["command"] = "asym-sweep";
        j["kind"] = kind_name(config.kind);
        j["mean_convention"] = convention_name(config.convention);
        j["mean_total"] = rounded(mean_total);
        j["eta"] = rounded(eta);
        j["tail_tol"] = rounded(config.tail_tol);
        ordered_json arr = ordered_json::array();
        for (const SweepRow& row : rows) arr.push_back(sweep_row_json(row, 2));
        j["rows"] = std::move(arr);
        emit_json(out, j);
    }
    return 0;
}

int cmd_curvature(const RunConfig& config, std::ostream& out) {
    const double mean_total = resolved_mean_total(config);
    const double parameter = parameter_for(config.kind, mean_total);
    if (config.curvature_n_max < 0) {
        throw std::invalid_argument("curvature: --n-max must be nonnegative");
    }

    std::vector<CurvatureEstimate> rows;
    for (int n = 0; n <= config.curvature_n_max; ++n) {
        rows.push_back(coincidence_curvature(config.kind, parameter, config.eta_overall,
                                             n, config.curvature_delta));
    }

    if (config.format == OutputFormat::Csv) {
        out << "n,delta,coefficient,halved_step_estimate,step_stable\n";
        for (int n = 0; n <= config.curvature_n_max; ++n) {
            const CurvatureEstimate& e = rows[n];
            out << n << ',' << fmt(config.curvature_delta) << ',' << fmt(e.coefficient)
                << ',' << fmt(e.halved_step_estimate) << ',' << (e.step_stable ? 1 : 0)
                << "\n";
        }
    } else {
        ordered_json j;
        j["command"] = "curvature";
        j["kind"] = kind_name(config.kind);
        j["mean_total"] = rounded(mean_total);
        j["parameter"] = rounded(parameter);
        j["eta"] = rounded(config.eta_overall);
        j["delta"] = rounded(config.curvature_delta);
        ordered_json arr = ordered_json::array();
        for (int n = 0; n <= config.curvature_n_max; ++n) {
            ordered_json r;
            r["n"] = n;
            r["coefficient"] = rounded(rows[n].coefficient);
            r["halved_step_estimate"] = rounded(rows[n].halved_step_estimate);
            r["step_stable"] = rows[n].step_stable;
            arr.push_back(std::move(r));
        }
        j["rows"] = std::move(arr);
        emit_json(out, j);
    }
    return 0;
}

struct VerifyCheck {
    const char* name;
    double max_deviation = 0.0;
    double tolerance = 0.0;

    bool pass() const { return max_deviation <= tolerance; }
};

int cmd_verify(const RunConfig& config, std::ostream& out) {
    std::vector<double> means;
    std::vector<std::pair<double, double>> eta_pairs;
    if (config.verify_grid == "quick") {
        means = {1.0, 5.0};
        eta_pairs = {{0.85, 0.85}, {0.85, 1.0}, {1.0, 1.0}, {0.6, 0.95}};
    } else if (config.verify_grid == "default") {
        means = {1.0, 5.0, 10.0};
        const std::vector<double> etas = {0.6, 0.85, 0.95, 1.0};
        for (double a : etas) {
            for (double b : etas) eta_pairs.emplace_back(a, b);
        }
    } else {
        throw std::invalid_argument("verify: --grid must be 'default' or 'quick'");
    }

    VerifyCheck oracle{"closed-form vs thinning oracle", 0.0, 1e-10};
    VerifyCheck norm{"normalization", 0.0, config.tail_tol + 1e-9};
    VerifyCheck corr{"correlation closed form vs moments", 0.0, 1e-8};
    VerifyCheck mandel{"Mandel Q rescaling", 0.0, 1e-8};

    for (StateKind kind : {StateKind::Tmc, StateKind::Twb, StateKind::Tth}) {
        for (double mean : means) {
            const double parameter = parameter_for(kind, mean);
            const double q_ideal =
                kind == StateKind::Tth
                    ? mandel_q_ideal(TthSpec(mean))
                    : mandel_q_ideal(kind == StateKind::Tmc
                                         ? tmc_coefficients(parameter, -1, config.tail_tol)
                                         : twb_coefficients(parameter, -1, config.tail_tol));
            for (const auto& [eta1, eta2] : eta_pairs) {
                const ChannelParams channel(eta1, eta2);
                const JointDistribution joint =
                    lossy_joint(kind, parameter, channel, -1, config.tail_tol);
                const JointDistribution ideal =
                    ideal_joint(kind, parameter, joint.cutoff, config.tail_tol);
                const JointDistribution thinned = thinning_oracle(ideal, channel);
                for (int p = 0; p < joint.dim(); ++p) {
                    for (int q = 0; q < joint.dim(); ++q) {
                        oracle.max_deviation = std::max(
                            oracle.max_deviation, std::abs(joint(p, q) - thinned(p, q)));
                    }
                }
                norm.max_deviation =
                    std::max(norm.max_deviation, std::abs(1.0 - joint.sum()));
                corr.max_deviation = std::max(
                    corr.max_deviation,
                    std::abs(correlation_after_loss(kind, parameter, channel) -
                             correlation_index(moments(joint))));
                const auto margs = marginals(joint);
                mandel.max_deviation =
                    std::max({mandel.max_deviation,
                              std::abs(mandel_q(margs.first) - eta1 * q_ideal),
                              std::abs(mandel_q(margs.second) - eta2 * q_ideal)});
            }
        }
    }

    const VerifyCheck checks[] = {oracle, norm, corr, mandel};
    bool all_pass = true;
    for (const VerifyCheck& c : checks) all_pass = all_pass && c.pass();

    if (config.format == OutputFormat::Json) {
        ordered_json j;
        j["command"] = "verify";
        j["grid"] = config.verify_grid;
        ordered_json arr = ordered_json::array();
        for (const VerifyCheck& c : checks) {
            ordered_json r;
            r["name"] = c.name;
            r["max_deviation"] = rounded(c.max_deviation);
            r["tolerance"] = rounded(c.tolerance);
            r["pass"] = c.pass();
            arr.push_back(std::move(r));
        }
        j["checks"] = std::move(arr);
        j["pass"] = all_pass;
        emit_json(out, j);
    } else {
        for (const VerifyCheck& c : checks) {
            out << "check " << c.name << ": max deviation " << fmt(c.max_deviation)
                << " (tolerance " << fmt(c.tolerance) << ") "
                << (c.pass() ? "PASS" : "FAIL") << "\n";
        }
        out << "verify: " << (all_pass ? "PASS" : "FAIL") << "\n";
    }
    return all_pass ? 0 : 2;
}

int dispatch(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
        case Command::StateInfo:
            return cmd_state_info(config, out);
        case Command::JointDist:
            return cmd_joint_dist(config, out);
        case Command::Capacity:
            return cmd_capacity(config, out);
        case Command::Sweep:
            return cmd_sweep(config, out);
        case Command::AsymSweep:
            return cmd_asym_sweep(config, out);
        case Command::Curvature:
            return cmd_curvature(config, out);
        case Command::Verify:
            return cmd_verify(config, out);
    }
    throw std::invalid_argument("unknown command");
}

}  // namespace

double resolved_mean_total(const RunConfig& config) {
    if (!(config.mean >= 0)) {
        throw std::invalid_argument("mean photon number must be nonnegative");
    }
    return config.convention == MeanConvention::PerMode ? 2.0 * config.mean : config.mean;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    if (!config.output_path.empty()) {
        std::ofstream file(config.output_path, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + config.output_path);
        }
        return dispatch(config, file);
    }
    return dispatch(config, out);
}

}  // namespace pncomm::cli

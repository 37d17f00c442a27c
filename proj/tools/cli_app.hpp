#ifndef PNCOMM_TOOLS_CLI_APP_HPP
#define PNCOMM_TOOLS_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pncomm/states.hpp"

namespace pncomm::cli {

enum class Command {
    StateInfo,
    JointDist,
    Capacity,
    Sweep,
    AsymSweep,
    Curvature,
    Verify,
};

/// Whether --mean values count photons over both modes or per mode.
enum class MeanConvention { Total, PerMode };

enum class OutputFormat { Csv, Json };

/// Fully resolved invocation; the command-line front end only fills this in.
struct RunConfig {
    Command command = Command::Verify;
    StateKind kind = StateKind::Twb;
    double mean = 1.0;
    MeanConvention convention = MeanConvention::Total;
    double eta1 = 1.0;
    double eta2 = 1.0;
    double eta_overall = 1.0;          // asym-sweep, curvature
    int alphabet = 2;
    std::vector<double> mean_grid;     // sweep
    std::vector<double> eta_grid;      // sweep
    std::vector<double> eta1_grid;     // asym-sweep; empty = auto linspace
    int curvature_n_max = 5;
    double curvature_delta = 1e-3;
    double tail_tol = kDefaultTailTol;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;           // empty = stdout
    std::string verify_grid = "default";
};

/// Executes one resolved invocation, writing the requested table to out (or
/// config.output_path) and diagnostics to err. Returns the process exit
/// status: 0 on success, 2 if `verify` found a violation. Configuration
/// errors surface as std::invalid_argument / std::runtime_error and are the
/// caller's to map (the command-line front end reports them as status 1).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Total mean photon number implied by config.mean and config.convention.
double resolved_mean_total(const RunConfig& config);

}  // namespace pncomm::cli

#endif

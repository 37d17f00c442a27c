#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli_app.hpp"

namespace {

using pncomm::StateKind;
using pncomm::cli::Command;
using pncomm::cli::MeanConvention;
using pncomm::cli::OutputFormat;
using pncomm::cli::RunConfig;

const std::map<std::string, StateKind> kKindMap{
    {"tmc", StateKind::Tmc}, {"twb", StateKind::Twb}, {"tth", StateKind::Tth}};
const std::map<std::string, MeanConvention> kConventionMap{
    {"total", MeanConvention::Total}, {"per-mode", MeanConvention::PerMode}};
const std::map<std::string, OutputFormat> kFormatMap{{"csv", OutputFormat::Csv},
                                                     {"json", OutputFormat::Json}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pncomm: decoding thresholds and capacities of lossy two-mode optical "
        "channels built on photon-number-correlated states"};
    app.require_subcommand(1);

    RunConfig config;

    auto add_output_options = [&](CLI::App* sub) {
        sub->add_option("--format", config.format, "Output format")
            ->transform(CLI::CheckedTransformer(kFormatMap, CLI::ignore_case))
            ->default_str("csv");
        sub->add_option("-o,--output", config.output_path,
                        "Write the table to this file instead of stdout");
        sub->add_option("--tail-tol", config.tail_tol,
                        "Truncation tail bound for automatic cutoffs")
            ->check(CLI::Range(1e-300, 1.0))
            ->default_str("1e-12");
    };
    auto add_state_options = [&](CLI::App* sub) {
        sub->add_option("--kind", config.kind, "State family")
            ->transform(CLI::CheckedTransformer(kKindMap, CLI::ignore_case))
            ->required();
        sub->add_option("--mean", config.mean, "Mean photon number")
            ->check(CLI::NonNegativeNumber)
            ->required();
        sub->add_option("--convention", config.convention,
                        "Whether --mean counts photons over both modes or per mode")
            ->transform(CLI::CheckedTransformer(kConventionMap, CLI::ignore_case))
            ->default_str("total");
    };
    auto add_channel_options = [&](CLI::App* sub) {
        sub->add_option("--eta1", config.eta1, "Transmissivity of arm 1")
            ->check(CLI::Range(0.0, 1.0))
            ->default_str("1");
        sub->add_option("--eta2", config.eta2, "Transmissivity of arm 2")
            ->check(CLI::Range(0.0, 1.0))
            ->default_str("1");
    };

    CLI::App* state_info =
        app.add_subcommand("state-info", "Photon statistics of the ideal state");
    add_state_options(state_info);
    add_output_options(state_info);

    CLI::App* joint_dist = app.add_subcommand(
        "joint-dist", "Joint photon-number distribution after the lossy channel");
    add_state_options(joint_dist);
    add_channel_options(joint_dist);
    add_output_options(joint_dist);

    CLI::App* capacity = app.add_subcommand(
        "capacity", "Optimized threshold-decoding capacity at one channel point");
    add_state_options(capacity);
    add_channel_options(capacity);
    capacity->add_option("--alphabet", config.alphabet, "Alphabet size M")
        ->check(CLI::Range(2, 64))
        ->default_str("2");
    add_output_options(capacity);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Capacity over a mean-photon-number x transmissivity grid");
    sweep->add_option("--kind", config.kind, "State family")
        ->transform(CLI::CheckedTransformer(kKindMap, CLI::ignore_case))
        ->required();
    sweep->add_option("--mean-grid", config.mean_grid, "Comma-separated mean photon numbers")
        ->delimiter(',')
        ->required();
    sweep->add_option("--eta-grid", config.eta_grid,
                      "Comma-separated symmetric transmissivities")
        ->delimiter(',')
        ->required();
    sweep->add_option("--convention", config.convention,
                      "Whether means count photons over both modes or per mode")
        ->transform(CLI::CheckedTransformer(kConventionMap, CLI::ignore_case))
        ->default_str("total");
    sweep->add_option("--alphabet", config.alphabet, "Alphabet size M")
        ->check(CLI::Range(2, 64))
        ->default_str("2");
    add_output_options(sweep);

    CLI::App* asym = app.add_subcommand(
        "asym-sweep",
        "Binary capacity across channel asymmetry at fixed overall transmissivity");
    add_state_options(asym);
    asym->add_option("--eta", config.eta_overall,
                     "Overall transmissivity sqrt(eta1 eta2)")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    asym->add_option("--eta1-grid", config.eta1_grid,
                     "Comma-separated eta1 values in [eta^2, 1]; default, an even "
                     "17-point grid")
        ->delimiter(',');
    add_output_options(asym);

    CLI::App* curvature = app.add_subcommand(
        "curvature",
        "Quadratic response of coincidence probabilities to channel asymmetry");
    add_state_options(curvature);
    curvature->add_option("--eta", config.eta_overall, "Overall transmissivity")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    curvature->add_option("--n-max", config.curvature_n_max,
                          "Largest diagonal element probed")
        ->check(CLI::Range(0, 1000))
        ->default_str("5");
    curvature->add_option("--delta", config.curvature_delta,
                          "Finite-difference step in eta1 - eta2")
        ->check(CLI::Range(0.0, 1.0))
        ->default_str("1e-3");
    add_output_options(curvature);

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check closed forms, normalization and moment formulas");
    verify->add_option("--grid", config.verify_grid, "Check grid: default or quick")
        ->check(CLI::IsMember({"default", "quick"}))
        ->default_str("default");
    add_output_options(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(state_info)) {
        config.command = Command::StateInfo;
    } else if (app.got_subcommand(joint_dist)) {
        config.command = Command::JointDist;
    } else if (app.got_subcommand(capacity)) {
        config.command = Command::Capacity;
    } else if (app.got_subcommand(sweep)) {
        config.command = Command::Sweep;
    } else if (app.got_subcommand(asym)) {
        config.command = Command::AsymSweep;
    } else if (app.got_subcommand(curvature)) {
        config.command = Command::Curvature;
    } else {
        config.command = Command::Verify;
    }

    try {
        return pncomm::cli::run(config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

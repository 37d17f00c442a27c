#include "cli_app.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

using namespace pncomm;
using namespace pncomm::cli;
using nlohmann::json;

namespace {

struct RunOutput {
    int status = 0;
    std::string out;
    std::string err;
};

RunOutput invoke(const RunConfig& config) {
    std::ostringstream out;
    std::ostringstream err;
    RunOutput r;
    r.status = run(config, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) result.push_back(line);
    return result;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

TEST_CASE("mean convention resolution") {
    RunConfig config;
    config.mean = 5.0;
    config.convention = MeanConvention::PerMode;
    CHECK(resolved_mean_total(config) == 10.0);
    config.convention = MeanConvention::Total;
    CHECK(resolved_mean_total(config) == 5.0);
}

TEST_CASE("state-info CSV schema") {
    RunConfig config;
    config.command = Command::StateInfo;
    config.kind = StateKind::Tmc;
    config.mean = 1.0;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] ==
          "kind,convention,mean_total,mean_per_mode,parameter,cutoff,tail_mass,"
          "mandel_q,correlation,entropy_bits");
    const auto fields = split_csv(rows[1]);
    REQUIRE(fields.size() == 10);
    CHECK(fields[0] == "tmc");
    CHECK(fields[1] == "total");
    CHECK(fields[2] == "1");
    CHECK(fields[3] == "0.5");
    CHECK(fields[7].front() == '-');  // sub-Poissonian
    CHECK(fields[8] == "1");          // ideal correlation
    CHECK(!fields[9].empty());        // PNES reports entanglement entropy
}

TEST_CASE("state-info JSON for the thermal family") {
    RunConfig config;
    config.command = Command::StateInfo;
    config.kind = StateKind::Tth;
    config.mean = 2.0;
    config.format = OutputFormat::Json;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "tth");
    CHECK(j["mean_total"] == 2.0);
    CHECK(j["parameter"] == 2.0);
    CHECK(j["correlation"] == 0.5);  // N / (N + 2)
    CHECK(j["entropy_bits"].is_null());
    CHECK(j["mandel_q"] == 1.0);     // N / 2
}

TEST_CASE("joint-dist CSV is a plain square matrix") {
    RunConfig config;
    config.command = Command::JointDist;
    config.kind = StateKind::Tth;
    config.mean = 2.0;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(!rows.empty());
    const auto first = split_csv(rows[0]);
    CHECK(rows.size() == first.size());  // square
    CHECK(first[0] == "0.333333333333");
    // Symmetric state: entry (0,1) equals entry (1,0)
    CHECK(split_csv(rows[1])[0] == first[1]);
}

TEST_CASE("capacity JSON carries the symbol table and thresholds") {
    RunConfig config;
    config.command = Command::Capacity;
    config.kind = StateKind::Twb;
    config.mean = 10.0;
    config.format = OutputFormat::Json;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"] == "capacity");
    CHECK(j["alphabet"] == 2);
    const json& row = j["row"];
    // Lossless twin beam at mean 10: the optimal split is near even, so the
    // binary capacity is almost a full bit.
    CHECK(row["capacity_bits"].get<double>() >= 0.98);
    CHECK(row["thresholds"].size() == 1);
    CHECK(row["mean_threshold"].is_number_integer());
    CHECK(row["mean_threshold_bits"].get<double>() <=
          row["capacity_bits"].get<double>() + 1e-12);
    const json& table = row["symbol_table"];
    REQUIRE(table.size() == 2);
    double total = 0.0;
    for (const auto& line : table) {
        for (const auto& cell : line) total += cell.get<double>();
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sweep CSV schema is stable") {
    RunConfig config;
    config.command = Command::Sweep;
    config.kind = StateKind::Twb;
    config.mean_grid = {1.0, 2.0};
    config.eta_grid = {0.9, 1.0};
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "N,eta,eta1,eta2,capacity_bits,T1");
    // Lossless unit-mean twin beam: H2(1/3) to 12 significant digits
    CHECK(rows[2] == "1,1,1,1,0.918295834054,0");
    // eta varies fastest
    CHECK(split_csv(rows[1])[1] == "0.9");
    CHECK(split_csv(rows[3])[0] == "2");
}

TEST_CASE("quaternary sweep emits three threshold columns") {
    RunConfig config;
    config.command = Command::Sweep;
    config.kind = StateKind::Twb;
    config.alphabet = 4;
    config.mean_grid = {5.0};
    config.eta_grid = {1.0};
    const RunOutput r = invoke(config);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "N,eta,eta1,eta2,capacity_bits,T1,T2,T3");
    CHECK(split_csv(rows[1]).size() == 8);
}

TEST_CASE("per-mode means are twice the total convention") {
    RunConfig total;
    total.command = Command::Sweep;
    total.kind = StateKind::Tmc;
    total.mean_grid = {10.0};
    total.eta_grid = {0.9};
    RunConfig per_mode = total;
    per_mode.convention = MeanConvention::PerMode;
    per_mode.mean_grid = {5.0};
    CHECK(invoke(total).out == invoke(per_mode).out);
}

TEST_CASE("repeated runs are byte-identical") {
    RunConfig config;
    config.command = Command::Sweep;
    config.kind = StateKind::Tth;
    config.mean_grid = {1.0, 5.0};
    config.eta_grid = {0.7, 1.0};
    config.format = OutputFormat::Json;
    const RunOutput a = invoke(config);
    const RunOutput b = invoke(config);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("output file receives exactly the stdout bytes") {
    RunConfig config;
    config.command = Command::Capacity;
    config.kind = StateKind::Twb;
    config.mean = 2.0;
    config.eta1 = 0.8;
    config.eta2 = 0.8;
    const RunOutput direct = invoke(config);

    const std::string path = "pncomm_test_cli_output.csv";
    RunConfig to_file = config;
    to_file.output_path = path;
    const RunOutput via_file = invoke(to_file);
    CHECK(via_file.status == 0);
    CHECK(via_file.out.empty());
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream content;
    content << in.rdbuf();
    in.close();
    std::remove(path.c_str());
    CHECK(content.str() == direct.out);
}

TEST_CASE("asym-sweep default grid spans the asymmetry range") {
    RunConfig config;
    config.command = Command::AsymSweep;
    config.kind = StateKind::Twb;
    config.mean = 5.0;
    config.eta_overall = 0.8;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 18);  // header + 17 grid points
    CHECK(rows[0] == "N,eta,eta1,eta2,capacity_bits,T1");
    const auto first = split_csv(rows[1]);
    const auto last = split_csv(rows[17]);
    CHECK(first[1] == "0.8");
    CHECK(first[2] == "0.64");
    CHECK(first[3] == "1");
    CHECK(last[2] == "1");
    CHECK(last[3] == "0.64");
}

TEST_CASE("curvature CSV layout") {
    RunConfig config;
    config.command = Command::Curvature;
    config.kind = StateKind::Twb;
    config.mean = 5.0;
    config.eta_overall = 0.8;
    config.curvature_n_max = 2;
    const RunOutput r = invoke(config);
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "n,delta,coefficient,halved_step_estimate,step_stable");
    for (int n = 1; n <= 3; ++n) {
        const auto fields = split_csv(rows[n]);
        REQUIRE(fields.size() == 5);
        CHECK(fields[0] == std::to_string(n - 1));
        CHECK(fields[1] == "0.001");
        CHECK(fields[2].front() == '-');  // coincidences peak at symmetry
        CHECK(fields[4] == "1");
    }
}

TEST_CASE("verify reports the known correlation defect honestly") {
    RunConfig config;
    config.command = Command::Verify;
    config.verify_grid = "quick";
    config.format = OutputFormat::Json;
    const RunOutput r = invoke(config);
    // The sub-Poissonian family breaks the loss-independent correlation
    // claim, so verify must flag it and exit 2.
    CHECK(r.status == 2);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == false);
    REQUIRE(j["checks"].size() == 4);
    CHECK(j["checks"][0]["name"] == "closed-form vs thinning oracle");
    CHECK(j["checks"][0]["pass"] == true);
    CHECK(j["checks"][1]["pass"] == true);   // normalization
    CHECK(j["checks"][2]["pass"] == false);  // correlation closed form
    CHECK(j["checks"][2]["max_deviation"].get<double>() > 0.01);
    CHECK(j["checks"][3]["pass"] == true);   // Mandel rescaling
}

TEST_CASE("verify text output lists one line per check") {
    RunConfig config;
    config.command = Command::Verify;
    config.verify_grid = "quick";
    const RunOutput r = invoke(config);
    CHECK(r.status == 2);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].rfind("check closed-form vs thinning oracle:", 0) == 0);
    CHECK(rows[0].find(" PASS") != std::string::npos);
    CHECK(rows[2].find(" FAIL") != std::string::npos);
    CHECK(rows[4] == "verify: FAIL");
}

TEST_CASE("configuration errors surface as exceptions") {
    RunConfig bad_eta;
    bad_eta.command = Command::Capacity;
    bad_eta.eta1 = 0.0;
    CHECK_THROWS_AS(invoke(bad_eta), std::invalid_argument);

    RunConfig bad_grid;
    bad_grid.command = Command::Verify;
    bad_grid.verify_grid = "bogus";
    CHECK_THROWS_AS(invoke(bad_grid), std::invalid_argument);

    RunConfig empty_sweep;
    empty_sweep.command = Command::Sweep;
    CHECK_THROWS_AS(invoke(empty_sweep), std::invalid_argument);

    RunConfig bad_mean;
    bad_mean.command = Command::StateInfo;
    bad_mean.mean = -1.0;
    CHECK_THROWS_AS(invoke(bad_mean), std::invalid_argument);
}

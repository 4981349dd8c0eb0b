// SPDX-License-Identifier: Apache-2.0
//
// star-secrecy: STAR-RIS wiretap simulation and TARC optimization
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "starsec/experiment.hpp"

namespace starsec::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config;
    std::string protocol;
    std::optional<int> m;
    std::optional<double> e;
    std::optional<double> p_s;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string out = ".";
    bool bits = false;
    bool no_wall_time = false;

    int trial = 0;  // run
    std::string sweep_var = "m";
    std::vector<double> sweep_values;
    std::vector<std::string> sweep_protocols;
    int figure = 0;
    std::string aggregate_input;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("star_secrecy", sink);
    logger->set_pattern("[%l] %v");
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("STAR_SECRECY_LOG")) level = spdlog::level::from_str(env);
    logger->set_level(level);
    return logger;
}

Scenario base_scenario(const Options& o) {
    Scenario sc = o.config.empty() ? Scenario{} : load_scenario(o.config);
    if (!o.protocol.empty()) sc.protocol = parse_protocol(o.protocol);
    if (o.m) sc.num_elements = *o.m;
    if (o.e) sc.energy_r = sc.energy_t = *o.e;
    if (o.p_s) sc.transmit_power = *o.p_s;
    if (o.trials) sc.trials = *o.trials;
    if (o.seed) sc.seed = *o.seed;
    sc.validate();
    return sc;
}

void write_outputs(const fs::path& dir, const std::string& stem, std::vector<ResultRow> rows, const Scenario& base,
                   const SweepSpec& spec, const OptimizerSettings& settings, const Options& o, spdlog::logger& log) {
    fs::create_directories(dir);
    if (o.no_wall_time)
        for (auto& r : rows) r.wall_s = 0.0;
    const fs::path csv = dir / (stem + ".csv");
    const fs::path meta = dir / (stem + ".json");
    std::ofstream c(csv);
    if (!c) throw ConfigError("cannot write '" + csv.string() + "'");
    write_csv(c, rows, o.bits);
    std::ofstream j(meta);
    if (!j) throw ConfigError("cannot write '" + meta.string() + "'");
    j << metadata_json(base, spec, settings, o.bits) << '\n';
    log.info("wrote {} rows to {}", rows.size(), csv.string());
}

int cmd_run(const Options& o, std::ostream& out, spdlog::logger& log) {
    const Scenario sc = base_scenario(o);
    const OptimizerSettings settings;
    OptResult result;
    ResultRow row = run_single(sc, settings, o.trial, SweepVariable::M, sc.num_elements, &result);

    const double scale = o.bits ? 1.0 / std::numbers::ln2 : 1.0;
    const char* unit = o.bits ? "bits" : "nats";
    out << "protocol        " << to_string(sc.protocol) << "\n"
        << "elements        " << sc.num_elements << "\n"
        << "trial           " << o.trial << " (seed " << sc.seed << ")\n"
        << "status          " << to_string(result.status) << (result.feasible ? "" : ", infeasible") << "\n"
        << "secrecy rate    " << row.rate_sum * scale << " " << unit << " (r " << row.rate_r * scale << ", t "
        << row.rate_t * scale << ")\n"
        << "harvested       r " << row.energy_r << ", t " << row.energy_t << " (required " << sc.energy_r << ", "
        << sc.energy_t << ")\n"
        << "sdr bound       " << result.sdr_bound << "\n"
        << "iterations      I_c " << row.ic << ", I_d " << row.id << "\n"
        << "wall time       " << row.wall_s << " s\n";

    SweepSpec spec{SweepVariable::M, {static_cast<double>(sc.num_elements)}, {sc.protocol}, 1, sc.seed};
    write_outputs(o.out, "run", {row}, sc, spec, settings, o, log);
    return row.feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const Options& o, spdlog::logger& log) {
    const Scenario sc = base_scenario(o);
    SweepSpec spec;
    spec.variable = parse_sweep_variable(o.sweep_var);
    spec.values = o.sweep_values;
    if (o.sweep_protocols.empty()) {
        spec.protocols = {sc.protocol};
    } else {
        for (const auto& p : o.sweep_protocols) spec.protocols.push_back(parse_protocol(p));
    }
    spec.trials = sc.trials;
    spec.seed = sc.seed;
    const OptimizerSettings settings;
    auto rows = run_sweep(sc, spec, settings, o.jobs, [&](const std::string& msg) { log.error("{}", msg); });
    write_outputs(o.out, "sweep", std::move(rows), sc, spec, settings, o, log);
    return kExitOk;
}

int cmd_figure(const Options& o, spdlog::logger& log) {
    const Scenario sc = base_scenario(o);
    const OptimizerSettings settings;
    for (const auto& fig : figure_sweeps(o.figure, sc, sc.trials, sc.seed)) {
        log.info("figure sweep {}: {} values x {} protocols x {} trials", fig.name, fig.spec.values.size(),
                 fig.spec.protocols.size(), fig.spec.trials);
        auto rows =
            run_sweep(fig.base, fig.spec, settings, o.jobs, [&](const std::string& msg) { log.error("{}", msg); });
        write_outputs(o.out, fig.name, std::move(rows), fig.base, fig.spec, settings, o, log);
    }
    return kExitOk;
}

int cmd_aggregate(const Options& o, std::ostream& out) {
    std::ifstream in(o.aggregate_input);
    if (!in) throw ConfigError("cannot read '" + o.aggregate_input + "'");
    write_aggregate_csv(out, aggregate(read_csv(in)));
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"STAR-RIS wiretap secrecy-rate optimization", "star_secrecy"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--config", o.config, "Scenario JSON file");
    app.add_option("--protocol", o.protocol, "es | ms | ts | ris | none");
    app.add_option("--m", o.m, "Number of surface elements")->check(CLI::PositiveNumber);
    app.add_option("--e", o.e, "Energy requirement at both Eves")->check(CLI::NonNegativeNumber);
    app.add_option("--p-s", o.p_s, "Transmit power")->check(CLI::PositiveNumber);
    app.add_option("--trials", o.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Base seed");
    app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Output directory");
    app.add_flag("--bits", o.bits, "Report rates in bits instead of nats");
    app.add_flag("--no-wall-time", o.no_wall_time, "Write wall_s as 0 for byte-reproducible CSV");

    auto* run_cmd = app.add_subcommand("run", "Optimize one channel realization");
    run_cmd->add_option("--trial", o.trial, "Trial index")->check(CLI::NonNegativeNumber);
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter over a grid");
    sweep_cmd->add_option("--var", o.sweep_var, "m | e | p_s");
    sweep_cmd->add_option("--values", o.sweep_values, "Strictly increasing grid")->delimiter(',')->required();
    sweep_cmd->add_option("--protocols", o.sweep_protocols, "Comma-separated protocols")->delimiter(',');
    auto* fig_cmd = app.add_subcommand("figure", "Regenerate the data behind a figure");
    fig_cmd->add_option("id", o.figure, "Figure id: 2, 3, 4 or 5")->required();
    auto* agg_cmd = app.add_subcommand("aggregate", "Means and standard errors of a result CSV");
    agg_cmd->add_option("csv", o.aggregate_input, "Result CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    auto log = make_logger(err);
    try {
        if (run_cmd->parsed()) return cmd_run(o, out, *log);
        if (sweep_cmd->parsed()) return cmd_sweep(o, *log);
        if (fig_cmd->parsed()) return cmd_figure(o, *log);
        if (agg_cmd->parsed()) return cmd_aggregate(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace starsec::cli

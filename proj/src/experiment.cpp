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
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "starsec/experiment.hpp"

namespace starsec {

namespace {

using json = nlohmann::json;

// Salt separating the randomization stream from the channel stream of a trial.
constexpr std::uint64_t kRandomizationStream = 0x52414e44ULL;

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<double> grid(double first, double last, double step) {
    std::vector<double> out;
    const int n = static_cast<int>(std::llround((last - first) / step));
    for (int i = 0; i <= n; ++i) out.push_back(first + i * step);
    return out;
}

}  // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::M: return "m";
        case SweepVariable::E: return "e";
        case SweepVariable::Ps: return "p_s";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
    if (name == "m" || name == "M") return SweepVariable::M;
    if (name == "e" || name == "E") return SweepVariable::E;
    if (name == "p_s" || name == "ps" || name == "P_s") return SweepVariable::Ps;
    throw ConfigError("unknown sweep variable '" + std::string(name) + "' (expected m, e or p_s)");
}

void SweepSpec::validate() const {
    if (values.empty()) throw ConfigError("sweep: values must be nonempty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw ConfigError("sweep: values must be strictly increasing");
    if (protocols.empty()) throw ConfigError("sweep: at least one protocol is required");
    if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
}

Scenario apply_sweep_value(Scenario base, SweepVariable variable, double value) {
    switch (variable) {
        case SweepVariable::M: base.num_elements = static_cast<int>(std::llround(value)); break;
        case SweepVariable::E: base.energy_r = base.energy_t = value; break;
        case SweepVariable::Ps: base.transmit_power = value; break;
    }
    return base;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) { return derive_seed(seed, static_cast<std::uint64_t>(trial)); }

ResultRow make_row(const OptResult& r, Protocol protocol, SweepVariable variable, double value, int trial,
                   double wall_s) {
    ResultRow row;
    row.protocol = protocol;
    row.sweep_var = variable;
    row.sweep_value = value;
    row.trial = trial;
    row.rate_sum = r.metrics.rate_sum;
    row.rate_r = r.metrics.rate_r;
    row.rate_t = r.metrics.rate_t;
    row.energy_r = r.metrics.energy_eve_r;
    row.energy_t = r.metrics.energy_eve_t;
    row.feasible = r.feasible;
    row.ic = r.iterations_ic;
    row.id = r.iterations_id;
    row.wall_s = wall_s;
    return row;
}

ResultRow run_single(const Scenario& scenario, const OptimizerSettings& settings, int trial, SweepVariable variable,
                     double value, OptResult* result) {
    scenario.validate();
    const std::uint64_t seed = trial_seed(scenario.seed, trial);
    OptimizerSettings st = settings;
    st.randomization_seed = derive_seed(seed, kRandomizationStream);
    const auto t0 = std::chrono::steady_clock::now();
    const ChannelSet ch = generate_channels(scenario, seed);
    OptResult r = optimize(ch, scenario, st);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ResultRow row = make_row(r, scenario.protocol, variable, value, trial, wall);
    if (result) *result = std::move(r);
    return row;
}

std::vector<ResultRow> run_sweep(const Scenario& base, const SweepSpec& spec, const OptimizerSettings& settings,
                                 int jobs, const ErrorSink& on_error) {
    spec.validate();
    settings.validate();
    struct Task {
        double value;
        Protocol protocol;
        int trial;
    };
    std::vector<Task> tasks;
    for (double v : spec.values)
        for (Protocol p : spec.protocols)
            for (int t = 0; t < spec.trials; ++t) tasks.push_back({v, p, t});

    std::vector<ResultRow> rows(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& task = tasks[i];
            Scenario sc = apply_sweep_value(base, spec.variable, task.value);
            sc.protocol = task.protocol;
            sc.seed = spec.seed;
            try {
                rows[i] = run_single(sc, settings, task.trial, spec.variable, task.value);
            } catch (const std::exception& e) {
                ResultRow row;
                row.protocol = task.protocol;
                row.sweep_var = spec.variable;
                row.sweep_value = task.value;
                row.trial = task.trial;
                rows[i] = row;
                errors[i] = std::string(to_string(task.protocol)) + " " + std::string(to_string(spec.variable)) +
                            "=" + fmt_short(task.value) + " trial " + std::to_string(task.trial) + ": " + e.what();
            }
        }
    };
    const int n_workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (on_error)
        for (const auto& e : errors)
            if (!e.empty()) on_error(e);
    return rows;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool bits) {
    const double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << to_string(r.protocol) << ',' << to_string(r.sweep_var) << ',' << fmt9(r.sweep_value) << ',' << r.trial
           << ',' << fmt9(r.rate_sum * scale) << ',' << fmt9(r.rate_r * scale) << ',' << fmt9(r.rate_t * scale) << ','
           << fmt9(r.energy_r) << ',' << fmt9(r.energy_t) << ',' << (r.feasible ? 1 : 0) << ',' << r.ic << ','
           << r.id << ',' << fmt9(r.wall_s) << '\n';
    }
}

std::vector<ResultRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw ConfigError("CSV header does not match the result schema");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 13) throw ConfigError("CSV line " + std::to_string(lineno) + ": expected 13 fields");
        try {
            ResultRow r;
            r.protocol = parse_protocol(f[0]);
            r.sweep_var = parse_sweep_variable(f[1]);
            r.sweep_value = std::stod(f[2]);
            r.trial = std::stoi(f[3]);
            r.rate_sum = std::stod(f[4]);
            r.rate_r = std::stod(f[5]);
            r.rate_t = std::stod(f[6]);
            r.energy_r = std::stod(f[7]);
            r.energy_t = std::stod(f[8]);
            r.feasible = f[9] == "1";
            r.ic = std::stoi(f[10]);
            r.id = std::stoi(f[11]);
            r.wall_s = std::stod(f[12]);
            rows.push_back(r);
        } catch (const std::logic_error& e) {
            throw ConfigError("CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

std::string metadata_json(const Scenario& base, const SweepSpec& spec, const OptimizerSettings& st, bool bits) {
    json j;
    j["version"] = std::string(kVersion);
    j["prng"] = std::string(kRngName);
    j["rate_unit"] = bits ? "bits" : "nats";
    j["scenario"] = json::parse(scenario_to_json(base));
    json protocols = json::array();
    for (Protocol p : spec.protocols) protocols.push_back(std::string(to_string(p)));
    j["sweep"] = {{"variable", std::string(to_string(spec.variable))},
                  {"values", spec.values},
                  {"protocols", protocols},
                  {"trials", spec.trials},
                  {"seed", spec.seed}};
    j["settings"] = {{"eps1", st.eps1},
                     {"eps2", st.eps2},
                     {"eta0", st.eta0},
                     {"omega", st.omega},
                     {"max_dinkelbach", st.max_dinkelbach},
                     {"max_penalty_outer", st.max_penalty_outer},
                     {"lambda_grid_step", st.lambda_grid_step},
                     {"randomization_samples", st.randomization_samples},
                     {"rank_one_tol", st.rank_one_tol},
                     {"ms_beta_init", st.ms_beta_init},
                     {"rate_refinement", st.rate_refinement},
                     {"max_refinement", st.max_refinement},
                     {"solver",
                      {{"gap_tol", st.solver.gap_tol},
                       {"feas_tol", st.solver.feas_tol},
                       {"max_iters", st.solver.max_iters},
                       {"stall_limit", st.solver.stall_limit}}}};
    return j.dump(2);
}

std::vector<FigureSweep> figure_sweeps(int figure, const Scenario& base, int trials, std::uint64_t seed) {
    std::vector<FigureSweep> out;
    auto add = [&](std::string name, Scenario sc, SweepVariable var, std::vector<double> values,
                   std::vector<Protocol> protocols) {
        sc.seed = seed;
        sc.trials = trials;
        out.push_back({std::move(name), sc, SweepSpec{var, std::move(values), std::move(protocols), trials, seed}});
    };
    const std::vector<double> m_grid = grid(10, 40, 5);
    switch (figure) {
        case 2:
            for (double e : {0.1, 1.4})
                add("fig2_e" + fmt_short(e), apply_sweep_value(base, SweepVariable::E, e), SweepVariable::M, m_grid,
                    {Protocol::ES, Protocol::MS, Protocol::TS, Protocol::RIS});
            break;
        case 3: {
            std::vector<double> e_grid;
            for (int i = 0; i <= 15; ++i) e_grid.push_back(i / 10.0);
            for (int m : {10, 30})
                add("fig3_m" + std::to_string(m), apply_sweep_value(base, SweepVariable::M, m), SweepVariable::E,
                    e_grid, {Protocol::ES, Protocol::MS, Protocol::TS});
            break;
        }
        case 4:
            for (int m : {10, 30}) {
                Scenario sc = apply_sweep_value(apply_sweep_value(base, SweepVariable::M, m), SweepVariable::E, 0.1);
                add("fig4_m" + std::to_string(m), sc, SweepVariable::Ps, grid(5, 40, 5),
                    {Protocol::ES, Protocol::RIS, Protocol::NONE});
            }
            break;
        case 5:
            for (double ps : {20.0, 40.0})
                for (double e : {0.05, 0.12}) {
                    Scenario sc = apply_sweep_value(apply_sweep_value(base, SweepVariable::Ps, ps), SweepVariable::E, e);
                    add("fig5_ps" + fmt_short(ps) + "_e" + fmt_short(e), sc, SweepVariable::M, m_grid,
                        {Protocol::ES, Protocol::MS, Protocol::TS});
                }
            break;
        default: throw ConfigError("unknown figure id " + std::to_string(figure) + " (expected 2, 3, 4 or 5)");
    }
    return out;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
    struct Acc {
        AggregateRow row;
        double sum = 0.0, sum2 = 0.0;
    };
    std::vector<Acc> acc;
    for (const auto& r : rows) {
        auto it = std::find_if(acc.begin(), acc.end(), [&](const Acc& a) {
            return a.row.protocol == r.protocol && a.row.sweep_var == r.sweep_var && a.row.sweep_value == r.sweep_value;
        });
        if (it == acc.end()) {
            acc.push_back({});
            it = std::prev(acc.end());
            it->row.protocol = r.protocol;
            it->row.sweep_var = r.sweep_var;
            it->row.sweep_value = r.sweep_value;
        }
        const double rate = r.feasible ? r.rate_sum : 0.0;
        it->row.count += 1;
        it->row.feasible += r.feasible ? 1 : 0;
        it->sum += rate;
        it->sum2 += rate * rate;
        it->row.mean_energy_r += r.energy_r;
        it->row.mean_energy_t += r.energy_t;
    }
    std::vector<AggregateRow> out;
    for (auto& a : acc) {
        const double n = a.row.count;
        a.row.mean_rate = a.sum / n;
        const double var = n > 1 ? std::max(a.sum2 - n * a.row.mean_rate * a.row.mean_rate, 0.0) / (n - 1) : 0.0;
        a.row.se_rate = std::sqrt(var / n);
        a.row.mean_energy_r /= n;
        a.row.mean_energy_t /= n;
        out.push_back(a.row);
    }
    return out;
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
    os << "protocol,sweep_var,sweep_value,count,feasible,mean_rate,se_rate,mean_energy_r,mean_energy_t\n";
    for (const auto& r : rows)
        os << to_string(r.protocol) << ',' << to_string(r.sweep_var) << ',' << fmt9(r.sweep_value) << ',' << r.count
           << ',' << r.feasible << ',' << fmt9(r.mean_rate) << ',' << fmt9(r.se_rate) << ',' << fmt9(r.mean_energy_r)
           << ',' << fmt9(r.mean_energy_t) << '\n';
}

}  // namespace starsec

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
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "starsec/optimizer.hpp"
#include "starsec/scenario.hpp"

namespace starsec {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kCsvHeader =
    "protocol,sweep_var,sweep_value,trial,rate_sum,rate_r,rate_t,energy_r,energy_t,feasible,ic,id,wall_s";

enum class SweepVariable { M, E, Ps };

std::string_view to_string(SweepVariable v);
/// Accepts "m", "e", "p_s".
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::M;
    std::vector<double> values;
    std::vector<Protocol> protocols;
    int trials = 50;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless values are nonempty and strictly increasing, protocols nonempty, trials >= 1.
    void validate() const;
};

struct ResultRow {
    Protocol protocol = Protocol::ES;
    SweepVariable sweep_var = SweepVariable::M;
    double sweep_value = 0.0;
    int trial = 0;
    double rate_sum = 0.0;  ///< nats
    double rate_r = 0.0;
    double rate_t = 0.0;
    double energy_r = 0.0;
    double energy_t = 0.0;
    bool feasible = false;
    int ic = 0;
    int id = 0;
    double wall_s = 0.0;
};

/// Copy of `base` with the swept quantity set (M rounds to the nearest integer; E sets both sides).
Scenario apply_sweep_value(Scenario base, SweepVariable variable, double value);

/// Channel seed of one trial; depends only on (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, int trial);

ResultRow make_row(const OptResult& result, Protocol protocol, SweepVariable variable, double value, int trial,
                   double wall_s);

/// One optimization on the trial's channel realization. The randomization stream is derived from the trial seed.
ResultRow run_single(const Scenario& scenario, const OptimizerSettings& settings, int trial,
                     SweepVariable variable, double value, OptResult* result = nullptr);

using ErrorSink = std::function<void(const std::string&)>;

/// Runs every (value, protocol, trial) combination on `jobs` worker threads. Rows come back in
/// (value, protocol, trial) order whatever the completion order. A run that throws becomes an
/// infeasible all-zero row and its message goes to `on_error`.
std::vector<ResultRow> run_sweep(const Scenario& base, const SweepSpec& spec, const OptimizerSettings& settings,
                                 int jobs = 1, const ErrorSink& on_error = {});

/// CSV with kCsvHeader and 9 significant digits. `bits` converts rates from nats to bits.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool bits = false);
std::vector<ResultRow> read_csv(std::istream& is);

/// JSON provenance sidecar: scenario, settings, sweep, version, PRNG name, rate unit.
std::string metadata_json(const Scenario& base, const SweepSpec& spec, const OptimizerSettings& settings, bool bits);

struct FigureSweep {
    std::string name;  ///< file stem, e.g. "fig2_e1.4"
    Scenario base;
    SweepSpec spec;
};

/// Parameter grids of figures 2-5. Throws ConfigError for other ids.
std::vector<FigureSweep> figure_sweeps(int figure, const Scenario& base, int trials, std::uint64_t seed);

struct AggregateRow {
    Protocol protocol = Protocol::ES;
    SweepVariable sweep_var = SweepVariable::M;
    double sweep_value = 0.0;
    int count = 0;
    int feasible = 0;
    double mean_rate = 0.0;
    double se_rate = 0.0;  ///< standard error of the mean
    double mean_energy_r = 0.0;
    double mean_energy_t = 0.0;
};

/// Means and standard errors per (protocol, sweep value), in first-appearance order. Rates of
/// infeasible rows count as zero.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

}  // namespace starsec

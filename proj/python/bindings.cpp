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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "starsec/experiment.hpp"
#include "starsec/optimizer.hpp"

namespace py = pybind11;
using namespace starsec;

PYBIND11_MODULE(_core, m) {
    m.doc() = "STAR-RIS wiretap secrecy-rate optimization";
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Protocol>(m, "Protocol")
        .value("ES", Protocol::ES)
        .value("MS", Protocol::MS)
        .value("TS", Protocol::TS)
        .value("RIS", Protocol::RIS)
        .value("NONE", Protocol::NONE);
    py::enum_<Side>(m, "Side").value("R", Side::R).value("T", Side::T);
    py::enum_<OptStatus>(m, "OptStatus")
        .value("Converged", OptStatus::Converged)
        .value("MaxIterations", OptStatus::MaxIterations)
        .value("Infeasible", OptStatus::Infeasible);

    m.def("parse_protocol", [](const std::string& s) { return parse_protocol(s); });

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("num_elements", &Scenario::num_elements)
        .def_readwrite("transmit_power", &Scenario::transmit_power)
        .def_readwrite("noise_power", &Scenario::noise_power)
        .def_readwrite("energy_r", &Scenario::energy_r)
        .def_readwrite("energy_t", &Scenario::energy_t)
        .def_readwrite("pathloss_exp_legit", &Scenario::pathloss_exp_legit)
        .def_readwrite("pathloss_exp_eve", &Scenario::pathloss_exp_eve)
        .def_readwrite("protocol", &Scenario::protocol)
        .def_readwrite("trials", &Scenario::trials)
        .def_readwrite("seed", &Scenario::seed)
        .def("validate", &Scenario::validate)
        .def("to_json", [](const Scenario& s) { return scenario_to_json(s); })
        .def_static("from_json", [](const std::string& text) { return parse_scenario(text); })
        .def_static("load", &load_scenario);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def_readwrite("H", &ChannelSet::H)
        .def_readwrite("h_r", &ChannelSet::h_r)
        .def_readwrite("h_t", &ChannelSet::h_t)
        .def_readwrite("v_r", &ChannelSet::v_r)
        .def_readwrite("v_t", &ChannelSet::v_t)
        .def_readwrite("f_r", &ChannelSet::f_r)
        .def_readwrite("f_t", &ChannelSet::f_t)
        .def_readwrite("g_r", &ChannelSet::g_r)
        .def_readwrite("g_t", &ChannelSet::g_t)
        .def_property_readonly("num_elements", &ChannelSet::num_elements);

    m.def("generate_channels", py::overload_cast<const Scenario&, std::uint64_t>(&generate_channels),
          py::arg("scenario"), py::arg("seed"));
    m.def("trial_seed", &trial_seed, py::arg("seed"), py::arg("trial"));

    py::class_<TarcConfig>(m, "TarcConfig")
        .def_readwrite("protocol", &TarcConfig::protocol)
        .def_readwrite("beta_r", &TarcConfig::beta_r)
        .def_readwrite("beta_t", &TarcConfig::beta_t)
        .def_readwrite("phi_r", &TarcConfig::phi_r)
        .def_readwrite("phi_t", &TarcConfig::phi_t)
        .def_readwrite("lambda_r", &TarcConfig::lambda_r)
        .def_readwrite("lambda_t", &TarcConfig::lambda_t)
        .def("validate", &TarcConfig::validate)
        .def_static("off", &TarcConfig::off)
        .def_static("reflect_only", &TarcConfig::reflect_only)
        .def_static("even_split", &TarcConfig::even_split)
        .def_static("time_switching", &TarcConfig::time_switching);

    py::class_<PerformanceMetrics>(m, "PerformanceMetrics")
        .def_readonly("snr_bob_r", &PerformanceMetrics::snr_bob_r)
        .def_readonly("snr_bob_t", &PerformanceMetrics::snr_bob_t)
        .def_readonly("snr_eve_r", &PerformanceMetrics::snr_eve_r)
        .def_readonly("snr_eve_t", &PerformanceMetrics::snr_eve_t)
        .def_readonly("rate_r", &PerformanceMetrics::rate_r)
        .def_readonly("rate_t", &PerformanceMetrics::rate_t)
        .def_readonly("rate_sum", &PerformanceMetrics::rate_sum)
        .def_readonly("energy_eve_r", &PerformanceMetrics::energy_eve_r)
        .def_readonly("energy_eve_t", &PerformanceMetrics::energy_eve_t);

    m.def("secrecy_rate", &secrecy_rate, py::arg("channels"), py::arg("config"), py::arg("transmit_power"),
          py::arg("noise_power"));
    m.def("harvested_energy", &harvested_energy, py::arg("channels"), py::arg("config"), py::arg("eve"),
          py::arg("transmit_power"));

    py::class_<OptimizerSettings>(m, "OptimizerSettings")
        .def(py::init<>())
        .def_readwrite("eps1", &OptimizerSettings::eps1)
        .def_readwrite("eps2", &OptimizerSettings::eps2)
        .def_readwrite("eta0", &OptimizerSettings::eta0)
        .def_readwrite("omega", &OptimizerSettings::omega)
        .def_readwrite("max_dinkelbach", &OptimizerSettings::max_dinkelbach)
        .def_readwrite("max_penalty_outer", &OptimizerSettings::max_penalty_outer)
        .def_readwrite("lambda_grid_step", &OptimizerSettings::lambda_grid_step)
        .def_readwrite("randomization_samples", &OptimizerSettings::randomization_samples)
        .def_readwrite("randomization_seed", &OptimizerSettings::randomization_seed)
        .def_readwrite("rate_refinement", &OptimizerSettings::rate_refinement)
        .def("validate", &OptimizerSettings::validate);

    py::class_<DinkelbachState>(m, "DinkelbachState")
        .def_readonly("gamma_r", &DinkelbachState::gamma_r)
        .def_readonly("gamma_t", &DinkelbachState::gamma_t)
        .def_readonly("iteration", &DinkelbachState::iteration)
        .def_readonly("objective", &DinkelbachState::objective);

    py::class_<OptResult>(m, "OptResult")
        .def_readonly("config", &OptResult::config)
        .def_readonly("sdr_bound", &OptResult::sdr_bound)
        .def_readonly("extracted_surrogate", &OptResult::extracted_surrogate)
        .def_readonly("metrics", &OptResult::metrics)
        .def_readonly("feasible", &OptResult::feasible)
        .def_readonly("status", &OptResult::status)
        .def_readonly("gamma_trace", &OptResult::gamma_trace)
        .def_readonly("iterations_ic", &OptResult::iterations_ic)
        .def_readonly("iterations_id", &OptResult::iterations_id)
        .def_readonly("rank_gap", &OptResult::rank_gap);

    m.def(
        "optimize",
        [](const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st) {
            py::gil_scoped_release release;
            return optimize(ch, sc, st);
        },
        py::arg("channels"), py::arg("scenario"), py::arg("settings") = OptimizerSettings{});
    m.def(
        "solve_ts_fixed_lambda",
        [](const ChannelSet& ch, const Scenario& sc, double lambda_r, const OptimizerSettings& st) {
            py::gil_scoped_release release;
            return solve_ts_fixed_lambda(ch, sc, lambda_r, st);
        },
        py::arg("channels"), py::arg("scenario"), py::arg("lambda_r"), py::arg("settings") = OptimizerSettings{});

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("config", &OracleResult::config)
        .def_readonly("metrics", &OracleResult::metrics)
        .def_readonly("feasible", &OracleResult::feasible)
        .def_readonly("best_surrogate", &OracleResult::best_surrogate)
        .def_readonly("evaluations", &OracleResult::evaluations);
    m.def("brute_force_oracle", &brute_force_oracle, py::arg("channels"), py::arg("scenario"),
          py::arg("phase_points"), py::arg("beta_points"), py::arg("lambda_step") = 0.01);

    m.def(
        "run_single",
        [](const Scenario& sc, int trial) {
            OptResult r;
            ResultRow row;
            {
                py::gil_scoped_release release;
                row = run_single(sc, {}, trial, SweepVariable::M, sc.num_elements, &r);
            }
            return r;
        },
        py::arg("scenario"), py::arg("trial"),
        "Optimizes the channel realization of one trial with the same seeding as the command-line tool.");
}

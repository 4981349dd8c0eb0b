# SPDX-License-Identifier: Apache-2.0
#
# star-secrecy: STAR-RIS wiretap simulation and TARC optimization
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""STAR-RIS wiretap secrecy-rate optimization."""

from ._core import (
    ChannelSet,
    ConfigError,
    DinkelbachState,
    OptimizerSettings,
    OptResult,
    OptStatus,
    OracleResult,
    PerformanceMetrics,
    Protocol,
    Scenario,
    Side,
    TarcConfig,
    __version__,
    brute_force_oracle,
    generate_channels,
    harvested_energy,
    optimize,
    parse_protocol,
    run_single,
    secrecy_rate,
    solve_ts_fixed_lambda,
    trial_seed,
)

__all__ = [
    "ChannelSet",
    "ConfigError",
    "DinkelbachState",
    "OptimizerSettings",
    "OptResult",
    "OptStatus",
    "OracleResult",
    "PerformanceMetrics",
    "Protocol",
    "Scenario",
    "Side",
    "TarcConfig",
    "__version__",
    "brute_force_oracle",
    "generate_channels",
    "harvested_energy",
    "optimize",
    "parse_protocol",
    "run_single",
    "secrecy_rate",
    "solve_ts_fixed_lambda",
    "trial_seed",
]

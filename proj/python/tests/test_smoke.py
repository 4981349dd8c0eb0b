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
import math

import numpy as np
import pytest

import starsec


def test_version():
    assert starsec.__version__ == "1.0.0"


def test_scenario_defaults_and_json():
    sc = starsec.Scenario()
    assert sc.num_elements == 10
    assert sc.transmit_power == 20.0
    back = starsec.Scenario.from_json(sc.to_json())
    assert back.energy_r == sc.energy_r
    with pytest.raises(ValueError):
        starsec.Scenario.from_json('{"m": 0}')


def test_channel_magnitudes():
    sc = starsec.Scenario()
    ch = starsec.generate_channels(sc, 3)
    assert ch.H.shape == (10,)
    assert ch.H.dtype == np.complex128
    assert abs(ch.g_r) == pytest.approx(1.0 / math.sqrt(104.0))


def test_secrecy_rate_matches_numpy():
    sc = starsec.Scenario()
    ch = starsec.generate_channels(sc, 5)
    cfg = starsec.TarcConfig.even_split(10)
    pm = starsec.secrecy_rate(ch, cfg, 20.0, 1.0)
    coef = np.sqrt(cfg.beta_r) * np.exp(1j * cfg.phi_r)
    bob = np.abs(np.vdot(ch.h_r, coef * ch.H) + ch.f_r) ** 2 * 20.0
    eve = np.abs(np.vdot(ch.v_r, coef * ch.H) + ch.g_r) ** 2 * 20.0
    assert pm.snr_bob_r == pytest.approx(bob, rel=1e-12)
    assert pm.rate_r == pytest.approx(max(math.log1p(bob) - math.log1p(eve), 0.0), abs=1e-12)


def test_optimize_es_small():
    sc = starsec.Scenario()
    sc.num_elements = 4
    ch = starsec.generate_channels(sc, 1)
    res = starsec.optimize(ch, sc)
    assert res.feasible
    assert res.status == starsec.OptStatus.Converged
    assert res.metrics.energy_eve_r >= sc.energy_r - 1e-6
    assert res.metrics.rate_sum >= 0.0
    assert res.iterations_ic >= 1
    assert len(res.gamma_trace) >= 1


def test_run_single_is_reproducible():
    sc = starsec.Scenario()
    sc.num_elements = 4
    sc.protocol = starsec.Protocol.TS
    a = starsec.run_single(sc, 2)
    b = starsec.run_single(sc, 2)
    assert a.metrics.rate_sum == b.metrics.rate_sum


def test_oracle_guard():
    sc = starsec.Scenario()
    sc.num_elements = 4
    ch = starsec.generate_channels(sc, 1)
    with pytest.raises(ValueError):
        starsec.brute_force_oracle(ch, sc, 4, 3)

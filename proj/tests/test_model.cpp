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
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "starsec/model.hpp"

using namespace starsec;
using doctest::Approx;
using std::numbers::pi;

namespace {

const Complex J(0.0, 1.0);

ChannelSet scalar_channels(Complex H, Complex h, Complex v, Complex f, Complex g) {
    ChannelSet c = ChannelSet::zeros(1);
    c.H(0) = H;
    c.h_r(0) = c.h_t(0) = h;
    c.v_r(0) = c.v_t(0) = v;
    c.f_r = c.f_t = f;
    c.g_r = c.g_t = g;
    return c;
}

TarcConfig random_es(int m, Rng& rng) {
    TarcConfig c = TarcConfig::even_split(m);
    c.protocol = Protocol::ES;
    for (int i = 0; i < m; ++i) {
        c.beta_r(i) = uniform01(rng);
        c.beta_t(i) = 1.0 - c.beta_r(i);
        c.phi_r(i) = 2 * pi * uniform01(rng);
        c.phi_t(i) = 2 * pi * uniform01(rng);
    }
    return c;
}

}  // namespace

TEST_CASE("tarc_matrix") {
    TarcConfig off = TarcConfig::off(3);
    CHECK(tarc_matrix(off, Side::R).diagonal().cwiseAbs().maxCoeff() == 0.0);

    TarcConfig ris = TarcConfig::reflect_only(3);
    const auto d = tarc_matrix(ris, Side::R).diagonal();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(d(i) - 1.0) < 1e-15);

    TarcConfig one = TarcConfig::even_split(1);
    one.beta_r(0) = 0.25;
    one.beta_t(0) = 0.75;
    one.phi_r(0) = pi;
    const Complex e = tarc_matrix(one, Side::R).diagonal()(0);
    CHECK(e.real() == Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(e.imag()) < 1e-15);
}

TEST_CASE("effective_gain conjugates the channel vector") {
    Eigen::VectorXcd h(2), H(2);
    h << 1.0, J;
    H << 1.0, 1.0;
    TarcMatrix id(2);
    id.diagonal() << 1.0, 1.0;
    const Complex g = effective_gain(h, id, H, 1.0);
    CHECK(g.real() == Approx(2.0));
    CHECK(g.imag() == Approx(-1.0));

    TarcMatrix zero(2);
    zero.diagonal().setZero();
    CHECK(effective_gain(h, zero, H, Complex(0.3, -0.2)) == Complex(0.3, -0.2));

    Eigen::VectorXcd one(1);
    one << 1.0;
    TarcMatrix t1(1);
    t1.diagonal() << 1.0;
    CHECK(effective_gain(one, t1, one, 0.0) == Complex(1.0, 0.0));

    Eigen::VectorXcd three(3);
    three.setOnes();
    CHECK_THROWS_AS(effective_gain(three, id, H, 0.0), std::invalid_argument);
}

TEST_CASE("snr") {
    const ChannelSet c = generate_channels(Scenario{}, 3);
    const TarcConfig off = TarcConfig::off(10);
    CHECK(snr(c, off, Node::BobR, 20.0, 1.0) == Approx(std::norm(c.f_r) * 20.0));
    CHECK(snr(ChannelSet::zeros(4), TarcConfig::even_split(4), Node::EveT, 20.0, 1.0) == 0.0);

    // M = 1 against scalar arithmetic.
    const Complex H = std::polar(0.3, 0.4), h = std::polar(0.2, -1.1), v = std::polar(0.5, 2.0);
    const Complex f = std::polar(0.05, 0.7), g = std::polar(0.08, -2.5);
    const ChannelSet s = scalar_channels(H, h, v, f, g);
    TarcConfig t = TarcConfig::even_split(1);
    t.beta_r(0) = 0.36;
    t.beta_t(0) = 0.64;
    t.phi_r(0) = 1.3;
    t.phi_t(0) = 4.0;
    const Complex cr = std::polar(0.6, 1.3), ct = std::polar(0.8, 4.0);
    const double ps = 7.0, n0 = 0.5;
    CHECK(snr(s, t, Node::BobR, ps, n0) == Approx(std::norm(std::conj(h) * cr * H + f) * ps / n0).epsilon(1e-13));
    CHECK(snr(s, t, Node::BobT, ps, n0) == Approx(std::norm(std::conj(h) * ct * H + f) * ps / n0).epsilon(1e-13));
    CHECK(snr(s, t, Node::EveR, ps, n0) == Approx(std::norm(std::conj(v) * cr * H + g) * ps / n0).epsilon(1e-13));
    CHECK(snr(s, t, Node::EveT, ps, n0) == Approx(std::norm(std::conj(v) * ct * H + g) * ps / n0).epsilon(1e-13));
}

TEST_CASE("harvested_energy") {
    const ChannelSet c = generate_channels(Scenario{}, 11);
    const TarcConfig off = TarcConfig::off(10);
    CHECK(harvested_energy(c, off, Side::R, 20.0) == Approx(20.0 / 104.0).epsilon(1e-12));
    CHECK(harvested_energy(c, off, Side::T, 20.0) == Approx(std::norm(c.g_t) * 20.0));

    // Constructive alignment of the surface path with the direct path.
    const double av = 0.4, aH = 0.7, ag = 0.1, beta = 0.49;
    const double tv = 0.9, tH = -0.3, tg = 2.2;
    const ChannelSet s = scalar_channels(std::polar(aH, tH), 0.0, std::polar(av, tv), 0.0, std::polar(ag, tg));
    TarcConfig t = TarcConfig::even_split(1);
    t.beta_r(0) = beta;
    t.beta_t(0) = 1.0 - beta;
    t.phi_r(0) = wrap_phase(tg + tv - tH);
    const double expect = std::pow(av * aH * std::sqrt(beta) + ag, 2) * 3.0;
    CHECK(harvested_energy(s, t, Side::R, 3.0) == Approx(expect).epsilon(1e-13));
}

TEST_CASE("secrecy_rate examples") {
    // Bob and Eve see identical channels.
    ChannelSet same = generate_channels(Scenario{}, 4);
    same.v_r = same.h_r;
    same.g_r = same.f_r;
    const auto pm = secrecy_rate(same, TarcConfig::even_split(10), 20.0, 1.0);
    CHECK(pm.rate_r == 0.0);

    // Eve stronger, surface off.
    ChannelSet strong = ChannelSet::zeros(2);
    strong.f_r = strong.f_t = 0.1;
    strong.g_r = strong.g_t = 0.2;
    const auto pm2 = secrecy_rate(strong, TarcConfig::off(2), 20.0, 1.0);
    CHECK(pm2.rate_r == 0.0);
    CHECK(pm2.rate_t == 0.0);
    CHECK(pm2.rate_sum == 0.0);

    const ChannelSet c = generate_channels(Scenario{}, 5);
    const auto ts = secrecy_rate(c, TarcConfig::time_switching(10, 0.0), 20.0, 1.0);
    CHECK(ts.rate_r == 0.0);

    // Formula with the clamp.
    const auto es = secrecy_rate(c, TarcConfig::even_split(10), 20.0, 1.0);
    const double expect_r = std::max(std::log1p(es.snr_bob_r) - std::log1p(es.snr_eve_r), 0.0);
    CHECK(es.rate_r == Approx(expect_r).epsilon(1e-14));
    CHECK(es.rate_sum == Approx(es.rate_r + es.rate_t).epsilon(1e-15));
    CHECK(es.energy_eve_r == Approx(harvested_energy(c, TarcConfig::even_split(10), Side::R, 20.0)));
}

TEST_CASE("clamp holds for random configurations") {
    Rng rng(77);
    Scenario s;
    s.num_elements = 6;
    for (int trial = 0; trial < 200; ++trial) {
        const ChannelSet c = generate_channels(s, rng);
        const TarcConfig t = random_es(6, rng);
        const auto pm = secrecy_rate(c, t, 20.0, 1.0);
        CHECK(pm.rate_r >= 0.0);
        CHECK(pm.rate_t >= 0.0);
        if (pm.snr_bob_r <= pm.snr_eve_r) CHECK(pm.rate_r == 0.0);
        if (pm.snr_bob_t <= pm.snr_eve_t) CHECK(pm.rate_t == 0.0);
    }
}

TEST_CASE("joint scaling of transmit and noise power leaves rates unchanged") {
    Rng rng(78);
    Scenario s;
    s.num_elements = 5;
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelSet c = generate_channels(s, rng);
        const TarcConfig t = random_es(5, rng);
        const double k = 0.01 + 100.0 * uniform01(rng);
        const auto a = secrecy_rate(c, t, 20.0, 1.0);
        const auto b = secrecy_rate(c, t, 20.0 * k, k);
        CHECK(b.snr_bob_r == Approx(a.snr_bob_r).epsilon(1e-12));
        CHECK(b.snr_eve_t == Approx(a.snr_eve_t).epsilon(1e-12));
        CHECK(std::abs(b.rate_sum - a.rate_sum) <= 1e-12 * (1.0 + a.rate_sum));
    }
}

TEST_CASE("gains match a per-term evaluation") {
    Rng rng(79);
    Scenario s;
    s.num_elements = 8;
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelSet c = generate_channels(s, rng);
        const TarcConfig t = random_es(8, rng);
        for (Side side : kSides) {
            Complex gb = c.f(side), ge = c.g(side);
            for (int m = 0; m < 8; ++m) {
                const Complex coef = std::sqrt(t.beta(side)(m)) * std::exp(J * t.phi(side)(m));
                gb += std::conj(c.h(side)(m)) * coef * c.H(m);
                ge += std::conj(c.v(side)(m)) * coef * c.H(m);
            }
            const Node bob = side == Side::R ? Node::BobR : Node::BobT;
            const Node eve = side == Side::R ? Node::EveR : Node::EveT;
            CHECK(snr(c, t, bob, 1.0, 1.0) == Approx(std::norm(gb)).epsilon(1e-12));
            CHECK(snr(c, t, eve, 1.0, 1.0) == Approx(std::norm(ge)).epsilon(1e-12));
        }
    }
}

TEST_CASE("time-switching rates are linear in the time shares") {
    Rng rng(80);
    Scenario s;
    s.num_elements = 4;
    for (int trial = 0; trial < 50; ++trial) {
        const ChannelSet c = generate_channels(s, rng);
        TarcConfig t = TarcConfig::time_switching(4, 0.5);
        for (int m = 0; m < 4; ++m) {
            t.phi_r(m) = 2 * pi * uniform01(rng);
            t.phi_t(m) = 2 * pi * uniform01(rng);
        }
        TarcConfig a = t, b = t;
        a.lambda_r = 1.0;
        a.lambda_t = 0.0;
        b.lambda_r = 0.0;
        b.lambda_t = 1.0;
        const double half = secrecy_rate(c, t, 20.0, 1.0).rate_sum;
        const double sum = secrecy_rate(c, a, 20.0, 1.0).rate_sum + secrecy_rate(c, b, 20.0, 1.0).rate_sum;
        CHECK(sum == Approx(2.0 * half).epsilon(1e-13));
    }
}

TEST_CASE("TarcConfig protocol invariants") {
    TarcConfig es = TarcConfig::even_split(3);
    CHECK_NOTHROW(es.validate());
    es.beta_r(1) = 0.7;
    CHECK_THROWS_AS(es.validate(), std::invalid_argument);

    TarcConfig ms = TarcConfig::even_split(2);
    ms.protocol = Protocol::MS;
    CHECK_THROWS_AS(ms.validate(), std::invalid_argument);
    ms.beta_r << 1.0, 0.0;
    ms.beta_t << 0.0, 1.0;
    CHECK_NOTHROW(ms.validate());

    TarcConfig ts = TarcConfig::time_switching(2, 0.3);
    CHECK_NOTHROW(ts.validate());
    ts.lambda_t = 0.6;
    CHECK_THROWS_AS(ts.validate(), std::invalid_argument);

    TarcConfig ris = TarcConfig::reflect_only(2);
    CHECK_NOTHROW(ris.validate());
    ris.beta_t(0) = 0.5;
    CHECK_THROWS_AS(ris.validate(), std::invalid_argument);

    TarcConfig none = TarcConfig::off(2);
    CHECK_NOTHROW(none.validate());
    none.beta_r(0) = 0.1;
    CHECK_THROWS_AS(none.validate(), std::invalid_argument);
}

TEST_CASE("wrap_phase") {
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(2 * pi) == Approx(0.0));
    CHECK(wrap_phase(-pi / 2) == Approx(1.5 * pi));
    CHECK(wrap_phase(5 * pi) == Approx(pi));
}

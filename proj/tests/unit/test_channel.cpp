// SPDX-License-Identifier: Apache-2.0
//
// cfris - performance evaluation of RIS-assisted cell-free massive MIMO
// Copyright (C) 2026 The cfris authors
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

#include <catch_amalgamated.hpp>

#include "cfris/channel.hpp"
#include "cfris/random.hpp"
#include "support.hpp"

using namespace cfris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    // Power series of J0, summed in long double (converges for every x used here).
    double j0_series(double x)
    {
        long double term = 1.0L, sum = 1.0L;
        const long double q = static_cast<long double>(x) * x / 4.0L;
        for (int k = 1; k < 200; ++k)
        {
            term *= -q / (static_cast<long double>(k) * k);
            sum += term;
        }
        return static_cast<double>(sum);
    }

    arma::cx_mat sample_cov(const std::vector<arma::cx_vec> &a, const std::vector<arma::cx_vec> &b)
    {
        arma::cx_mat S(a[0].n_elem, b[0].n_elem, arma::fill::zeros);
        for (std::size_t i = 0; i < a.size(); ++i)
            S += a[i] * b[i].t();
        return S / static_cast<double>(a.size());
    }
}

TEST_CASE("Bessel J0 against its power series", "[channel]")
{
    for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 2.404825557695773, 3.0, 5.0, 7.5, 10.0})
        CHECK_THAT(bessel_j0(x), WithinAbs(j0_series(x), 1e-12));
    CHECK_THAT(bessel_j0(2.404825557695773), WithinAbs(0.0, 1e-9));
}

TEST_CASE("temporal correlation", "[channel]")
{
    const double fc = 1.9e9, Ts = 1e-5;
    const double v = kmh_to_mps(120.0);
    for (std::size_t lag : {0u, 1u, 7u, 50u, 183u})
    {
        const AgingValue a = temporal_corr(v, fc, Ts, lag);
        const double x = 2.0 * pi * (v * fc / speed_of_light) * Ts * static_cast<double>(lag);
        CHECK_THAT(a.rho, WithinAbs(j0_series(x), 1e-12));
        CHECK_THAT(a.rho * a.rho + a.rho_bar * a.rho_bar, WithinAbs(1.0, 1e-14));
        CHECK(a.rho_bar >= 0.0);
    }
    const AgingValue still = temporal_corr(0.0, fc, Ts, 150);
    CHECK(still.rho == 1.0);
    CHECK(still.rho_bar == 0.0);

    // lag at which the argument equals the first zero of J0
    const double lag_zero = 2.404825557695773 / (2.0 * pi * (v * fc / speed_of_light) * Ts);
    const double v_exact = 2.404825557695773 * speed_of_light / (2.0 * pi * fc * Ts * 100.0);
    CHECK(lag_zero > 100.0);
    CHECK_THAT(temporal_corr(v_exact, fc, Ts, 100).rho, WithinAbs(0.0, 1e-9));

    SystemConfig c = testing::unit_config();
    c.velocities = {0.0, kmh_to_mps(30.0), kmh_to_mps(120.0)};
    const AgingTable tab(c);
    CHECK(tab.max_lag() == c.tau_c);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t lag = 0; lag <= c.tau_c; lag += 13)
            CHECK(tab.rho(k, lag) == temporal_corr(c.user_velocity(k), c.f_c, c.T_s, lag).rho);
}

TEST_CASE("EMI power", "[channel]")
{
    SystemConfig c = testing::unit_config(1, 1, 1);
    c.rho_sir_db = 0.0;
    Topology t = testing::unit_topology(c);
    t.beta_ap_ris(0, 0) = 1.0;
    t.beta_user_ris(0, 0) = 1.0;
    CHECK_THAT(emi_power(t, c)[0], WithinRel(1.0, 1e-15)); // unit reduction

    SystemConfig c2 = testing::unit_config(3, 3, 2);
    const Topology t2 = testing::unit_topology(c2);
    const auto base = emi_power(t2, c2);
    SystemConfig louder = c2;
    louder.rho_sir_db = c2.rho_sir_db + 10.0;
    SystemConfig hotter = c2;
    hotter.p_u = 4.0 * c2.p_u;
    for (std::size_t j = 0; j < 2; ++j)
    {
        const double sm = arma::accu(t2.beta_ap_ris.col(j)), sk = arma::accu(t2.beta_user_ris.col(j));
        CHECK_THAT(base[j], WithinRel(std::sqrt(c2.p_u * c2.p_d * sm * sk / 9.0) / c2.rho_linear(), 1e-14));
        CHECK_THAT(emi_power(t2, louder)[j], WithinRel(base[j] / 10.0, 1e-13));
        CHECK_THAT(emi_power(t2, hotter)[j], WithinRel(2.0 * base[j], 1e-14));
    }
    SystemConfig off = c2;
    off.rho_sir_db = std::numeric_limits<double>::infinity();
    for (double s : emi_power(t2, off))
        CHECK(s == 0.0);
}

TEST_CASE("EMI draws", "[channel]")
{
    const SystemConfig c = testing::unit_config();
    const CorrelationSet corr = build_correlation(c);
    RandomStream r(3);
    CHECK(arma::norm(draw_emi(corr, 0, 0.0, r)) == 0.0);

    const std::size_t T = 40000;
    std::vector<arma::cx_vec> x(T);
    for (auto &v : x)
        v = draw_emi(corr, 0, 0.7, r);
    const arma::cx_mat target = corr.area * 0.7 * corr.R_ris[0];
    CHECK(testing::max_z(sample_cov(x, x), target, T) < 5.0);
}

TEST_CASE("zero velocity freezes the channel", "[channel]")
{
    SystemConfig c = testing::unit_config();
    c.velocity = 0.0;
    const Topology t = testing::unit_topology(c);
    const CorrelationSet corr = build_correlation(c);
    const AgingTable aging(c);
    const ChannelBlock b = draw_block(t, corr, c, aging, emi_power(t, c), RandomStream(4), {}, c.reference_instant());
    for (std::size_t n : {1u, 5u, 17u, 40u})
        for (std::size_t m = 0; m < c.M; ++m)
            for (std::size_t k = 0; k < c.K; ++k)
                CHECK(arma::norm(b.g(m, k, n) - b.g_ref(m, k)) == 0.0);
    CHECK_THROWS_AS(draw_block(t, corr, c, aging, emi_power(t, c), RandomStream(4), {3}, 5).slot(4),
                    std::out_of_range);
}

TEST_CASE("channel covariance, aging cross-covariance and EMI independence", "[channel]")
{
    SystemConfig c = testing::unit_config(2, 2, 1);
    c.velocity = kmh_to_mps(120.0);
    const Topology t = testing::unit_topology(c);
    const CorrelationSet corr = build_correlation(c);
    const Covariances cov = build_covariances(t, corr);
    const AgingTable aging(c);
    const auto s2 = emi_power(t, c);
    const std::size_t ref = 5, n = 30, T = 30000;

    std::vector<arma::cx_vec> g_ref(T), g_n(T), g_d(T), emi_a(T), emi_b(T);
    const RandomStream root(11);
    for (std::size_t i = 0; i < T; ++i)
    {
        const ChannelBlock b = draw_block(t, corr, c, aging, s2, root.derive("trial", i), {ref, n, n + 1}, ref);
        g_ref[i] = b.g_ref(1, 0);
        g_n[i] = b.g(1, 0, n);
        g_d[i] = b.g_d(1, 0, n);
        emi_a[i] = b.emi[b.slot(n)][0];
        emi_b[i] = b.emi[b.slot(n + 1)][0];
    }
    const double rho = aging.rho(0, n - ref);
    REQUIRE(std::abs(rho) > 0.2);
    CHECK(testing::max_z(sample_cov(g_n, g_n), cov.Delta(1, 0), T) < 5.0);
    CHECK(testing::max_z(sample_cov(g_d, g_d), cov.Delta_d(1, 0), T) < 5.0);
    // E{g[n] g[ref]^H} = rho Delta; per-entry standard error is bounded by that of the covariance
    CHECK(testing::max_z(sample_cov(g_n, g_ref), rho * cov.Delta(1, 0), cov.Delta(1, 0), cov.Delta(1, 0), T) < 5.0);

    const arma::cx_mat R_emi = corr.area * s2[0] * corr.R_ris[0];
    CHECK(testing::max_z(sample_cov(emi_a, emi_a), R_emi, T) < 5.0);
    CHECK(testing::max_z(sample_cov(emi_a, emi_b), arma::zeros<arma::cx_mat>(c.L(), c.L()), R_emi, R_emi, T) < 5.0);
}

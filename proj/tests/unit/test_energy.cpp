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

#include <sstream>

#include "cfris/energy.hpp"
#include "cfris/error.hpp"
#include "cfris/harness.hpp"
#include "cfris/model.hpp"

using namespace cfris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    PowerInputs flat_inputs(const SystemConfig &c)
    {
        PowerInputs in;
        in.pilot_power_d.assign(c.K, c.p_p);
        in.pilot_power_c.assign(c.K, c.p_p);
        in.eta_ul.assign(c.K, 1.0);
        in.trace_Q.ones(c.M, c.K);
        in.eta_dl.set_size(c.M, c.K);
        in.eta_dl.fill(1.0 / static_cast<double>(c.K));
        return in;
    }
}

TEST_CASE("sum SE", "[energy]")
{
    CHECK(sum_se({1.0, 2.0}, {3.0, 4.0}) == 5.0);
    CHECK(sum_se({0.0, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK_THAT(sum_se({0.3, 1.7, 2.2}, {0.3, 1.7, 2.2}), WithinRel(4.2, 1e-15));
    CHECK_THROWS_AS(sum_se({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("power terms with the default constants", "[energy]")
{
    const SystemConfig c; // M = 20, N = 2, K = 20
    const PowerModel pm;
    const PowerInputs in = flat_inputs(c);
    const EEReport r = total_power(pm, c, in, 10.0);
    CHECK_THAT(r.p_tc, WithinRel(42.0, 1e-15));
    CHECK(r.p_fix == 18.0);

    const double B = c.bandwidth, M = 20, N = 2, K = 20, tp = 8, tc = 200;
    CHECK_THAT(r.p_ce, WithinRel(4 * M * B * tp * N * K / (tc * 12.8e9), 1e-14));
    CHECK_THAT(r.p_cd, WithinRel(B * 10.0 * 0.2e-9, 1e-14));
    CHECK_THAT(r.p_bh, WithinRel(M * B * 10.0 * 0.25e-9, 1e-14));
    CHECK_THAT(r.p_lp, WithinRel(M * B * (1 - 2 * tp / tc) * 2 * N * K / 12.8e9 + M * 3 * B * N * K / (tc * 12.8e9), 1e-14));
    CHECK_THAT(r.p_pilot, WithinRel(2 * K * c.p_p / 0.3, 1e-14));
    CHECK_THAT(r.p_ul, WithinRel(K * c.p_u / 0.3, 1e-14));
    CHECK_THAT(r.p_dl, WithinRel(M * c.p_d / 0.39, 1e-14)); // every AP at full power
    const double expect = 4 * tp / (2 * tc) * r.p_pilot + (tc - 2 * tp) / (2 * tc) * (r.p_ul + r.p_dl) +
                          18.0 + 42.0 + r.p_ce + r.p_cd + r.p_bh + r.p_lp;
    CHECK_THAT(r.p_total, WithinRel(expect, 1e-14));
    CHECK(r.ee == B * 10.0 / r.p_total);
}

TEST_CASE("zero throughput costs power but earns nothing", "[energy]")
{
    const SystemConfig c;
    const EEReport r = total_power(PowerModel{}, c, flat_inputs(c), 0.0);
    CHECK(r.p_cd == 0.0);
    CHECK(r.p_bh == 0.0);
    CHECK(r.p_total > 0.0);
    CHECK(r.ee == 0.0);
}

TEST_CASE("AP-proportional terms scale with M", "[energy]")
{
    SystemConfig a;
    SystemConfig b = a;
    b.M = 2 * a.M;
    const PowerModel pm;
    const EEReport ra = total_power(pm, a, flat_inputs(a), 7.0);
    const EEReport rb = total_power(pm, b, flat_inputs(b), 7.0);
    CHECK_THAT(rb.p_tc - static_cast<double>(b.K) * pm.P_user, WithinRel(2.0 * (ra.p_tc - static_cast<double>(a.K) * pm.P_user), 1e-14));
    CHECK_THAT(rb.p_ce, WithinRel(2.0 * ra.p_ce, 1e-14));
    CHECK_THAT(rb.p_lp, WithinRel(2.0 * ra.p_lp, 1e-14));
    CHECK_THAT(rb.p_bh, WithinRel(2.0 * ra.p_bh, 1e-14));
    CHECK(rb.p_cd == ra.p_cd);
    CHECK(rb.p_fix == ra.p_fix);
}

TEST_CASE("power model keys", "[energy]")
{
    std::istringstream in("P_FIX_w = 20\nP_bh_w_per_gbps = 0.5\ntheta_ap = 0.5\n");
    KeyValueFile f = KeyValueFile::parse(in, "test");
    const PowerModel pm = power_model_from(f);
    CHECK(pm.P_FIX == 20.0);
    CHECK_THAT(pm.P_bh, WithinRel(0.5e-9, 1e-15));
    CHECK(pm.theta_ap == 0.5);
    PowerModel bad;
    bad.theta_user = 0.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("faster users lower the energy efficiency", "[energy]")
{
    for (std::size_t drop = 0; drop < 3; ++drop)
    {
        SystemConfig slow;
        SystemConfig fast = slow;
        fast.velocity = kmh_to_mps(120.0);
        const Topology t = draw_drop_topology(slow, 5, drop);
        EvaluationOptions opt;
        const auto a = evaluate_drop(build_drop_model(slow, t, EstimationScheme::two_phase), PowerModel{}, opt, RandomStream(1));
        const auto b = evaluate_drop(build_drop_model(fast, t, EstimationScheme::two_phase), PowerModel{}, opt, RandomStream(1));
        CHECK(b.energy.ee < a.energy.ee);
        CHECK_THAT(a.energy.ee * a.energy.p_total, WithinRel(slow.bandwidth * a.se_sum, 1e-14));
    }
}

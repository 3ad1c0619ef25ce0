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

#include <benchmark/benchmark.h>

#include "cfris/downlink.hpp"
#include "cfris/harness.hpp"
#include "cfris/model.hpp"
#include "cfris/montecarlo.hpp"
#include "cfris/uplink.hpp"

using namespace cfris;

namespace
{
    SystemConfig config_for(benchmark::State &state)
    {
        SystemConfig c;
        c.M = static_cast<std::size_t>(state.range(0));
        c.velocity = kmh_to_mps(60.0);
        return c;
    }

    // Small enough that one Monte-Carlo block costs microseconds.
    SystemConfig small()
    {
        SystemConfig c;
        c.M = 4;
        c.K = 4;
        c.J = 1;
        c.set_ris_elements(4);
        c.tau_p = 2;
        c.area_km = 0.1;
        return c;
    }
}

static void BM_draw_topology(benchmark::State &state)
{
    const SystemConfig c = config_for(state);
    std::size_t d = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(draw_drop_topology(c, 1, d++));
}
BENCHMARK(BM_draw_topology)->Arg(20)->Arg(60);

static void BM_build_drop_model(benchmark::State &state)
{
    const SystemConfig c = config_for(state);
    const Topology t = draw_drop_topology(c, 1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_drop_model(c, t, EstimationScheme::two_phase));
}
BENCHMARK(BM_build_drop_model)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_uplink_sinr_trace(benchmark::State &state)
{
    const SystemConfig c = config_for(state);
    const DropModel d = build_drop_model(c, draw_drop_topology(c, 1, 0), EstimationScheme::two_phase);
    const UplinkTerms t = build_uplink_terms(d, uplink_power_control(d.cov));
    const std::size_t n = d.est.data_instants(c.tau_c);
    const Receiver r = state.range(1) ? Receiver::lsfd : Receiver::mf;
    for (auto _ : state)
        benchmark::DoNotOptimize(uplink_sinr_trace(t, d.aging, n, r));
}
BENCHMARK(BM_uplink_sinr_trace)->Args({20, 1})->Args({20, 0})->Args({40, 1})->Unit(benchmark::kMillisecond);

static void BM_downlink_sinr_trace(benchmark::State &state)
{
    const SystemConfig c = config_for(state);
    const DropModel d = build_drop_model(c, draw_drop_topology(c, 1, 0), EstimationScheme::two_phase);
    const DownlinkTerms t = build_downlink_terms(d, downlink_power_control(d.cov, d.est, c.alpha_dl));
    const std::size_t n = d.est.data_instants(c.tau_c);
    for (auto _ : state)
        benchmark::DoNotOptimize(downlink_sinr_trace(t, d.aging, n));
}
BENCHMARK(BM_downlink_sinr_trace)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_link_moments(benchmark::State &state)
{
    const SystemConfig c = small();
    const DropModel d = build_drop_model(c, draw_drop_topology(c, 1, 0), EstimationScheme::two_phase);
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(accumulate_link_moments(d, trials, RandomStream(2)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_link_moments)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

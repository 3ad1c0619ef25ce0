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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <armadillo>

#include "cfris/config.hpp"
#include "cfris/csv.hpp"
#include "cfris/energy.hpp"
#include "cfris/estimation.hpp"
#include "cfris/model.hpp"
#include "cfris/random.hpp"
#include "cfris/topology.hpp"
#include "cfris/uplink.hpp"

namespace cfris
{
    enum class SweepVariable
    {
        none,
        pilot_power,  // dBm
        velocity,     // km/h, every user
        M,
        N,
        J,
        L,
        rho_db,       // signal-to-EMI ratio, "inf" allowed
        time_instant  // restricts the per-instant output to the listed instants
    };

    std::string to_string(SweepVariable v);
    SweepVariable sweep_variable_from_string(const std::string &s);

    enum class Metric
    {
        nmse,
        se_ul,
        se_dl,
        se_sum,
        ee,
        per_instant
    };

    std::string to_string(Metric m);
    Metric metric_from_string(const std::string &s);

    struct ExperimentSpec
    {
        std::string name = "experiment";
        SystemConfig base;
        PowerModel power;
        SweepVariable sweep = SweepVariable::none;
        std::vector<double> values{0.0};
        std::size_t drops = 1;
        std::size_t trials = 0; // Monte-Carlo blocks per drop; 0 = closed form only
        std::uint64_t seed = 1;
        std::size_t threads = 1;
        std::vector<Metric> metrics{Metric::se_ul, Metric::se_dl};
        std::vector<EstimationScheme> schemes{EstimationScheme::two_phase};
        Receiver receiver = Receiver::lsfd;
        bool uplink_power_control = true;

        bool wants(Metric m) const;
        // Throws config_error on an inconsistent specification.
        void validate() const;
    };

    // Experiment keys (name, sweep, sweep_values, drops, trials, threads, metrics, scheme,
    // receiver, uplink_power_control) plus every system and power-model key. Unknown keys throw.
    ExperimentSpec experiment_from(KeyValueFile &file);

    // Applies one sweep value to a configuration.
    SystemConfig apply_sweep(const SystemConfig &base, SweepVariable v, double value);

    // Stream that fixes the geometry of drop d; independent of the sweep value.
    RandomStream drop_stream(std::uint64_t seed, std::size_t drop);
    Topology draw_drop_topology(const SystemConfig &cfg, std::uint64_t seed, std::size_t drop);

    struct EvaluationOptions
    {
        Receiver receiver = Receiver::lsfd;
        bool uplink_power_control = true;
        std::size_t trials = 0;
        bool se_mc = true;         // Monte-Carlo SE (only when trials > 0)
        bool per_instant = false;  // fill the per-instant traces
    };

    // Everything reported for one drop, one configuration and one estimation scheme.
    struct DropEvaluation
    {
        EstimationScheme scheme = EstimationScheme::two_phase;
        std::size_t reference = 0;
        double nmse = 0.0, nmse_mc = 0.0;
        std::vector<double> se_ul, se_dl, se_ul_mc, se_dl_mc;
        double se_sum = 0.0;
        EEReport energy;
        // Sum over users of log2(1 + SINR_k[n]) for n = reference..tau_c.
        std::vector<double> per_instant_ul, per_instant_dl;
    };

    DropEvaluation evaluate_drop(const DropModel &drop, const PowerModel &pm, const EvaluationOptions &opt,
                                 const RandomStream &mc_rng);

    // Named CSV tables (file name -> table), ordered.
    using Dataset = std::map<std::string, Table>;

    // Runs every (sweep value, drop) job and assembles the requested tables plus summary.csv
    // (mean and linear-interpolation percentiles per sweep value, scheme and metric).
    // Output is independent of the thread count.
    Dataset run_experiment(const ExperimentSpec &spec);

    void write_dataset(const Dataset &data, const std::string &dir);
}

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

#include <vector>

#include <armadillo>

#include "cfris/config.hpp"

namespace cfris
{
    class KeyValueFile;

    // Power-consumption constants (all Watts, or Watts per bit/s; efficiencies unitless).
    struct PowerModel
    {
        double L_AP = 12.8e9;       // computational efficiency (flops/W)
        double theta_ap = 0.39;     // AP power-amplifier efficiency
        double theta_user = 0.3;    // user power-amplifier efficiency
        double P_FIX = 18.0;
        double P_ap = 1.0;          // circuit power per AP antenna
        double P_user = 0.1;        // circuit power per user
        double P_COD = 0.1e-9;      // 0.1 W per Gbit/s
        double P_DEC = 0.1e-9;
        double P_bh = 0.25e-9;      // backhaul, per AP

        void validate() const;
    };

    // Reads power-model keys (Table-I style units: *_w_per_gbps for per-throughput terms).
    PowerModel power_model_from(KeyValueFile &file);

    struct EEReport
    {
        double se_sum = 0.0;  // bit/s/Hz
        double p_pilot = 0.0; // PA power of the pilot phase, before duty-cycle weighting
        double p_ul = 0.0;
        double p_dl = 0.0;
        double p_fix = 0.0, p_tc = 0.0, p_ce = 0.0, p_cd = 0.0, p_bh = 0.0, p_lp = 0.0;
        double p_cp = 0.0;
        double p_total = 0.0;
        double ee = 0.0; // bit/Joule
    };

    // 1/2 sum_k (SE^u_k + SE^d_k)
    double sum_se(const std::vector<double> &se_ul, const std::vector<double> &se_dl);

    // Inputs of the power model that come from the system rather than from the constants.
    struct PowerInputs
    {
        std::vector<double> pilot_power_d, pilot_power_c; // p_k^x
        std::vector<double> eta_ul;                       // eta_k
        arma::mat eta_dl;                                 // M x K
        arma::mat trace_Q;                                // M x K, tr(Q^d + Q^c)
    };

    EEReport total_power(const PowerModel &pm, const SystemConfig &cfg, const PowerInputs &in, double se_sum);
}

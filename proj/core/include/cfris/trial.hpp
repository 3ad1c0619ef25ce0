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

#include "cfris/model.hpp"
#include "cfris/random.hpp"

namespace cfris
{
    // One resource block of a drop, reduced to what the Monte-Carlo oracles need.
    struct TrialRealization
    {
        std::vector<arma::cx_vec> g_ref;      // M*K, g_mk at the reference instant
        std::vector<arma::cx_vec> g_hat;      // M*K, realised estimate of g_mk[ref]
        std::vector<arma::cx_vec> innovation; // M*K, aggregate innovation of one data instant
        std::vector<arma::cx_vec> g_kj;       // K*J, user-RIS channels of that data instant
        std::vector<arma::cx_mat> g_mj_theta; // M*J, g_mj Theta_j
    };

    // Draws channels, pilot observations and estimates for one block. Because innovations are
    // i.i.d. across instants, g_mk[n] = rho_k[n-ref] g_ref + rho_bar_k[n-ref] innovation has the
    // exact joint law of any data instant n.
    TrialRealization realize_trial(const DropModel &drop, const RandomStream &rng);

    struct NmseEstimate
    {
        double closed_form = 0.0;
        double monte_carlo = 0.0;
        std::size_t trials = 0;
    };

    // Empirical sum ||g - g_hat||^2 / sum ||g||^2 over independent blocks (substream t of rng).
    NmseEstimate nmse_monte_carlo(const DropModel &drop, std::size_t trials, const RandomStream &rng);
}

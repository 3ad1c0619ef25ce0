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

#include "cfris/channel.hpp"
#include "cfris/model.hpp"
#include "cfris/uplink.hpp"

namespace cfris
{
    // eta_mk = [ (sum_n tr Delta_nk)^alpha sum_k' tr(Q_mk') / (sum_n tr Delta_nk')^alpha ]^-1 (M x K),
    // which meets sum_k eta_mk tr(Q_mk) = 1 with equality at every AP.
    arma::mat downlink_power_control(const Covariances &cov, const EstimationResult &est, double alpha);

    // Large-scale statistics of the conjugate-beamforming downlink.
    struct DownlinkTerms
    {
        std::size_t M = 0, K = 0;
        double p_d = 0.0, sigma2 = 0.0;
        arma::mat eta;         // M x K
        arma::mat trQ;         // M x K, tr(Q^d_mk + Q^c_mk)
        arma::vec ds_gain;     // K, sum_m sqrt(eta_mk) tr(Q_mk)
        arma::mat ui_static;   // (k, k') = sum_m eta_mk' tr(Q_mk' Delta_mk)
        arma::cx_cube omega_d; // (m, k, k') = tr(Qbar^d_mk'k) = E{g_hat_mk'^H g_mk}, coset pairs only
        arma::cx_cube omega_c;
        arma::vec emi_power;   // K, sum_j beta_kj sigma_j^2 tr(T_j)
        std::vector<std::vector<std::size_t>> coset_d, coset_c, coset_both;
    };

    DownlinkTerms build_downlink_terms(const DropModel &drop, const arma::mat &eta);

    // Closed-form SINR parts for user k at lag n - ref (same layout as the uplink).
    SinrParts downlink_parts(const DownlinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag);

    double downlink_sinr(const DownlinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag);

    arma::mat downlink_sinr_trace(const DownlinkTerms &t, const AgingTable &aging, std::size_t data_instants);

    std::vector<double> downlink_se(const DownlinkTerms &t, const AgingTable &aging, std::size_t data_instants,
                                    std::size_t tau_c);
}

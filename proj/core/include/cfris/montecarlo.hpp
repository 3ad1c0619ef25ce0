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

#include "cfris/downlink.hpp"
#include "cfris/model.hpp"
#include "cfris/random.hpp"
#include "cfris/uplink.hpp"

namespace cfris
{
    // Sample moments of the per-AP products z_m = g_hat_mk^H g_mk'[ref] and u_m = g_hat_mk^H e_mk'
    // (e the aggregate innovation) over independent blocks. Any data instant then follows from
    // z[n] = rho z + rho_bar u, so one set of moments serves every n, both directions, any weights.
    struct LinkMoments
    {
        std::size_t M = 0, K = 0, trials = 0;
        // Per ordered pair (k, k') at index k * K + k'; M x M second moments.
        std::vector<arma::cx_mat> S_zz, S_uu, S_zu;
        std::vector<arma::cx_vec> z_mean, u_mean;
        // Uplink EMI and noise moments per user (M x M), averaged analytically over the EMI and
        // noise vectors of the data instant and empirically over everything else.
        std::vector<arma::cx_mat> S_emi, S_ns;
        // Downlink EMI power at each user, same treatment.
        arma::vec dl_emi;
        // Estimation error and channel energy summed over links and trials (empirical NMSE).
        double error_energy = 0.0, channel_energy = 0.0;

        std::size_t pair(std::size_t k, std::size_t kp) const { return k * K + kp; }
        // Second moment of z[n] at the given aging coefficients.
        arma::cx_mat S_at(std::size_t k, std::size_t kp, double rho, double rho_bar) const;
        arma::cx_vec mean_at(std::size_t k, std::size_t kp, double rho, double rho_bar) const;
        double nmse() const { return channel_energy > 0.0 ? error_energy / channel_energy : 0.0; }
    };

    LinkMoments accumulate_link_moments(const DropModel &drop, std::size_t trials, const RandomStream &rng);

    // Monte-Carlo counterparts of uplink_parts / downlink_parts.
    SinrParts uplink_parts_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging, std::size_t k,
                              std::size_t lag, const arma::cx_vec &a);
    SinrParts downlink_parts_mc(const LinkMoments &mo, const DownlinkTerms &t, const AgingTable &aging,
                                std::size_t k, std::size_t lag);

    // Sample version of E|BU|^2 + E|CA|^2 = E|UI_kk|^2 - E|DS|^2 for user k.
    struct IdentityCheck
    {
        double lhs = 0.0;      // E|BU|^2 + E|CA|^2
        double rhs = 0.0;      // E|UI_kk|^2 - E|DS|^2
        double std_error = 0.0; // standard error of lhs - rhs (which has zero mean)
    };
    IdentityCheck uplink_identity_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging,
                                     std::size_t k, std::size_t lag, const arma::cx_vec &a);

    // Monte-Carlo SE: the closed-form weights with Monte-Carlo moments.
    std::vector<double> uplink_se_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging,
                                     std::size_t data_instants, std::size_t tau_c, Receiver r);
    std::vector<double> downlink_se_mc(const LinkMoments &mo, const DownlinkTerms &t, const AgingTable &aging,
                                       std::size_t data_instants, std::size_t tau_c);
}

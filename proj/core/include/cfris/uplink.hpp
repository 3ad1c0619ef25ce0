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

#include <string>
#include <vector>

#include <armadillo>

#include "cfris/channel.hpp"
#include "cfris/correlation.hpp"
#include "cfris/model.hpp"

namespace cfris
{
    enum class Receiver
    {
        lsfd, // SINR-maximising large-scale fading decoding weights
        mf    // equal weights 1/M
    };

    std::string to_string(Receiver r);
    Receiver receiver_from_string(const std::string &s);

    // eta_k = K sum_m tr(Delta_mk) / sum_mk' tr(Delta_mk'), so that sum_k eta_k = K.
    std::vector<double> uplink_power_control(const Covariances &cov);

    // Large-scale statistics entering the uplink SINR of every user.
    struct UplinkTerms
    {
        std::size_t M = 0, K = 0;
        double p_u = 0.0;
        std::vector<double> eta;
        arma::mat b;             // M x K, b_k[m] = tr(Q^d_mk + Q^c_mk)
        arma::cube upsilon;      // (m, k, k') = tr((Q^d_mk + Q^c_mk) Delta_mk')
        arma::cx_cube omega_d;   // (m, k, k') = tr(Qbar^d_mkk'), zero unless k' shares k's direct pilot
        arma::cx_cube omega_c;   // same for the cascaded sub-phase
        arma::mat gamma;         // M x K, EMI diagonal
        arma::mat lambda;        // M x K, noise diagonal sigma^2 b_k[m]
        std::vector<std::vector<std::size_t>> coset_d, coset_c, coset_both;

        arma::cx_vec Omega_d(std::size_t k, std::size_t kp) const { return column(omega_d, k, kp); }
        arma::cx_vec Omega_c(std::size_t k, std::size_t kp) const { return column(omega_c, k, kp); }
        // Omega^d (Omega^c)^H + Omega^c (Omega^d)^H with zeroed diagonal.
        arma::cx_mat H(std::size_t k, std::size_t kp) const;

    private:
        static arma::cx_vec column(const arma::cx_cube &c, std::size_t k, std::size_t kp);
    };

    UplinkTerms build_uplink_terms(const DropModel &drop, const std::vector<double> &eta);

    // The four expectations of the UatF SINR for one user at lag n - ref.
    struct SinrParts
    {
        double ds = 0.0;  // E{|DS|^2}
        double ui = 0.0;  // sum_k' E{|UI_kk'|^2}, including k' = k
        double emi = 0.0; // E{|EMI|^2}
        double ns = 0.0;  // E{|NS|^2}
        double sinr() const { return ds / (ui - ds + emi + ns); }
    };

    arma::cx_vec mf_weights(std::size_t M);
    arma::cx_vec lsfd_weights(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag);
    arma::cx_vec uplink_weights(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag,
                                Receiver r);

    // Interference-plus-signal matrix p_u(sum eta Upsilon + contamination terms) at the given lag.
    arma::cx_mat uplink_ui_matrix(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag);

    SinrParts uplink_parts(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag,
                           const arma::cx_vec &a);

    double uplink_sinr(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag, Receiver r);

    // K x (tau_c - ref + 1) matrix of SINR_k[n], n = ref..tau_c.
    arma::mat uplink_sinr_trace(const UplinkTerms &t, const AgingTable &aging, std::size_t data_instants,
                                Receiver r);

    // (1/tau_c) sum_n log2(1 + SINR[n]) for each row.
    std::vector<double> se_from_sinr(const arma::mat &sinr, std::size_t tau_c);

    std::vector<double> uplink_se(const UplinkTerms &t, const AgingTable &aging, std::size_t data_instants,
                                  std::size_t tau_c, Receiver r);
}

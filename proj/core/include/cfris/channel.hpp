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
#include "cfris/correlation.hpp"
#include "cfris/random.hpp"
#include "cfris/topology.hpp"

namespace cfris
{
    struct AgingValue
    {
        double rho = 1.0;     // J0(2 pi f_D T_s lag)
        double rho_bar = 0.0; // sqrt(1 - rho^2)
    };

    double bessel_j0(double x);

    // Temporal correlation of a user moving at v (m/s) after `lag` instants.
    AgingValue temporal_corr(double v, double f_c, double T_s, std::size_t lag);

    // rho_k[lag] for every user and lag = 0..tau_c.
    class AgingTable
    {
    public:
        AgingTable() = default;
        explicit AgingTable(const SystemConfig &cfg);

        double rho(std::size_t k, std::size_t lag) const { return rho_(k, lag); }
        double rho_bar(std::size_t k, std::size_t lag) const { return rho_bar_(k, lag); }
        std::size_t max_lag() const { return rho_.n_cols - 1; }

    private:
        arma::mat rho_, rho_bar_;
    };

    // sigma_j^2 = sqrt(p_u p_d sum_m beta_mj sum_k beta_kj / (M K rho^2)); zero with EMI off.
    std::vector<double> emi_power(const Topology &topo, const SystemConfig &cfg);

    // One draw of n_j ~ CN(0, A sigma_j^2 R_j).
    arma::cx_vec draw_emi(const CorrelationSet &corr, std::size_t j, double sigma_j2, RandomStream &rng);

    // Channel realisations of one resource block, anchored at a reference instant:
    //   g^d_mk[n] = rho_k g^d_mk[ref] + rho_bar_k e^d_mk[n]
    //   g_kj[n]   = rho_k g_kj[ref]   + rho_bar_k e_kj[n]          (g_mj static)
    // with rho_k = rho_k[|n - ref|] and fresh innovations per materialised instant.
    class ChannelBlock
    {
    public:
        std::size_t M = 0, K = 0, J = 0, N = 0, L = 0;
        std::size_t reference = 0;          // 1-based
        std::vector<std::size_t> instants;  // 1-based, materialised instants

        std::vector<arma::cx_vec> g_d_ref;  // M*K
        std::vector<arma::cx_mat> g_mj;     // M*J, N x L, static
        std::vector<arma::cx_mat> g_mj_theta; // M*J, g_mj Theta_j
        std::vector<arma::cx_vec> g_kj_ref; // K*J

        // Indexed [instant slot][link].
        std::vector<std::vector<arma::cx_vec>> e_d;  // M*K innovations, covariance beta^d R
        std::vector<std::vector<arma::cx_vec>> e_kj; // K*J innovations, covariance beta_kj A R_j
        std::vector<std::vector<arma::cx_vec>> emi;  // J
        arma::mat rho, rho_bar;                      // K x slots
        std::vector<double> sigma_j2;

        std::size_t slot(std::size_t n) const; // throws std::out_of_range if n is not materialised

        arma::cx_vec g_d(std::size_t m, std::size_t k, std::size_t n) const;
        arma::cx_vec g_kj(std::size_t k, std::size_t j, std::size_t n) const;
        arma::cx_vec g_c(std::size_t m, std::size_t k, std::size_t j, std::size_t n) const;
        arma::cx_vec g_c_total(std::size_t m, std::size_t k, std::size_t n) const;
        arma::cx_vec g(std::size_t m, std::size_t k, std::size_t n) const;

        // States at the reference instant.
        arma::cx_vec g_c_ref(std::size_t m, std::size_t k) const;
        arma::cx_vec g_ref(std::size_t m, std::size_t k) const { return g_d_ref[m * K + k] + g_c_ref(m, k); }

        // Aggregate innovation e^d + sum_j g_mj Theta_j e_kj at instant n.
        arma::cx_vec innovation(std::size_t m, std::size_t k, std::size_t n) const;

        // sum_j g_mj Theta_j n_j[n]
        arma::cx_vec emi_at_ap(std::size_t m, std::size_t n) const;
    };

    // Materialises the given 1-based instants (all of 1..tau_c when empty).
    ChannelBlock draw_block(const Topology &topo, const CorrelationSet &corr, const SystemConfig &cfg,
                            const AgingTable &aging, const std::vector<double> &sigma_j2, const RandomStream &rng,
                            std::vector<std::size_t> instants = {}, std::size_t reference = 0);
}

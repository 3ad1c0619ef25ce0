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
#include "cfris/topology.hpp"

namespace cfris
{
    // [R]_nm = sinc(2 |u_n - u_m| / lambda_c) for element positions
    // u_y = [0, mod(y-1, L_h) d_H, floor((y-1)/L_h) d_V], sinc(x) = sin(pi x)/(pi x).
    arma::mat ris_sinc_correlation(std::size_t L_h, std::size_t L_v, double d_H, double d_V, double lambda_c);

    // [R]_ab = r^|a-b|, 0 <= r < 1.
    arma::mat ap_exponential_correlation(std::size_t N, double r);

    // A^2 R^{1/2} Theta R Theta^H R^{1/2}.
    arma::cx_mat build_T_j(const arma::cx_mat &R_j, const arma::cx_mat &Theta_j, double A_j);

    // Static spatial structure of one system: RIS correlation, phase matrices and the
    // AP-side correlation (one exponential matrix shared by every AP-user and AP-RIS link).
    struct CorrelationSet
    {
        std::vector<arma::cx_mat> R_ris;      // J, L x L, unit diagonal
        std::vector<arma::cx_mat> R_ris_sqrt; // J
        std::vector<arma::cx_mat> Theta;      // J, diagonal
        std::vector<arma::cx_mat> T;          // J
        std::vector<double> trace_T;          // J
        double area = 0.0;                    // element area d_V d_H (m^2)
        arma::cx_mat R_ap;                    // N x N
        arma::cx_mat R_ap_sqrt;

        std::size_t J() const { return R_ris.size(); }
        // Correlation of AP m towards user k and towards RIS j (identical by model choice).
        const arma::cx_mat &R_mk(std::size_t, std::size_t) const { return R_ap; }
        const arma::cx_mat &R_mj_r(std::size_t, std::size_t) const { return R_ap; }
    };

    // Uniform phase ris_phase with amplitude ris_amplitude on every element.
    CorrelationSet build_correlation(const SystemConfig &cfg);

    // Same, with explicit per-RIS diagonal phase-shift matrices (J entries, L x L each).
    CorrelationSet build_correlation(const SystemConfig &cfg, const std::vector<arma::cx_mat> &Theta);

    // Per-link covariance matrices, stored at index m * K + k.
    struct Covariances
    {
        std::size_t M = 0, K = 0;
        std::vector<arma::cx_mat> direct;   // beta^d_mk R_mk
        std::vector<arma::cx_mat> cascaded; // sum_j beta_mj beta_kj tr(T_j) R_mj,r
        std::vector<arma::cx_mat> total;
        arma::mat tr_direct, tr_cascaded, tr_total; // M x K traces

        std::size_t idx(std::size_t m, std::size_t k) const { return m * K + k; }
        const arma::cx_mat &Delta(std::size_t m, std::size_t k) const { return total[idx(m, k)]; }
        const arma::cx_mat &Delta_d(std::size_t m, std::size_t k) const { return direct[idx(m, k)]; }
        const arma::cx_mat &Delta_c(std::size_t m, std::size_t k) const { return cascaded[idx(m, k)]; }
    };

    Covariances build_covariances(const Topology &topo, const CorrelationSet &corr);
}

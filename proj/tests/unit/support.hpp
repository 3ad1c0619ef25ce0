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

#include <cmath>

#include <armadillo>

#include "cfris/config.hpp"
#include "cfris/correlation.hpp"
#include "cfris/topology.hpp"

namespace cfris::testing
{
    // Unit-scale system whose RIS path is comparable to the direct path, so that cascaded,
    // EMI and coset terms are all visible. Geometry is irrelevant; only the betas matter.
    inline SystemConfig unit_config(std::size_t M = 3, std::size_t K = 3, std::size_t J = 1, std::size_t tau_p = 2)
    {
        SystemConfig c;
        c.M = M;
        c.N = 2;
        c.K = K;
        c.J = J;
        c.L_h = 2;
        c.L_v = 2;
        c.tau_p = tau_p;
        c.tau_c = 40;
        c.p_p = 1.0;
        c.p_u = 1.0;
        c.p_d = 1.0;
        c.sigma2 = 0.2;
        c.rho_sir_db = 10.0;
        c.velocity = kmh_to_mps(60.0);
        c.validate();
        return c;
    }

    // Betas drawn from a fixed pattern; the RIS links are scaled so that
    // beta_mj beta_kj tr(T_j) is of the order of beta^d.
    inline Topology unit_topology(const SystemConfig &c, double ris_gain = 1.0)
    {
        Topology t;
        t.ap_pos.resize(c.M);
        t.user_pos.resize(c.K);
        t.ris_pos.resize(c.J);
        t.beta_d.set_size(c.M, c.K);
        t.beta_ap_ris.set_size(c.M, c.J);
        t.beta_user_ris.set_size(c.K, c.J);
        const CorrelationSet corr = build_correlation(c);
        const double trT = c.J > 0 ? corr.trace_T[0] : 1.0;
        const double s = std::sqrt(ris_gain / trT);
        for (std::size_t m = 0; m < c.M; ++m)
            for (std::size_t k = 0; k < c.K; ++k)
                t.beta_d(m, k) = 0.3 + 0.7 * std::fmod(0.37 * static_cast<double>(m * c.K + k) + 0.11, 1.0);
        for (std::size_t j = 0; j < c.J; ++j)
        {
            for (std::size_t m = 0; m < c.M; ++m)
                t.beta_ap_ris(m, j) = s * (0.5 + 0.1 * static_cast<double>((m + j) % 3));
            for (std::size_t k = 0; k < c.K; ++k)
                t.beta_user_ris(k, j) = s * (0.6 + 0.2 * static_cast<double>((k + 2 * j) % 3));
        }
        return t;
    }

    // Largest entrywise deviation of a sample covariance from its target, in units of the
    // per-entry standard error sqrt(Sigma_aa Sigma_bb / T) (exact for circular Gaussians).
    inline double max_z(const arma::cx_mat &sample, const arma::cx_mat &target, std::size_t trials)
    {
        double z = 0.0;
        for (arma::uword a = 0; a < target.n_rows; ++a)
            for (arma::uword b = 0; b < target.n_cols; ++b)
            {
                const double se = std::sqrt(std::real(target(a, a)) * std::real(target(b, b)) /
                                            static_cast<double>(trials));
                z = std::max(z, std::abs(sample(a, b) - target(a, b)) / se);
            }
        return z;
    }

    // Cross-covariance version: the standard error uses the marginal covariances A and B
    // (conservative by at most sqrt(2) when the cross term is large).
    inline double max_z(const arma::cx_mat &sample, const arma::cx_mat &target, const arma::cx_mat &A,
                        const arma::cx_mat &B, std::size_t trials)
    {
        double z = 0.0;
        for (arma::uword a = 0; a < target.n_rows; ++a)
            for (arma::uword b = 0; b < target.n_cols; ++b)
            {
                const double var = std::real(A(a, a)) * std::real(B(b, b)) + std::norm(target(a, b));
                z = std::max(z, std::abs(sample(a, b) - target(a, b)) / std::sqrt(var / static_cast<double>(trials)));
            }
        return z;
    }
}

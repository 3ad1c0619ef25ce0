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

#include "cfris/downlink.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfris/linalg.hpp"

namespace cfris
{
    arma::mat downlink_power_control(const Covariances &cov, const EstimationResult &est, double alpha)
    {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("downlink_power_control: alpha must lie in [0,1]");
        const arma::mat trQ = est.trace_Q_total();
        const arma::rowvec S = arma::pow(arma::sum(cov.tr_total, 0), alpha); // (sum_n tr Delta_nk)^alpha
        arma::mat eta(cov.M, cov.K);
        for (std::size_t m = 0; m < cov.M; ++m)
        {
            double acc = 0.0;
            for (std::size_t kp = 0; kp < cov.K; ++kp)
                acc += trQ(m, kp) / S(kp);
            for (std::size_t k = 0; k < cov.K; ++k)
                eta(m, k) = 1.0 / (S(k) * acc);
        }
        return eta;
    }

    DownlinkTerms build_downlink_terms(const DropModel &d, const arma::mat &eta)
    {
        const auto &est = d.est;
        const std::size_t M = d.cov.M, K = d.cov.K;
        if (eta.n_rows != M || eta.n_cols != K)
            throw std::invalid_argument("build_downlink_terms: eta must be M x K");
        DownlinkTerms t;
        t.M = M;
        t.K = K;
        t.p_d = d.cfg.p_d;
        t.sigma2 = d.cfg.sigma2;
        t.eta = eta;
        t.trQ = est.trace_Q_total();
        t.ds_gain = arma::sum(arma::sqrt(eta) % t.trQ, 0).t();
        t.ui_static.zeros(K, K);
        t.omega_d.zeros(M, K, K);
        t.omega_c.zeros(M, K, K);
        t.coset_d = est.direct.coset;
        t.coset_c = est.cascaded.coset;
        t.coset_both.resize(K);
        for (std::size_t k = 0; k < K; ++k)
            std::set_intersection(t.coset_d[k].begin(), t.coset_d[k].end(), t.coset_c[k].begin(), t.coset_c[k].end(),
                                  std::back_inserter(t.coset_both[k]));

        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t kp = 0; kp < K; ++kp)
            {
                const arma::cx_mat Q = est.Q_total(m, kp);
                for (std::size_t k = 0; k < K; ++k)
                    t.ui_static(k, kp) += eta(m, kp) * trace_product(Q, d.cov.Delta(m, k));
            }
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t m = 0; m < M; ++m)
            {
                for (std::size_t kp : t.coset_d[k])
                    t.omega_d(m, k, kp) = est.direct.trace_bar(kp, k, m);
                for (std::size_t kp : t.coset_c[k])
                    t.omega_c(m, k, kp) = est.cascaded.trace_bar(kp, k, m);
            }
        t.emi_power.zeros(K);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t j = 0; j < d.topo.J(); ++j)
                t.emi_power(k) += d.topo.beta_user_ris(k, j) * d.sigma_j2[j] * d.corr.trace_T[j];
        return t;
    }

    SinrParts downlink_parts(const DownlinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag)
    {
        const double r2 = std::pow(aging.rho(k, lag), 2);
        const double rb2 = std::pow(aging.rho_bar(k, lag), 2);
        SinrParts p;
        p.ds = t.p_d * r2 * t.ds_gain(k) * t.ds_gain(k);

        // Aged and unaged parts of the variance term, kept separate as in the closed form.
        double ui = 0.0;
        for (std::size_t kp = 0; kp < t.K; ++kp)
            ui += rb2 * t.ui_static(k, kp) + r2 * t.ui_static(k, kp);

        auto weighted = [&](const arma::cx_cube &om, std::size_t kp)
        {
            std::complex<double> s = 0.0;
            for (std::size_t m = 0; m < t.M; ++m)
                s += std::sqrt(t.eta(m, kp)) * om(m, k, kp);
            return s;
        };
        for (std::size_t kp : t.coset_both[k])
        {
            double h = 0.0;
            for (std::size_t m = 0; m < t.M; ++m)
                for (std::size_t n = 0; n < t.M; ++n)
                    if (n != m)
                        h += std::sqrt(t.eta(m, kp) * t.eta(n, kp)) *
                             std::real(t.omega_d(m, k, kp) * std::conj(t.omega_c(n, k, kp)) +
                                       t.omega_c(m, k, kp) * std::conj(t.omega_d(n, k, kp)));
            ui += r2 * h;
        }
        for (std::size_t kp : t.coset_d[k])
            ui += r2 * std::norm(weighted(t.omega_d, kp));
        for (std::size_t kp : t.coset_c[k])
            ui += r2 * std::norm(weighted(t.omega_c, kp));

        p.ui = t.p_d * ui;
        p.emi = t.emi_power(k);
        p.ns = t.sigma2;
        return p;
    }

    double downlink_sinr(const DownlinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag)
    {
        return downlink_parts(t, aging, k, lag).sinr();
    }

    arma::mat downlink_sinr_trace(const DownlinkTerms &t, const AgingTable &aging, std::size_t data_instants)
    {
        arma::mat s(t.K, data_instants);
        for (std::size_t k = 0; k < t.K; ++k)
            for (std::size_t lag = 0; lag < data_instants; ++lag)
                s(k, lag) = downlink_sinr(t, aging, k, lag);
        return s;
    }

    std::vector<double> downlink_se(const DownlinkTerms &t, const AgingTable &aging, std::size_t data_instants,
                                    std::size_t tau_c)
    {
        return se_from_sinr(downlink_sinr_trace(t, aging, data_instants), tau_c);
    }
}

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

#include "cfris/montecarlo.hpp"

#include <cmath>

#include "cfris/trial.hpp"

namespace cfris
{
    arma::cx_mat LinkMoments::S_at(std::size_t k, std::size_t kp, double rho, double rho_bar) const
    {
        const auto i = pair(k, kp);
        return (rho * rho) * S_zz[i] + (rho_bar * rho_bar) * S_uu[i] + (rho * rho_bar) * (S_zu[i] + S_zu[i].t());
    }

    arma::cx_vec LinkMoments::mean_at(std::size_t k, std::size_t kp, double rho, double rho_bar) const
    {
        const auto i = pair(k, kp);
        return rho * z_mean[i] + rho_bar * u_mean[i];
    }

    LinkMoments accumulate_link_moments(const DropModel &d, std::size_t trials, const RandomStream &rng)
    {
        const std::size_t M = d.cov.M, K = d.cov.K, J = d.topo.J();
        LinkMoments mo;
        mo.M = M;
        mo.K = K;
        mo.trials = trials;
        mo.S_zz.assign(K * K, arma::cx_mat(M, M, arma::fill::zeros));
        mo.S_uu = mo.S_zz;
        mo.S_zu = mo.S_zz;
        mo.z_mean.assign(K * K, arma::cx_vec(M, arma::fill::zeros));
        mo.u_mean = mo.z_mean;
        mo.S_emi.assign(K, arma::cx_mat(M, M, arma::fill::zeros));
        mo.S_ns = mo.S_emi;
        mo.dl_emi.zeros(K);

        std::vector<arma::cx_mat> C(J);
        for (std::size_t j = 0; j < J; ++j)
            C[j] = (d.corr.area * d.sigma_j2[j]) * d.corr.R_ris[j];

        arma::cx_vec z(M), u(M);
        for (std::size_t t = 0; t < trials; ++t)
        {
            const TrialRealization r = realize_trial(d, rng.derive("trial", t));
            for (std::size_t i = 0; i < r.g_ref.size(); ++i)
            {
                mo.error_energy += std::pow(arma::norm(r.g_ref[i] - r.g_hat[i]), 2);
                mo.channel_energy += std::pow(arma::norm(r.g_ref[i]), 2);
            }
            for (std::size_t k = 0; k < K; ++k)
            {
                for (std::size_t kp = 0; kp < K; ++kp)
                {
                    for (std::size_t m = 0; m < M; ++m)
                    {
                        const auto &gh = r.g_hat[m * K + k];
                        z(m) = arma::cdot(gh, r.g_ref[m * K + kp]);
                        u(m) = arma::cdot(gh, r.innovation[m * K + kp]);
                    }
                    const auto i = mo.pair(k, kp);
                    mo.S_zz[i] += z * z.t();
                    mo.S_uu[i] += u * u.t();
                    mo.S_zu[i] += z * u.t();
                    mo.z_mean[i] += z;
                    mo.u_mean[i] += u;
                }
                for (std::size_t j = 0; j < J; ++j)
                {
                    arma::cx_mat V(C[j].n_rows, M);
                    for (std::size_t m = 0; m < M; ++m)
                        V.col(m) = r.g_mj_theta[m * J + j].t() * r.g_hat[m * K + k];
                    mo.S_emi[k] += V.t() * C[j] * V;
                    const arma::cx_vec x = d.corr.Theta[j] * r.g_kj[k * J + j];
                    mo.dl_emi(k) += std::real(arma::as_scalar(x.st() * C[j] * arma::conj(x)));
                }
                for (std::size_t m = 0; m < M; ++m)
                    mo.S_ns[k](m, m) += d.cfg.sigma2 * std::pow(arma::norm(r.g_hat[m * K + k]), 2);
            }
        }
        const double inv = trials > 0 ? 1.0 / static_cast<double>(trials) : 0.0;
        for (std::size_t i = 0; i < K * K; ++i)
        {
            mo.S_zz[i] *= inv;
            mo.S_uu[i] *= inv;
            mo.S_zu[i] *= inv;
            mo.z_mean[i] *= inv;
            mo.u_mean[i] *= inv;
        }
        for (std::size_t k = 0; k < K; ++k)
        {
            mo.S_emi[k] *= inv;
            mo.S_ns[k] *= inv;
        }
        mo.dl_emi *= inv;
        return mo;
    }

    namespace
    {
        double quad(const arma::cx_vec &a, const arma::cx_mat &S) { return std::real(arma::cdot(a, S * a)); }
    }

    namespace
    {
        // |sample mean|^2 overshoots |mean|^2 by var / T on average; remove that bias.
        double squared_mean(const arma::cx_vec &w, const arma::cx_vec &mean, const arma::cx_mat &second,
                            std::size_t trials)
        {
            const double m2 = std::norm(arma::cdot(w, mean));
            if (trials < 2) return m2;
            const double var = std::max(quad(w, second) - m2, 0.0);
            return m2 - var / static_cast<double>(trials - 1);
        }
    }

    SinrParts uplink_parts_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging, std::size_t k,
                              std::size_t lag, const arma::cx_vec &a)
    {
        SinrParts p;
        const double r = aging.rho(k, lag), rb = aging.rho_bar(k, lag);
        p.ds = t.p_u * t.eta[k] * squared_mean(a, mo.mean_at(k, k, r, rb), mo.S_at(k, k, r, rb), mo.trials);
        for (std::size_t kp = 0; kp < mo.K; ++kp)
            p.ui += t.p_u * t.eta[kp] * quad(a, mo.S_at(k, kp, aging.rho(kp, lag), aging.rho_bar(kp, lag)));
        p.emi = quad(a, mo.S_emi[k]);
        p.ns = quad(a, mo.S_ns[k]);
        return p;
    }

    IdentityCheck uplink_identity_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging,
                                     std::size_t k, std::size_t lag, const arma::cx_vec &a)
    {
        const double r = aging.rho(k, lag), rb = aging.rho_bar(k, lag);
        const double g = t.p_u * t.eta[k];
        const auto i = mo.pair(k, k);
        const double xx = quad(a, mo.S_zz[i]);
        const double yy = quad(a, mo.S_uu[i]);
        const double ds = g * r * r * std::norm(arma::cdot(a, mo.z_mean[i]));
        IdentityCheck c;
        // BU uses the sample mean of the reference-instant product, CA the innovation product.
        c.lhs = g * r * r * (xx - std::norm(arma::cdot(a, mo.z_mean[i]))) + g * rb * rb * yy;
        c.rhs = g * quad(a, mo.S_at(k, k, r, rb)) - ds;
        c.std_error = g * r * rb * std::sqrt(2.0 * xx * yy / static_cast<double>(std::max<std::size_t>(mo.trials, 1)));
        return c;
    }

    SinrParts downlink_parts_mc(const LinkMoments &mo, const DownlinkTerms &t, const AgingTable &aging,
                                std::size_t k, std::size_t lag)
    {
        const double r = aging.rho(k, lag), rb = aging.rho_bar(k, lag);
        SinrParts p;
        const arma::cx_vec c_k = arma::conv_to<arma::cx_vec>::from(arma::vec(arma::sqrt(t.eta.col(k))));
        p.ds = t.p_d * squared_mean(c_k, mo.mean_at(k, k, r, rb), mo.S_at(k, k, r, rb), mo.trials);
        for (std::size_t kp = 0; kp < mo.K; ++kp)
        {
            const arma::cx_vec c = arma::conv_to<arma::cx_vec>::from(arma::vec(arma::sqrt(t.eta.col(kp))));
            p.ui += t.p_d * quad(c, mo.S_at(kp, k, r, rb));
        }
        p.emi = mo.dl_emi(k);
        p.ns = t.sigma2;
        return p;
    }

    std::vector<double> uplink_se_mc(const LinkMoments &mo, const UplinkTerms &t, const AgingTable &aging,
                                     std::size_t data_instants, std::size_t tau_c, Receiver r)
    {
        arma::mat s(t.K, data_instants);
        for (std::size_t k = 0; k < t.K; ++k)
            for (std::size_t lag = 0; lag < data_instants; ++lag)
                s(k, lag) = uplink_parts_mc(mo, t, aging, k, lag, uplink_weights(t, aging, k, lag, r)).sinr();
        return se_from_sinr(s, tau_c);
    }

    std::vector<double> downlink_se_mc(const LinkMoments &mo, const DownlinkTerms &t, const AgingTable &aging,
                                       std::size_t data_instants, std::size_t tau_c)
    {
        arma::mat s(t.K, data_instants);
        for (std::size_t k = 0; k < t.K; ++k)
            for (std::size_t lag = 0; lag < data_instants; ++lag)
                s(k, lag) = downlink_parts_mc(mo, t, aging, k, lag).sinr();
        return se_from_sinr(s, tau_c);
    }
}

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

#include "cfris/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfris
{
    double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

    AgingValue temporal_corr(double v, double f_c, double T_s, std::size_t lag)
    {
        if (lag == 0 || v == 0.0) return AgingValue{1.0, 0.0};
        const double f_D = v * f_c / speed_of_light;
        const double r = bessel_j0(2.0 * pi * f_D * T_s * static_cast<double>(lag));
        return AgingValue{r, std::sqrt(std::max(0.0, 1.0 - r * r))};
    }

    AgingTable::AgingTable(const SystemConfig &cfg)
        : rho_(cfg.K, cfg.tau_c + 1), rho_bar_(cfg.K, cfg.tau_c + 1)
    {
        for (std::size_t k = 0; k < cfg.K; ++k)
            for (std::size_t lag = 0; lag <= cfg.tau_c; ++lag)
            {
                const auto a = temporal_corr(cfg.user_velocity(k), cfg.f_c, cfg.T_s, lag);
                rho_(k, lag) = a.rho;
                rho_bar_(k, lag) = a.rho_bar;
            }
    }

    std::vector<double> emi_power(const Topology &topo, const SystemConfig &cfg)
    {
        std::vector<double> s(topo.J(), 0.0);
        if (!cfg.emi_enabled()) return s;
        const double rho = cfg.rho_linear();
        const double MK = static_cast<double>(topo.M() * topo.K());
        for (std::size_t j = 0; j < topo.J(); ++j)
        {
            const double sum_m = arma::accu(topo.beta_ap_ris.col(j));
            const double sum_k = arma::accu(topo.beta_user_ris.col(j));
            s[j] = std::sqrt(cfg.p_u * cfg.p_d * sum_m * sum_k / (MK * rho * rho));
        }
        return s;
    }

    arma::cx_vec draw_emi(const CorrelationSet &corr, std::size_t j, double sigma_j2, RandomStream &rng)
    {
        const auto &S = corr.R_ris_sqrt.at(j);
        arma::cx_vec v = rng.complex_normal_vec(S.n_rows);
        if (sigma_j2 <= 0.0) return arma::cx_vec(S.n_rows, arma::fill::zeros);
        return std::sqrt(corr.area * sigma_j2) * (S * v);
    }

    std::size_t ChannelBlock::slot(std::size_t n) const
    {
        const auto it = std::lower_bound(instants.begin(), instants.end(), n);
        if (it == instants.end() || *it != n)
            throw std::out_of_range("ChannelBlock: instant " + std::to_string(n) + " was not drawn");
        return static_cast<std::size_t>(it - instants.begin());
    }

    arma::cx_vec ChannelBlock::g_d(std::size_t m, std::size_t k, std::size_t n) const
    {
        const auto s = slot(n);
        return rho(k, s) * g_d_ref[m * K + k] + rho_bar(k, s) * e_d[s][m * K + k];
    }

    arma::cx_vec ChannelBlock::g_kj(std::size_t k, std::size_t j, std::size_t n) const
    {
        const auto s = slot(n);
        return rho(k, s) * g_kj_ref[k * J + j] + rho_bar(k, s) * e_kj[s][k * J + j];
    }

    arma::cx_vec ChannelBlock::g_c(std::size_t m, std::size_t k, std::size_t j, std::size_t n) const
    {
        return g_mj_theta[m * J + j] * g_kj(k, j, n);
    }

    arma::cx_vec ChannelBlock::g_c_total(std::size_t m, std::size_t k, std::size_t n) const
    {
        arma::cx_vec v(N, arma::fill::zeros);
        for (std::size_t j = 0; j < J; ++j)
            v += g_c(m, k, j, n);
        return v;
    }

    arma::cx_vec ChannelBlock::g(std::size_t m, std::size_t k, std::size_t n) const
    {
        return g_d(m, k, n) + g_c_total(m, k, n);
    }

    arma::cx_vec ChannelBlock::g_c_ref(std::size_t m, std::size_t k) const
    {
        arma::cx_vec v(N, arma::fill::zeros);
        for (std::size_t j = 0; j < J; ++j)
            v += g_mj_theta[m * J + j] * g_kj_ref[k * J + j];
        return v;
    }

    arma::cx_vec ChannelBlock::innovation(std::size_t m, std::size_t k, std::size_t n) const
    {
        const auto s = slot(n);
        arma::cx_vec v = e_d[s][m * K + k];
        for (std::size_t j = 0; j < J; ++j)
            v += g_mj_theta[m * J + j] * e_kj[s][k * J + j];
        return v;
    }

    arma::cx_vec ChannelBlock::emi_at_ap(std::size_t m, std::size_t n) const
    {
        const auto s = slot(n);
        arma::cx_vec v(N, arma::fill::zeros);
        for (std::size_t j = 0; j < J; ++j)
            v += g_mj_theta[m * J + j] * emi[s][j];
        return v;
    }

    ChannelBlock draw_block(const Topology &topo, const CorrelationSet &corr, const SystemConfig &cfg,
                            const AgingTable &aging, const std::vector<double> &sigma_j2, const RandomStream &rng,
                            std::vector<std::size_t> instants, std::size_t reference)
    {
        ChannelBlock b;
        b.M = topo.M();
        b.K = topo.K();
        b.J = topo.J();
        b.N = corr.R_ap.n_rows;
        b.L = b.J > 0 ? corr.R_ris[0].n_rows : 0;
        b.reference = reference == 0 ? cfg.reference_instant() : reference;
        if (instants.empty())
            for (std::size_t n = 1; n <= cfg.tau_c; ++n)
                instants.push_back(n);
        std::sort(instants.begin(), instants.end());
        instants.erase(std::unique(instants.begin(), instants.end()), instants.end());
        b.instants = instants;
        b.sigma_j2 = sigma_j2;
        b.sigma_j2.resize(b.J, 0.0);

        const double A = corr.area;
        RandomStream s_ref = rng.derive("reference");
        b.g_d_ref.resize(b.M * b.K);
        for (std::size_t m = 0; m < b.M; ++m)
            for (std::size_t k = 0; k < b.K; ++k)
                b.g_d_ref[m * b.K + k] = std::sqrt(topo.beta_d(m, k)) * (corr.R_ap_sqrt * s_ref.complex_normal_vec(b.N));
        b.g_mj.resize(b.M * b.J);
        b.g_mj_theta.resize(b.M * b.J);
        for (std::size_t m = 0; m < b.M; ++m)
            for (std::size_t j = 0; j < b.J; ++j)
            {
                const arma::cx_mat V = s_ref.complex_normal_mat(b.N, b.L);
                b.g_mj[m * b.J + j] = std::sqrt(topo.beta_ap_ris(m, j) * A) * (corr.R_ap_sqrt * V * corr.R_ris_sqrt[j]);
                b.g_mj_theta[m * b.J + j] = b.g_mj[m * b.J + j] * corr.Theta[j];
            }
        b.g_kj_ref.resize(b.K * b.J);
        for (std::size_t k = 0; k < b.K; ++k)
            for (std::size_t j = 0; j < b.J; ++j)
                b.g_kj_ref[k * b.J + j] =
                    std::sqrt(topo.beta_user_ris(k, j) * A) * (corr.R_ris_sqrt[j] * s_ref.complex_normal_vec(b.L));

        const std::size_t S = instants.size();
        b.e_d.assign(S, {});
        b.e_kj.assign(S, {});
        b.emi.assign(S, {});
        b.rho.set_size(b.K, S);
        b.rho_bar.set_size(b.K, S);
        for (std::size_t s = 0; s < S; ++s)
        {
            const std::size_t n = instants[s];
            const std::size_t lag = n > b.reference ? n - b.reference : b.reference - n;
            for (std::size_t k = 0; k < b.K; ++k)
            {
                b.rho(k, s) = aging.rho(k, lag);
                b.rho_bar(k, s) = aging.rho_bar(k, lag);
            }
            RandomStream r = rng.derive("instant", n);
            auto &ed = b.e_d[s];
            ed.resize(b.M * b.K);
            for (std::size_t m = 0; m < b.M; ++m)
                for (std::size_t k = 0; k < b.K; ++k)
                    ed[m * b.K + k] = std::sqrt(topo.beta_d(m, k)) * (corr.R_ap_sqrt * r.complex_normal_vec(b.N));
            auto &ek = b.e_kj[s];
            ek.resize(b.K * b.J);
            for (std::size_t k = 0; k < b.K; ++k)
                for (std::size_t j = 0; j < b.J; ++j)
                    ek[k * b.J + j] =
                        std::sqrt(topo.beta_user_ris(k, j) * A) * (corr.R_ris_sqrt[j] * r.complex_normal_vec(b.L));
            auto &en = b.emi[s];
            en.resize(b.J);
            for (std::size_t j = 0; j < b.J; ++j)
                en[j] = draw_emi(corr, j, b.sigma_j2[j], r);
        }
        return b;
    }
}

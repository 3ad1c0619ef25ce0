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

#include "cfris/correlation.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cfris/linalg.hpp"

namespace cfris
{
    namespace
    {
        double sinc(double x)
        {
            if (x == 0.0) return 1.0;
            const double px = pi * x;
            return std::sin(px) / px;
        }
    }

    arma::mat ris_sinc_correlation(std::size_t L_h, std::size_t L_v, double d_H, double d_V, double lambda_c)
    {
        if (L_h * L_v < 1)
            throw std::invalid_argument("ris_sinc_correlation: need at least one element");
        if (!(d_H > 0.0) || !(d_V > 0.0) || !(lambda_c > 0.0))
            throw std::invalid_argument("ris_sinc_correlation: spacings and wavelength must be positive");
        const std::size_t L = L_h * L_v;
        arma::mat R(L, L);
        for (std::size_t a = 0; a < L; ++a)
            for (std::size_t b = 0; b < L; ++b)
            {
                const double dy = d_H * (static_cast<double>(a % L_h) - static_cast<double>(b % L_h));
                const double dz = d_V * (static_cast<double>(a / L_h) - static_cast<double>(b / L_h));
                R(a, b) = sinc(2.0 * std::sqrt(dy * dy + dz * dz) / lambda_c);
            }
        return R;
    }

    arma::mat ap_exponential_correlation(std::size_t N, double r)
    {
        if (!(r >= 0.0 && r < 1.0))
            throw std::invalid_argument("ap_exponential_correlation: r must lie in [0, 1)");
        arma::mat R(N, N);
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                R(a, b) = std::pow(r, std::abs(static_cast<double>(a) - static_cast<double>(b)));
        return R;
    }

    arma::cx_mat build_T_j(const arma::cx_mat &R_j, const arma::cx_mat &Theta_j, double A_j)
    {
        if (R_j.n_rows != R_j.n_cols || Theta_j.n_rows != R_j.n_rows || Theta_j.n_cols != R_j.n_cols)
            throw std::invalid_argument("build_T_j: dimension mismatch");
        const arma::cx_mat S = sqrtm_psd(R_j);
        return hermitian_part((A_j * A_j) * S * Theta_j * R_j * Theta_j.t() * S);
    }

    CorrelationSet build_correlation(const SystemConfig &cfg)
    {
        const std::complex<double> phase = std::polar(cfg.ris_amplitude, cfg.ris_phase);
        std::vector<arma::cx_mat> Theta(cfg.J, arma::cx_mat(cfg.L(), cfg.L(), arma::fill::zeros));
        for (auto &T : Theta)
            T.diag().fill(phase);
        return build_correlation(cfg, Theta);
    }

    CorrelationSet build_correlation(const SystemConfig &cfg, const std::vector<arma::cx_mat> &Theta)
    {
        if (Theta.size() != cfg.J)
            throw std::invalid_argument("build_correlation: need one phase matrix per RIS");
        CorrelationSet c;
        c.area = cfg.element_area();
        c.R_ap = arma::conv_to<arma::cx_mat>::from(ap_exponential_correlation(cfg.N, cfg.ap_corr_r));
        c.R_ap_sqrt = sqrtm_psd(c.R_ap);
        if (cfg.J == 0) return c;

        const arma::cx_mat R = arma::conv_to<arma::cx_mat>::from(
            ris_sinc_correlation(cfg.L_h, cfg.L_v, cfg.element_width(), cfg.element_height(), cfg.lambda_c()));
        const arma::cx_mat R_sqrt = sqrtm_psd(R);
        for (std::size_t j = 0; j < cfg.J; ++j)
        {
            const auto &Th = Theta[j];
            if (Th.n_rows != cfg.L() || Th.n_cols != cfg.L() || !Th.is_diagmat())
                throw std::invalid_argument("build_correlation: phase matrices must be L x L diagonal");
            for (arma::uword l = 0; l < cfg.L(); ++l)
                if (std::abs(Th(l, l)) > 1.0 + 1e-12)
                    throw std::invalid_argument("build_correlation: phase amplitudes must not exceed 1");
            c.R_ris.push_back(R);
            c.R_ris_sqrt.push_back(R_sqrt);
            c.Theta.push_back(Th);
            c.T.push_back(build_T_j(R, Th, c.area));
            c.trace_T.push_back(std::real(arma::trace(c.T.back())));
        }
        return c;
    }

    Covariances build_covariances(const Topology &topo, const CorrelationSet &corr)
    {
        Covariances cv;
        cv.M = topo.M();
        cv.K = topo.K();
        const std::size_t J = topo.J();
        if (corr.J() != J)
            throw std::invalid_argument("build_covariances: RIS count mismatch");
        cv.direct.resize(cv.M * cv.K);
        cv.cascaded.resize(cv.M * cv.K);
        cv.total.resize(cv.M * cv.K);
        cv.tr_direct.set_size(cv.M, cv.K);
        cv.tr_cascaded.set_size(cv.M, cv.K);
        cv.tr_total.set_size(cv.M, cv.K);
        for (std::size_t m = 0; m < cv.M; ++m)
            for (std::size_t k = 0; k < cv.K; ++k)
            {
                const auto i = cv.idx(m, k);
                cv.direct[i] = topo.beta_d(m, k) * corr.R_mk(m, k);
                cv.cascaded[i].zeros(corr.R_ap.n_rows, corr.R_ap.n_cols);
                for (std::size_t j = 0; j < J; ++j)
                    cv.cascaded[i] += (topo.beta_ap_ris(m, j) * topo.beta_user_ris(k, j) * corr.trace_T[j]) *
                                      corr.R_mj_r(m, j);
                cv.total[i] = cv.direct[i] + cv.cascaded[i];
                cv.tr_direct(m, k) = std::real(arma::trace(cv.direct[i]));
                cv.tr_cascaded(m, k) = std::real(arma::trace(cv.cascaded[i]));
                cv.tr_total(m, k) = std::real(arma::trace(cv.total[i]));
            }
        return cv;
    }
}

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

#include "cfris/trial.hpp"

namespace cfris
{
    TrialRealization realize_trial(const DropModel &d, const RandomStream &rng)
    {
        const auto &cfg = d.cfg;
        std::vector<std::size_t> instants = pilot_instants(d.est.scheme, cfg);
        const std::size_t data_instant = cfg.tau_c;
        instants.push_back(data_instant);

        const ChannelBlock b =
            draw_block(d.topo, d.corr, cfg, d.aging, d.sigma_j2, rng.derive("block"), instants, d.est.reference);
        RandomStream noise = rng.derive("pilot_noise");

        std::vector<arma::cx_vec> g_hat;
        if (d.est.scheme == EstimationScheme::two_phase)
        {
            g_hat = estimate_direct(b, d.est.direct, cfg, noise);
            if (d.topo.J() > 0)
            {
                const auto g_hat_c = estimate_cascaded(b, d.est.cascaded, cfg, noise);
                for (std::size_t i = 0; i < g_hat.size(); ++i)
                    g_hat[i] += g_hat_c[i];
            }
        }
        else
            g_hat = estimate_benchmark(b, d.est.direct, cfg, noise);

        TrialRealization t;
        t.g_hat = std::move(g_hat);
        t.g_ref.resize(b.M * b.K);
        t.innovation.resize(b.M * b.K);
        for (std::size_t m = 0; m < b.M; ++m)
            for (std::size_t k = 0; k < b.K; ++k)
            {
                t.g_ref[m * b.K + k] = b.g_ref(m, k);
                t.innovation[m * b.K + k] = b.innovation(m, k, data_instant);
            }
        t.g_kj.resize(b.K * b.J);
        for (std::size_t k = 0; k < b.K; ++k)
            for (std::size_t j = 0; j < b.J; ++j)
                t.g_kj[k * b.J + j] = b.g_kj(k, j, data_instant);
        t.g_mj_theta = b.g_mj_theta;
        return t;
    }

    NmseEstimate nmse_monte_carlo(const DropModel &d, std::size_t trials, const RandomStream &rng)
    {
        double err = 0.0, energy = 0.0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const auto r = realize_trial(d, rng.derive("trial", t));
            for (std::size_t i = 0; i < r.g_ref.size(); ++i)
            {
                err += std::pow(arma::norm(r.g_ref[i] - r.g_hat[i]), 2);
                energy += std::pow(arma::norm(r.g_ref[i]), 2);
            }
        }
        NmseEstimate e;
        e.closed_form = d.est.nmse;
        e.monte_carlo = energy > 0.0 ? err / energy : 0.0;
        e.trials = trials;
        return e;
    }
}

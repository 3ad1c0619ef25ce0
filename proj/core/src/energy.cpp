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

#include "cfris/energy.hpp"

#include <stdexcept>

#include "cfris/error.hpp"

namespace cfris
{
    void PowerModel::validate() const
    {
        auto positive = [](double v, const char *name)
        {
            if (!(v > 0.0)) throw std::invalid_argument(std::string("power model: ") + name + " must be positive");
        };
        positive(L_AP, "L_AP");
        positive(theta_ap, "theta_ap");
        positive(theta_user, "theta_user");
        positive(P_FIX, "P_FIX");
        positive(P_ap, "P_ap");
        positive(P_user, "P_user");
        positive(P_COD, "P_COD");
        positive(P_DEC, "P_DEC");
        positive(P_bh, "P_bh");
        if (theta_ap > 1.0 || theta_user > 1.0)
            throw std::invalid_argument("power model: amplifier efficiencies must not exceed 1");
    }

    PowerModel power_model_from(KeyValueFile &f)
    {
        PowerModel pm;
        pm.L_AP = f.take_double("L_AP_flops_per_w", pm.L_AP);
        pm.theta_ap = f.take_double("theta_ap", pm.theta_ap);
        pm.theta_user = f.take_double("theta_user", pm.theta_user);
        pm.P_FIX = f.take_double("P_FIX_w", pm.P_FIX);
        pm.P_ap = f.take_double("P_ap_w", pm.P_ap);
        pm.P_user = f.take_double("P_user_w", pm.P_user);
        pm.P_COD = f.take_double("P_COD_w_per_gbps", pm.P_COD * 1e9) * 1e-9;
        pm.P_DEC = f.take_double("P_DEC_w_per_gbps", pm.P_DEC * 1e9) * 1e-9;
        pm.P_bh = f.take_double("P_bh_w_per_gbps", pm.P_bh * 1e9) * 1e-9;
        try
        {
            pm.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(f.source() + ": " + e.what());
        }
        return pm;
    }

    double sum_se(const std::vector<double> &se_ul, const std::vector<double> &se_dl)
    {
        if (se_ul.size() != se_dl.size())
            throw std::invalid_argument("sum_se: uplink and downlink must cover the same users");
        double s = 0.0;
        for (std::size_t k = 0; k < se_ul.size(); ++k)
            s += se_ul[k] + se_dl[k];
        return 0.5 * s;
    }

    EEReport total_power(const PowerModel &pm, const SystemConfig &cfg, const PowerInputs &in, double se_sum)
    {
        const double M = static_cast<double>(cfg.M), N = static_cast<double>(cfg.N), K = static_cast<double>(cfg.K);
        const double tp = static_cast<double>(cfg.tau_p), tc = static_cast<double>(cfg.tau_c);
        const double B = cfg.bandwidth;

        EEReport r;
        r.se_sum = se_sum;
        for (double p : in.pilot_power_d) r.p_pilot += p / pm.theta_user;
        for (double p : in.pilot_power_c) r.p_pilot += p / pm.theta_user;
        for (double e : in.eta_ul) r.p_ul += cfg.p_u * e / pm.theta_user;
        r.p_dl = cfg.p_d / pm.theta_ap * arma::accu(in.eta_dl % in.trace_Q);

        r.p_fix = pm.P_FIX;
        r.p_tc = M * N * pm.P_ap + K * pm.P_user;
        r.p_ce = 4.0 * M * B * tp * N * K / (tc * pm.L_AP);
        r.p_cd = B * se_sum * (pm.P_COD + pm.P_DEC);
        r.p_bh = M * B * se_sum * pm.P_bh;
        r.p_lp = M * B * (1.0 - 2.0 * tp / tc) * (2.0 * N * K / pm.L_AP) + M * 3.0 * B * N * K / (tc * pm.L_AP);
        r.p_cp = r.p_fix + r.p_tc + r.p_ce + r.p_cd + r.p_bh + r.p_lp;

        r.p_total = 4.0 * tp / (2.0 * tc) * r.p_pilot + (tc - 2.0 * tp) / (2.0 * tc) * (r.p_ul + r.p_dl) + r.p_cp;
        r.ee = B * se_sum / r.p_total;
        return r;
    }
}

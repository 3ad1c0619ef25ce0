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

#include "cfris/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cfris/error.hpp"
#include "cfris/linalg.hpp"

namespace cfris
{
    std::string to_string(EstimationScheme s)
    {
        return s == EstimationScheme::two_phase ? "two_phase" : "benchmark";
    }

    EstimationScheme estimation_scheme_from_string(const std::string &s)
    {
        if (s == "two_phase") return EstimationScheme::two_phase;
        if (s == "benchmark") return EstimationScheme::benchmark;
        throw config_error("unknown estimation scheme '" + s + "' (expected two_phase or benchmark)");
    }

    std::size_t reference_instant(EstimationScheme scheme, const SystemConfig &cfg)
    {
        return scheme == EstimationScheme::two_phase ? 2 * cfg.tau_p + 1 : cfg.tau_p + 1;
    }

    std::vector<double> pilot_power_control(const arma::mat &traces, double p_p)
    {
        const std::size_t K = traces.n_cols;
        std::vector<double> p(K, p_p);
        const double total = arma::accu(traces);
        if (!(total > 0.0)) return p;
        for (std::size_t k = 0; k < K; ++k)
            p[k] = arma::accu(traces.col(k)) / total * static_cast<double>(K) * p_p;
        return p;
    }

    PhasePlan assign_pilots(const arma::mat &traces, const std::vector<double> &power, std::size_t tau_p)
    {
        const std::size_t K = traces.n_cols;
        if (power.size() != K)
            throw std::invalid_argument("assign_pilots: one power per user required");
        if (tau_p < 1)
            throw std::invalid_argument("assign_pilots: tau_p must be positive");
        PhasePlan plan;
        plan.tau_p = tau_p;
        plan.power = power;
        plan.pilot.assign(K, 0);
        plan.prime_ap.assign(K, 0);
        for (std::size_t k = 0; k < K; ++k)
            plan.prime_ap[k] = traces.n_rows > 0 ? static_cast<std::size_t>(traces.col(k).index_max()) : 0;

        std::vector<std::vector<std::size_t>> S(tau_p);
        for (std::size_t k = 0; k < K; ++k)
        {
            std::size_t t = k;
            if (k >= tau_p)
            {
                const std::size_t m = plan.prime_ap[k];
                double best = 0.0;
                for (std::size_t c = 0; c < tau_p; ++c)
                {
                    double cost = 0.0;
                    for (std::size_t i : S[c])
                        cost += power[k] * traces(m, i);
                    if (c == 0 || cost < best)
                    {
                        best = cost;
                        t = c;
                    }
                }
            }
            plan.pilot[k] = t;
            S[t].push_back(k);
        }
        plan.coset.resize(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            plan.coset[k] = S[plan.pilot[k]];
            std::sort(plan.coset[k].begin(), plan.coset[k].end());
        }
        return plan;
    }

    PilotPlan make_pilot_plan(const Covariances &cov, const SystemConfig &cfg)
    {
        PilotPlan p;
        p.direct = assign_pilots(cov.tr_direct, pilot_power_control(cov.tr_direct, cfg.p_p), cfg.tau_p);
        p.cascaded = assign_pilots(cov.tr_cascaded, pilot_power_control(cov.tr_cascaded, cfg.p_p), cfg.tau_p);
        return p;
    }

    PhasePlan make_benchmark_plan(const Covariances &cov, const SystemConfig &cfg)
    {
        return assign_pilots(cov.tr_total, std::vector<double>(cov.K, cfg.p_p), cfg.tau_p);
    }

    namespace
    {
        // Builds MMSE statistics for observations y_mk = sum_{k' in P_k} sqrt(p_k') s_mk'[t] + z_m
        // where s_mk has covariance signal[m*K+k] and z_m has covariance extra[m] + sigma^2 I.
        PhaseStats build_stats(const std::vector<arma::cx_mat> &signal, const std::vector<arma::cx_mat> &extra,
                               const PhasePlan &plan, std::size_t instant_offset, const AgingTable &aging,
                               const SystemConfig &cfg, std::size_t M, std::size_t K, std::size_t N,
                               std::size_t reference)
        {
            PhaseStats s;
            s.M = M;
            s.K = K;
            s.coset = plan.coset;
            s.power = plan.power;
            s.instant.resize(K);
            for (std::size_t k = 0; k < K; ++k)
                s.instant[k] = plan.pilot[k] + 1 + instant_offset;
            s.R.resize(M * K);
            s.Psi.resize(M * K);
            s.W.resize(M * K);
            s.Q.resize(M * K);
            s.trace_Q.set_size(M, K);
            s.trace_bar.zeros(K, K, M);

            const arma::cx_mat I = arma::eye<arma::cx_mat>(N, N);
            for (std::size_t m = 0; m < M; ++m)
            {
                for (std::size_t k = 0; k < K; ++k)
                {
                    const std::size_t i = s.idx(m, k);
                    const std::size_t t = s.instant[k];
                    const std::size_t lag = reference > t ? reference - t : t - reference;
                    s.R[i] = (std::sqrt(plan.power[k]) * aging.rho(k, lag)) * signal[i];
                    arma::cx_mat C = extra[m] + cfg.sigma2 * I;
                    for (std::size_t kp : plan.coset[k])
                        C += plan.power[kp] * signal[s.idx(m, kp)];
                    s.Psi[i] = hermitian_inverse(C);
                    s.W[i] = s.R[i] * s.Psi[i];
                    s.Q[i] = hermitian_part(s.W[i] * s.R[i].t());
                    s.trace_Q(m, k) = std::real(arma::trace(s.Q[i]));
                }
                for (std::size_t k = 0; k < K; ++k)
                    for (std::size_t kp : plan.coset[k])
                        s.trace_bar(k, kp, m) = arma::trace(s.R[s.idx(m, kp)] * s.W[s.idx(m, k)].t());
            }
            return s;
        }

        std::vector<arma::cx_mat> emi_covariance_at_aps(const Topology &topo, const CorrelationSet &corr,
                                                        const std::vector<double> &sigma_j2, std::size_t N)
        {
            std::vector<arma::cx_mat> E(topo.M(), arma::cx_mat(N, N, arma::fill::zeros));
            for (std::size_t m = 0; m < topo.M(); ++m)
                for (std::size_t j = 0; j < topo.J(); ++j)
                    E[m] += (topo.beta_ap_ris(m, j) * sigma_j2.at(j) * corr.trace_T[j]) * corr.R_mj_r(m, j);
            return E;
        }

        PhaseStats zero_stats(std::size_t M, std::size_t K, std::size_t N, const SystemConfig &cfg)
        {
            PhasePlan plan;
            plan.tau_p = cfg.tau_p;
            plan.power.assign(K, 0.0);
            plan.pilot.assign(K, 0);
            plan.prime_ap.assign(K, 0);
            plan.coset.resize(K);
            for (std::size_t k = 0; k < K; ++k)
                plan.coset[k] = {k};
            const std::vector<arma::cx_mat> signal(M * K, arma::cx_mat(N, N, arma::fill::zeros));
            const std::vector<arma::cx_mat> extra(M, arma::cx_mat(N, N, arma::fill::zeros));
            SystemConfig c = cfg;
            c.velocities.clear();
            c.velocity = 0.0;
            PhaseStats s = build_stats(signal, extra, plan, 0, AgingTable(c), cfg, M, K, N, 1);
            s.instant.assign(K, 0);
            return s;
        }
    }

    PhaseStats direct_phase_stats(const Covariances &cov, const AgingTable &aging, const PhasePlan &plan,
                                  const SystemConfig &cfg, std::size_t reference)
    {
        const std::size_t N = cov.direct.empty() ? cfg.N : cov.direct[0].n_rows;
        const std::vector<arma::cx_mat> extra(cov.M, arma::cx_mat(N, N, arma::fill::zeros));
        return build_stats(cov.direct, extra, plan, 0, aging, cfg, cov.M, cov.K, N, reference);
    }

    PhaseStats cascaded_phase_stats(const Covariances &cov, const Topology &topo, const CorrelationSet &corr,
                                    const std::vector<double> &sigma_j2, const AgingTable &aging,
                                    const PhasePlan &plan, const SystemConfig &cfg, std::size_t reference)
    {
        const std::size_t N = cov.cascaded.empty() ? cfg.N : cov.cascaded[0].n_rows;
        return build_stats(cov.cascaded, emi_covariance_at_aps(topo, corr, sigma_j2, N), plan, cfg.tau_p, aging, cfg,
                           cov.M, cov.K, N, reference);
    }

    PhaseStats benchmark_stats(const Covariances &cov, const Topology &topo, const CorrelationSet &corr,
                               const std::vector<double> &sigma_j2, const AgingTable &aging, const PhasePlan &plan,
                               const SystemConfig &cfg, std::size_t reference)
    {
        const std::size_t N = cov.total.empty() ? cfg.N : cov.total[0].n_rows;
        return build_stats(cov.total, emi_covariance_at_aps(topo, corr, sigma_j2, N), plan, 0, aging, cfg, cov.M,
                           cov.K, N, reference);
    }

    double nmse(const Covariances &cov, const EstimationResult &est)
    {
        const double total = arma::accu(cov.tr_total);
        if (!(total > 0.0))
            throw std::invalid_argument("nmse: covariance traces vanish");
        return (total - arma::accu(est.direct.trace_Q) - arma::accu(est.cascaded.trace_Q)) / total;
    }

    EstimationResult estimate_statistics(EstimationScheme scheme, const SystemConfig &cfg, const Topology &topo,
                                         const CorrelationSet &corr, const Covariances &cov,
                                         const std::vector<double> &sigma_j2, const AgingTable &aging)
    {
        EstimationResult r;
        r.scheme = scheme;
        r.reference = reference_instant(scheme, cfg);
        const std::size_t N = corr.R_ap.n_rows;
        if (scheme == EstimationScheme::two_phase)
        {
            r.plan = make_pilot_plan(cov, cfg);
            r.direct = direct_phase_stats(cov, aging, r.plan.direct, cfg, r.reference);
            if (topo.J() > 0)
                r.cascaded = cascaded_phase_stats(cov, topo, corr, sigma_j2, aging, r.plan.cascaded, cfg, r.reference);
            else
            {
                r.cascaded = zero_stats(cov.M, cov.K, N, cfg);
                r.plan.cascaded.coset = r.cascaded.coset;
            }
        }
        else
        {
            r.plan.direct = make_benchmark_plan(cov, cfg);
            r.direct = benchmark_stats(cov, topo, corr, sigma_j2, aging, r.plan.direct, cfg, r.reference);
            r.cascaded = zero_stats(cov.M, cov.K, N, cfg);
            r.plan.cascaded.tau_p = cfg.tau_p;
            r.plan.cascaded.coset = r.cascaded.coset;
            r.plan.cascaded.power.assign(cov.K, 0.0);
            r.plan.cascaded.pilot.assign(cov.K, 0);
            r.plan.cascaded.prime_ap.assign(cov.K, 0);
        }
        r.nmse = nmse(cov, r);
        return r;
    }

    std::vector<std::size_t> pilot_instants(EstimationScheme scheme, const SystemConfig &cfg)
    {
        std::vector<std::size_t> v;
        const std::size_t last = scheme == EstimationScheme::two_phase ? 2 * cfg.tau_p : cfg.tau_p;
        for (std::size_t n = 1; n <= last; ++n)
            v.push_back(n);
        return v;
    }

    namespace
    {
        // Observation y_m[t] = sum_{k at instant t} sqrt(p_k) s(m, k, t) + interference(m, t) + w_m[t],
        // filtered per user: g_hat_mk = W_mk y_m[t_k].
        template <typename Signal, typename Interference>
        std::vector<arma::cx_vec> realise(const ChannelBlock &b, const PhaseStats &st, const SystemConfig &cfg,
                                          RandomStream &noise, Signal signal, Interference interference)
        {
            std::map<std::size_t, std::vector<std::size_t>> users_at;
            for (std::size_t k = 0; k < st.K; ++k)
                users_at[st.instant[k]].push_back(k);

            std::vector<arma::cx_vec> g_hat(st.M * st.K);
            const double sd = std::sqrt(cfg.sigma2);
            for (const auto &[n, users] : users_at)
                for (std::size_t m = 0; m < st.M; ++m)
                {
                    arma::cx_vec y = sd * noise.complex_normal_vec(b.N);
                    y += interference(m, n);
                    for (std::size_t k : users)
                        y += std::sqrt(st.power[k]) * signal(m, k, n);
                    for (std::size_t k : users)
                        g_hat[st.idx(m, k)] = st.W[st.idx(m, k)] * y;
                }
            return g_hat;
        }
    }

    std::vector<arma::cx_vec> estimate_direct(const ChannelBlock &b, const PhaseStats &st, const SystemConfig &cfg,
                                              RandomStream &noise)
    {
        return realise(
            b, st, cfg, noise, [&](std::size_t m, std::size_t k, std::size_t n) { return b.g_d(m, k, n); },
            [&](std::size_t, std::size_t) { return arma::cx_vec(b.N, arma::fill::zeros); });
    }

    std::vector<arma::cx_vec> estimate_cascaded(const ChannelBlock &b, const PhaseStats &st, const SystemConfig &cfg,
                                                RandomStream &noise)
    {
        return realise(
            b, st, cfg, noise, [&](std::size_t m, std::size_t k, std::size_t n) { return b.g_c_total(m, k, n); },
            [&](std::size_t m, std::size_t n) { return b.emi_at_ap(m, n); });
    }

    std::vector<arma::cx_vec> estimate_benchmark(const ChannelBlock &b, const PhaseStats &st, const SystemConfig &cfg,
                                                 RandomStream &noise)
    {
        return realise(
            b, st, cfg, noise, [&](std::size_t m, std::size_t k, std::size_t n) { return b.g(m, k, n); },
            [&](std::size_t m, std::size_t n) { return b.emi_at_ap(m, n); });
    }
}

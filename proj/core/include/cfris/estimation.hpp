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

#include <string>
#include <vector>

#include <armadillo>

#include "cfris/channel.hpp"
#include "cfris/config.hpp"
#include "cfris/correlation.hpp"
#include "cfris/random.hpp"
#include "cfris/topology.hpp"

namespace cfris
{
    enum class EstimationScheme
    {
        two_phase, // RIS-OFF direct sub-phase, then RIS-ON cascaded sub-phase
        benchmark  // single-phase joint MMSE with equal pilot power
    };

    std::string to_string(EstimationScheme s);
    EstimationScheme estimation_scheme_from_string(const std::string &s);

    // Pilot allocation of one estimation sub-phase. Pilot indices are 0-based.
    struct PhasePlan
    {
        std::size_t tau_p = 0;
        std::vector<double> power;                   // p_k
        std::vector<std::size_t> pilot;              // t_k - 1
        std::vector<std::size_t> prime_ap;           // argmax_m tr(Delta_mk)
        std::vector<std::vector<std::size_t>> coset; // users sharing k's pilot, sorted, k included
    };

    struct PilotPlan
    {
        PhasePlan direct;
        PhasePlan cascaded;
    };

    // p_k = K p_p sum_m tr(Delta_mk) / sum_mk' tr(Delta_mk'); equal split if all traces vanish.
    std::vector<double> pilot_power_control(const arma::mat &traces, double p_p);

    // Users 1..tau_p take pilots 1..tau_p; every later user takes the pilot whose current users
    // cause the least p_k tr(Delta) at its prime AP (ties go to the lowest pilot index).
    PhasePlan assign_pilots(const arma::mat &traces, const std::vector<double> &power, std::size_t tau_p);

    PilotPlan make_pilot_plan(const Covariances &cov, const SystemConfig &cfg);

    // Equal pilot power p_p, assignment driven by the total covariance.
    PhasePlan make_benchmark_plan(const Covariances &cov, const SystemConfig &cfg);

    // MMSE statistics of one sub-phase, per (m, k) at index m * K + k.
    struct PhaseStats
    {
        std::size_t M = 0, K = 0;
        std::vector<arma::cx_mat> R;   // cross-covariance of g_mk[ref] and the observation
        std::vector<arma::cx_mat> Psi; // inverse observation covariance
        std::vector<arma::cx_mat> W;   // R Psi, the estimation filter
        std::vector<arma::cx_mat> Q;   // R (R Psi)^H = E{g_hat g_hat^H}
        arma::mat trace_Q;             // M x K
        // trace_bar(k, k', m) = tr(Qbar_mkk') = tr(R_mk' (R_mk Psi_mk)^H) for k' in coset(k), 0 otherwise.
        arma::cx_cube trace_bar;
        std::vector<std::vector<std::size_t>> coset;
        std::vector<std::size_t> instant; // 1-based pilot instant per user
        std::vector<double> power;

        std::size_t idx(std::size_t m, std::size_t k) const { return m * K + k; }
        bool active() const { return !R.empty(); }
    };

    struct EstimationResult
    {
        EstimationScheme scheme = EstimationScheme::two_phase;
        std::size_t reference = 0; // 1-based instant the estimates refer to
        PilotPlan plan;            // benchmark: plan.direct holds the single phase
        PhaseStats direct;         // benchmark: statistics of the joint estimate
        PhaseStats cascaded;       // benchmark: all-zero with singleton cosets
        double nmse = 0.0;

        std::size_t M() const { return direct.M; }
        std::size_t K() const { return direct.K; }
        arma::mat trace_Q_total() const { return direct.trace_Q + cascaded.trace_Q; }
        arma::cx_mat Q_total(std::size_t m, std::size_t k) const
        {
            return direct.Q[direct.idx(m, k)] + cascaded.Q[cascaded.idx(m, k)];
        }
        std::size_t data_instants(std::size_t tau_c) const { return tau_c - reference + 1; }
    };

    // Direct sub-phase: pilots at instants t_k, RIS off.
    PhaseStats direct_phase_stats(const Covariances &cov, const AgingTable &aging, const PhasePlan &plan,
                                  const SystemConfig &cfg, std::size_t reference);

    // Cascaded sub-phase: pilots at instants t_k + tau_p, direct part removed, EMI present.
    PhaseStats cascaded_phase_stats(const Covariances &cov, const Topology &topo, const CorrelationSet &corr,
                                    const std::vector<double> &sigma_j2, const AgingTable &aging,
                                    const PhasePlan &plan, const SystemConfig &cfg, std::size_t reference);

    // Benchmark: joint estimate of g_mk from pilots at instants t_k, RIS on.
    PhaseStats benchmark_stats(const Covariances &cov, const Topology &topo, const CorrelationSet &corr,
                               const std::vector<double> &sigma_j2, const AgingTable &aging, const PhasePlan &plan,
                               const SystemConfig &cfg, std::size_t reference);

    EstimationResult estimate_statistics(EstimationScheme scheme, const SystemConfig &cfg, const Topology &topo,
                                         const CorrelationSet &corr, const Covariances &cov,
                                         const std::vector<double> &sigma_j2, const AgingTable &aging);

    // sum tr(Delta - Q^d - Q^c) / sum tr(Delta)
    double nmse(const Covariances &cov, const EstimationResult &est);

    // Reference instant of a scheme: 2 tau_p + 1 (two-phase) or tau_p + 1 (benchmark).
    std::size_t reference_instant(EstimationScheme scheme, const SystemConfig &cfg);

    // Realised estimates g_hat_mk[ref] (index m * K + k) from the pilot observations of one block.
    // The block must contain the pilot instants of the phase. Noise is drawn from `noise`.
    std::vector<arma::cx_vec> estimate_direct(const ChannelBlock &block, const PhaseStats &stats,
                                              const SystemConfig &cfg, RandomStream &noise);
    // The phase-1 direct contribution is removed exactly before projection.
    std::vector<arma::cx_vec> estimate_cascaded(const ChannelBlock &block, const PhaseStats &stats,
                                                const SystemConfig &cfg, RandomStream &noise);
    std::vector<arma::cx_vec> estimate_benchmark(const ChannelBlock &block, const PhaseStats &stats,
                                                 const SystemConfig &cfg, RandomStream &noise);

    // Pilot instants that a block must materialise for the given scheme.
    std::vector<std::size_t> pilot_instants(EstimationScheme scheme, const SystemConfig &cfg);
}

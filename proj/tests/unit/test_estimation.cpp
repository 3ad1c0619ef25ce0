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

#include <catch_amalgamated.hpp>

#include <numeric>

#include "cfris/estimation.hpp"
#include "cfris/linalg.hpp"
#include "cfris/model.hpp"
#include "cfris/trial.hpp"
#include "support.hpp"

using namespace cfris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    DropModel unit_drop(SystemConfig c, EstimationScheme s, double ris_gain = 1.0)
    {
        return build_drop_model(c, testing::unit_topology(c, ris_gain), s);
    }

    Topology without_ris(Topology t)
    {
        t.ris_pos.clear();
        t.beta_ap_ris.set_size(t.beta_d.n_rows, 0);
        t.beta_user_ris.set_size(t.beta_d.n_cols, 0);
        return t;
    }
}

TEST_CASE("pilot power control", "[estimation]")
{
    const arma::mat tr{{3.0, 1.0}};
    const auto p = pilot_power_control(tr, 1.0);
    CHECK_THAT(p[0], WithinRel(1.5, 1e-15));
    CHECK_THAT(p[1], WithinRel(0.5, 1e-15));

    RandomStream r(2);
    arma::mat big(5, 7);
    big.imbue([&] { return r.uniform(0.01, 2.0); });
    const auto q = pilot_power_control(big, 0.1);
    CHECK_THAT(std::accumulate(q.begin(), q.end(), 0.0), WithinRel(7 * 0.1, 1e-14));

    const auto z = pilot_power_control(arma::mat(2, 3, arma::fill::zeros), 0.2);
    for (double v : z)
        CHECK(v == 0.2);
}

TEST_CASE("pilot assignment", "[estimation]")
{
    SECTION("no more users than pilots: singleton cosets")
    {
        const arma::mat tr{{1.0, 2.0, 3.0}, {0.5, 0.1, 4.0}};
        const PhasePlan plan = assign_pilots(tr, {1.0, 1.0, 1.0}, 3);
        for (std::size_t k = 0; k < 3; ++k)
        {
            CHECK(plan.pilot[k] == k);
            CHECK(plan.coset[k] == std::vector<std::size_t>{k});
        }
        CHECK(plan.prime_ap == std::vector<std::size_t>{0, 0, 1});
    }
    SECTION("sequential argmin against exhaustive evaluation")
    {
        RandomStream r(9);
        for (int rep = 0; rep < 50; ++rep)
        {
            const std::size_t M = 4, K = 9, tau = 3;
            arma::mat tr(M, K);
            tr.imbue([&] { return r.uniform(0.0, 1.0); });
            std::vector<double> p(K);
            for (auto &v : p)
                v = r.uniform(0.1, 2.0);
            const PhasePlan plan = assign_pilots(tr, p, tau);
            // replay: each later user, given the earlier users' pilots, must sit on a minimiser
            for (std::size_t k = tau; k < K; ++k)
            {
                const std::size_t m = plan.prime_ap[k];
                REQUIRE(m == tr.col(k).index_max());
                std::vector<double> cost(tau, 0.0);
                for (std::size_t i = 0; i < k; ++i)
                    cost[plan.pilot[i]] += p[k] * tr(m, i);
                const std::size_t best = static_cast<std::size_t>(
                    std::min_element(cost.begin(), cost.end()) - cost.begin()); // first minimum
                REQUIRE(plan.pilot[k] == best);
            }
            for (std::size_t k = 0; k < K; ++k)
            {
                REQUIRE(std::is_sorted(plan.coset[k].begin(), plan.coset[k].end()));
                for (std::size_t i : plan.coset[k])
                    REQUIRE(plan.pilot[i] == plan.pilot[k]);
            }
        }
    }
    SECTION("ties go to the lowest pilot index")
    {
        const arma::mat tr{{1.0, 1.0, 1.0, 1.0}};
        const PhasePlan plan = assign_pilots(tr, {1.0, 1.0, 1.0, 1.0}, 3);
        CHECK(plan.pilot[3] == 0);
        CHECK(plan.coset[0] == std::vector<std::size_t>{0, 3});
    }
}

TEST_CASE("MMSE limits and NMSE bounds", "[estimation]")
{
    SystemConfig c = testing::unit_config(3, 2, 0, 2);
    c.velocity = 0.0;
    c.sigma2 = 1e-12;
    const DropModel clean = unit_drop(c, EstimationScheme::two_phase);
    CHECK_THAT(clean.est.nmse, WithinAbs(0.0, 1e-9));
    for (std::size_t m = 0; m < c.M; ++m)
        for (std::size_t k = 0; k < c.K; ++k)
            CHECK(arma::norm(clean.est.Q_total(m, k) - clean.cov.Delta(m, k), "fro") < 1e-9);

    c.sigma2 = 1e12;
    CHECK_THAT(unit_drop(c, EstimationScheme::two_phase).est.nmse, WithinAbs(1.0, 1e-9));

    // contamination keeps an error floor even without noise
    SystemConfig crowded = testing::unit_config(3, 4, 0, 2);
    crowded.velocity = 0.0;
    crowded.sigma2 = 1e-12;
    const double floor = unit_drop(crowded, EstimationScheme::two_phase).est.nmse;
    CHECK(floor > 1e-3);
    CHECK(floor < 1.0);

    for (double s2 : {0.01, 0.2, 5.0})
    {
        SystemConfig g = testing::unit_config(3, 3, 1, 2);
        g.sigma2 = s2;
        for (auto s : {EstimationScheme::two_phase, EstimationScheme::benchmark})
        {
            const DropModel d = unit_drop(g, s);
            CHECK(d.est.nmse > 0.0);
            CHECK(d.est.nmse < 1.0);
            for (std::size_t m = 0; m < g.M; ++m)
                for (std::size_t k = 0; k < g.K; ++k)
                    CHECK(min_eigenvalue(d.cov.Delta(m, k) - d.est.Q_total(m, k)) > -1e-12);
        }
    }
}

TEST_CASE("reference instants and pilot instants", "[estimation]")
{
    const SystemConfig c = testing::unit_config(3, 3, 1, 2);
    CHECK(reference_instant(EstimationScheme::two_phase, c) == 5);
    CHECK(reference_instant(EstimationScheme::benchmark, c) == 3);
    CHECK(pilot_instants(EstimationScheme::two_phase, c) == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(pilot_instants(EstimationScheme::benchmark, c) == std::vector<std::size_t>{1, 2});
    const DropModel d = unit_drop(c, EstimationScheme::two_phase);
    for (std::size_t k = 0; k < c.K; ++k)
    {
        CHECK(d.est.direct.instant[k] == d.est.plan.direct.pilot[k] + 1);
        CHECK(d.est.cascaded.instant[k] == d.est.plan.cascaded.pilot[k] + 1 + c.tau_p);
    }
    CHECK(d.est.data_instants(c.tau_c) == c.tau_c - 4);
}

TEST_CASE("EMI degrades the cascaded estimate", "[estimation]")
{
    SystemConfig c = testing::unit_config(3, 3, 1, 2);
    c.rho_sir_db = std::numeric_limits<double>::infinity();
    const double clean = arma::accu(unit_drop(c, EstimationScheme::two_phase).est.cascaded.trace_Q);
    c.rho_sir_db = 0.0;
    const double noisy = arma::accu(unit_drop(c, EstimationScheme::two_phase).est.cascaded.trace_Q);
    CHECK(noisy < clean);
    CHECK(noisy > 0.0);
}

TEST_CASE("without RIS the benchmark reduces to the direct sub-phase", "[estimation]")
{
    SystemConfig c = testing::unit_config(3, 4, 0, 2);
    const Topology t = without_ris(testing::unit_topology(c));
    const CorrelationSet corr = build_correlation(c);
    const Covariances cov = build_covariances(t, corr);
    const AgingTable aging(c);
    const PhasePlan plan = make_benchmark_plan(cov, c);
    const PhaseStats a = direct_phase_stats(cov, aging, plan, c, 7);
    const PhaseStats b = benchmark_stats(cov, t, corr, {}, aging, plan, c, 7);
    for (std::size_t i = 0; i < a.Q.size(); ++i)
        CHECK(arma::norm(a.Q[i] - b.Q[i], "fro") < 1e-13 * arma::norm(a.Q[i], "fro"));
    CHECK(arma::approx_equal(a.trace_Q, b.trace_Q, "reldiff", 1e-13));
}

TEST_CASE("realised estimates follow the MMSE statistics", "[estimation]")
{
    for (auto scheme : {EstimationScheme::two_phase, EstimationScheme::benchmark})
    {
        SystemConfig c = testing::unit_config(2, 3, 1, 2);
        const DropModel d = unit_drop(c, scheme);
        const std::size_t T = 20000;
        const std::size_t m = 1, k = 2;
        arma::cx_mat S_hat(c.N, c.N, arma::fill::zeros), S_err(c.N, c.N, arma::fill::zeros);
        double err = 0.0, tot = 0.0;
        const RandomStream root(31);
        for (std::size_t i = 0; i < T; ++i)
        {
            const TrialRealization tr = realize_trial(d, root.derive("t", i));
            const arma::cx_vec &gh = tr.g_hat[m * c.K + k];
            const arma::cx_vec e = tr.g_ref[m * c.K + k] - gh;
            S_hat += gh * gh.t();
            S_err += e * gh.t();
            for (std::size_t l = 0; l < tr.g_ref.size(); ++l)
            {
                err += std::pow(arma::norm(tr.g_ref[l] - tr.g_hat[l]), 2);
                tot += std::pow(arma::norm(tr.g_ref[l]), 2);
            }
        }
        S_hat /= static_cast<double>(T);
        S_err /= static_cast<double>(T);
        const arma::cx_mat Q = d.est.Q_total(m, k);
        const arma::cx_mat C = d.cov.Delta(m, k) - Q;
        INFO(to_string(scheme));
        CHECK(testing::max_z(S_hat, Q, T) < 5.0);
        // the error is uncorrelated with the estimate
        CHECK(testing::max_z(S_err, arma::zeros<arma::cx_mat>(c.N, c.N), C, Q, T) < 5.0);
        CHECK_THAT(err / tot, WithinRel(d.est.nmse, 0.03));
    }
}

TEST_CASE("two-phase beats the benchmark on the default deployment", "[estimation]")
{
    SystemConfig c;
    int better = 0;
    for (std::uint64_t s = 1; s <= 5; ++s)
    {
        const Topology t = draw_topology(c, RandomStream(s));
        const double tp = build_drop_model(c, t, EstimationScheme::two_phase).est.nmse;
        const double bm = build_drop_model(c, t, EstimationScheme::benchmark).est.nmse;
        better += tp < bm;
    }
    CHECK(better == 5);
}

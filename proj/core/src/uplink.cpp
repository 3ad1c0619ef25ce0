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

#include "cfris/uplink.hpp"

#include <algorithm>
#include <cmath>

#include "cfris/error.hpp"
#include "cfris/linalg.hpp"

namespace cfris
{
    std::string to_string(Receiver r) { return r == Receiver::lsfd ? "lsfd" : "mf"; }

    Receiver receiver_from_string(const std::string &s)
    {
        if (s == "lsfd") return Receiver::lsfd;
        if (s == "mf") return Receiver::mf;
        throw config_error("unknown receiver '" + s + "' (expected lsfd or mf)");
    }

    std::vector<double> uplink_power_control(const Covariances &cov)
    {
        const double total = arma::accu(cov.tr_total);
        std::vector<double> eta(cov.K, 1.0);
        if (!(total > 0.0)) return eta;
        for (std::size_t k = 0; k < cov.K; ++k)
            eta[k] = static_cast<double>(cov.K) * arma::accu(cov.tr_total.col(k)) / total;
        return eta;
    }

    arma::cx_vec UplinkTerms::column(const arma::cx_cube &c, std::size_t k, std::size_t kp)
    {
        arma::cx_vec v(c.n_rows);
        for (arma::uword m = 0; m < c.n_rows; ++m)
            v(m) = c(m, k, kp);
        return v;
    }

    arma::cx_mat UplinkTerms::H(std::size_t k, std::size_t kp) const
    {
        const arma::cx_vec d = Omega_d(k, kp), c = Omega_c(k, kp);
        arma::cx_mat h = d * c.t() + c * d.t();
        h.diag().zeros();
        return h;
    }

    namespace
    {
        std::vector<std::vector<std::size_t>> intersect(const std::vector<std::vector<std::size_t>> &a,
                                                        const std::vector<std::vector<std::size_t>> &b)
        {
            std::vector<std::vector<std::size_t>> out(a.size());
            for (std::size_t k = 0; k < a.size(); ++k)
                std::set_intersection(a[k].begin(), a[k].end(), b[k].begin(), b[k].end(), std::back_inserter(out[k]));
            return out;
        }
    }

    UplinkTerms build_uplink_terms(const DropModel &d, const std::vector<double> &eta)
    {
        const auto &est = d.est;
        const std::size_t M = d.cov.M, K = d.cov.K;
        if (eta.size() != K)
            throw std::invalid_argument("build_uplink_terms: one power coefficient per user required");
        UplinkTerms t;
        t.M = M;
        t.K = K;
        t.p_u = d.cfg.p_u;
        t.eta = eta;
        t.b = est.trace_Q_total();
        t.upsilon.set_size(M, K, K);
        t.omega_d.zeros(M, K, K);
        t.omega_c.zeros(M, K, K);
        t.gamma.zeros(M, K);
        t.lambda = d.cfg.sigma2 * t.b;
        t.coset_d = est.direct.coset;
        t.coset_c = est.cascaded.coset;
        t.coset_both = intersect(t.coset_d, t.coset_c);

        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t k = 0; k < K; ++k)
            {
                const arma::cx_mat Q = est.Q_total(m, k);
                for (std::size_t kp = 0; kp < K; ++kp)
                    t.upsilon(m, k, kp) = trace_product(Q, d.cov.Delta(m, kp));
                for (std::size_t kp : t.coset_d[k])
                    t.omega_d(m, k, kp) = est.direct.trace_bar(k, kp, m);
                for (std::size_t kp : t.coset_c[k])
                    t.omega_c(m, k, kp) = est.cascaded.trace_bar(k, kp, m);
                double g = 0.0;
                for (std::size_t j = 0; j < d.topo.J(); ++j)
                    g += d.topo.beta_ap_ris(m, j) * d.sigma_j2[j] * d.corr.trace_T[j] *
                         (trace_product(d.corr.R_mj_r(m, j), est.direct.Q[est.direct.idx(m, k)]) +
                          trace_product(d.corr.R_mj_r(m, j), est.cascaded.Q[est.cascaded.idx(m, k)]));
                t.gamma(m, k) = g;
            }
        return t;
    }

    arma::cx_vec mf_weights(std::size_t M)
    {
        return arma::cx_vec(M, arma::fill::value(std::complex<double>(1.0 / static_cast<double>(M), 0.0)));
    }

    arma::cx_mat uplink_ui_matrix(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag)
    {
        arma::cx_mat C(t.M, t.M, arma::fill::zeros);
        arma::vec diag(t.M, arma::fill::zeros);
        for (std::size_t kp = 0; kp < t.K; ++kp)
            for (std::size_t m = 0; m < t.M; ++m)
                diag(m) += t.eta[kp] * t.upsilon(m, k, kp);
        C.diag() = arma::conv_to<arma::cx_vec>::from(diag);
        for (std::size_t kp : t.coset_both[k])
        {
            const double r = aging.rho(kp, lag);
            C += (t.eta[kp] * r * r) * t.H(k, kp);
        }
        for (std::size_t kp : t.coset_d[k])
        {
            const double r = aging.rho(kp, lag);
            const arma::cx_vec w = t.Omega_d(k, kp);
            C += (t.eta[kp] * r * r) * (w * w.t());
        }
        for (std::size_t kp : t.coset_c[k])
        {
            const double r = aging.rho(kp, lag);
            const arma::cx_vec w = t.Omega_c(k, kp);
            C += (t.eta[kp] * r * r) * (w * w.t());
        }
        return t.p_u * C;
    }

    arma::cx_vec lsfd_weights(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag)
    {
        arma::cx_mat C = uplink_ui_matrix(t, aging, k, lag);
        C.diag() += arma::conv_to<arma::cx_vec>::from(arma::vec(t.gamma.col(k) + t.lambda.col(k)));
        return hermitian_solve(hermitian_part(C), arma::conv_to<arma::cx_vec>::from(arma::vec(t.b.col(k))));
    }

    arma::cx_vec uplink_weights(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag,
                                Receiver r)
    {
        return r == Receiver::lsfd ? lsfd_weights(t, aging, k, lag) : mf_weights(t.M);
    }

    SinrParts uplink_parts(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag,
                           const arma::cx_vec &a)
    {
        SinrParts p;
        const double r = aging.rho(k, lag);
        const std::complex<double> ab = arma::cdot(a, arma::conv_to<arma::cx_vec>::from(arma::vec(t.b.col(k))));
        p.ds = t.p_u * t.eta[k] * r * r * std::norm(ab);
        p.ui = std::real(arma::cdot(a, uplink_ui_matrix(t, aging, k, lag) * a));
        const arma::vec pa = arma::square(arma::abs(a));
        p.emi = arma::dot(pa, t.gamma.col(k));
        p.ns = arma::dot(pa, t.lambda.col(k));
        return p;
    }

    double uplink_sinr(const UplinkTerms &t, const AgingTable &aging, std::size_t k, std::size_t lag, Receiver r)
    {
        return uplink_parts(t, aging, k, lag, uplink_weights(t, aging, k, lag, r)).sinr();
    }

    arma::mat uplink_sinr_trace(const UplinkTerms &t, const AgingTable &aging, std::size_t data_instants, Receiver r)
    {
        arma::mat s(t.K, data_instants);
        for (std::size_t k = 0; k < t.K; ++k)
            for (std::size_t lag = 0; lag < data_instants; ++lag)
                s(k, lag) = uplink_sinr(t, aging, k, lag, r);
        return s;
    }

    std::vector<double> se_from_sinr(const arma::mat &sinr, std::size_t tau_c)
    {
        std::vector<double> se(sinr.n_rows, 0.0);
        for (arma::uword k = 0; k < sinr.n_rows; ++k)
        {
            double s = 0.0;
            for (arma::uword n = 0; n < sinr.n_cols; ++n)
                s += std::log2(1.0 + sinr(k, n));
            se[k] = s / static_cast<double>(tau_c);
        }
        return se;
    }

    std::vector<double> uplink_se(const UplinkTerms &t, const AgingTable &aging, std::size_t data_instants,
                                  std::size_t tau_c, Receiver r)
    {
        return se_from_sinr(uplink_sinr_trace(t, aging, data_instants, r), tau_c);
    }
}

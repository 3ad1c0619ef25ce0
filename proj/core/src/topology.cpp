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

#include "cfris/topology.hpp"

#include <cmath>
#include <stdexcept>

#include "cfris/error.hpp"
#include "json.hpp"

namespace cfris
{
    double distance_m(const Position &a, const Position &b)
    {
        const double dx = 1000.0 * (a.x_km - b.x_km);
        const double dy = 1000.0 * (a.y_km - b.y_km);
        const double dh = a.h_m - b.h_m;
        return std::sqrt(dx * dx + dy * dy + dh * dh);
    }

    PathLossModel path_loss_model(const SystemConfig &cfg)
    {
        return PathLossModel{cfg.intercept_db(), cfg.d0_m, cfg.d1_m};
    }

    double path_loss_db(double d_m, const PathLossModel &pm)
    {
        if (!(d_m > 0.0))
            throw std::invalid_argument("path_loss: distance must be positive");
        const double d = d_m / 1000.0, d0 = pm.d0_m / 1000.0, d1 = pm.d1_m / 1000.0;
        if (d > d1)
            return -pm.intercept_db - 35.0 * std::log10(d);
        if (d > d0)
            return -pm.intercept_db - 15.0 * std::log10(d1) - 20.0 * std::log10(d);
        return -pm.intercept_db - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
    }

    double path_loss(double d_m, const PathLossModel &pm)
    {
        return std::pow(10.0, path_loss_db(d_m, pm) / 10.0);
    }

    namespace
    {
        std::uint64_t pair_index(std::size_t a, std::size_t b)
        {
            return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
        }

        Position draw_position(RandomStream s, double lo_km, double hi_km, double h_m)
        {
            Position p;
            p.x_km = s.uniform(lo_km, hi_km);
            p.y_km = s.uniform(lo_km, hi_km);
            p.h_m = h_m;
            return p;
        }

        double link_gain(const Position &a, const Position &b, const PathLossModel &pm, double sigma_db,
                         RandomStream s)
        {
            const double z_db = sigma_db > 0.0 ? sigma_db * s.normal() : 0.0;
            return std::pow(10.0, (path_loss_db(distance_m(a, b), pm) + z_db) / 10.0);
        }
    }

    Topology draw_topology(const SystemConfig &cfg, const RandomStream &rng)
    {
        cfg.validate();
        const double half = 0.5 * cfg.area_km;
        const auto pm = path_loss_model(cfg);
        Topology t;
        for (std::size_t m = 0; m < cfg.M; ++m)
            t.ap_pos.push_back(draw_position(rng.derive("ap", m), -half, 0.0, cfg.h_ap_m));
        for (std::size_t k = 0; k < cfg.K; ++k)
            t.user_pos.push_back(draw_position(rng.derive("user", k), 0.0, half, cfg.h_user_m));
        for (std::size_t j = 0; j < cfg.J; ++j)
            t.ris_pos.push_back(draw_position(rng.derive("ris", j), 0.0, half, cfg.h_ris_m));

        t.beta_d.set_size(cfg.M, cfg.K);
        t.beta_ap_ris.set_size(cfg.M, cfg.J);
        t.beta_user_ris.set_size(cfg.K, cfg.J);
        for (std::size_t m = 0; m < cfg.M; ++m)
            for (std::size_t k = 0; k < cfg.K; ++k)
                t.beta_d(m, k) = link_gain(t.ap_pos[m], t.user_pos[k], pm, cfg.shadow_sigma_db,
                                           rng.derive("shadow_ap_user", pair_index(m, k)));
        for (std::size_t m = 0; m < cfg.M; ++m)
            for (std::size_t j = 0; j < cfg.J; ++j)
                t.beta_ap_ris(m, j) = link_gain(t.ap_pos[m], t.ris_pos[j], pm, cfg.shadow_sigma_db,
                                                rng.derive("shadow_ap_ris", pair_index(m, j)));
        for (std::size_t k = 0; k < cfg.K; ++k)
            for (std::size_t j = 0; j < cfg.J; ++j)
                t.beta_user_ris(k, j) = link_gain(t.user_pos[k], t.ris_pos[j], pm, cfg.shadow_sigma_db,
                                                  rng.derive("shadow_user_ris", pair_index(k, j)));
        return t;
    }

    namespace
    {
        using nlohmann::json;

        json positions_to_json(const std::vector<Position> &ps)
        {
            json a = json::array();
            for (const auto &p : ps)
                a.push_back({p.x_km, p.y_km, p.h_m});
            return a;
        }

        std::vector<Position> positions_from_json(const json &a)
        {
            std::vector<Position> ps;
            for (const auto &e : a)
                ps.push_back(Position{e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
            return ps;
        }

        json mat_to_json(const arma::mat &A)
        {
            json rows = json::array();
            for (arma::uword r = 0; r < A.n_rows; ++r)
            {
                json row = json::array();
                for (arma::uword c = 0; c < A.n_cols; ++c)
                    row.push_back(A(r, c));
                rows.push_back(row);
            }
            return rows;
        }

        arma::mat mat_from_json(const json &rows, std::size_t n_rows, std::size_t n_cols, const char *name)
        {
            if (rows.size() != n_rows)
                throw config_error(std::string("topology json: ") + name + " has wrong row count");
            arma::mat A(n_rows, n_cols);
            for (std::size_t r = 0; r < n_rows; ++r)
            {
                if (rows[r].size() != n_cols)
                    throw config_error(std::string("topology json: ") + name + " has wrong column count");
                for (std::size_t c = 0; c < n_cols; ++c)
                    A(r, c) = rows[r][c].get<double>();
            }
            return A;
        }
    }

    std::string topology_to_json(const Topology &t)
    {
        json j;
        j["ap_pos"] = positions_to_json(t.ap_pos);
        j["user_pos"] = positions_to_json(t.user_pos);
        j["ris_pos"] = positions_to_json(t.ris_pos);
        j["beta_d"] = mat_to_json(t.beta_d);
        j["beta_ap_ris"] = mat_to_json(t.beta_ap_ris);
        j["beta_user_ris"] = mat_to_json(t.beta_user_ris);
        return j.dump(1);
    }

    Topology topology_from_json(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text);
            Topology t;
            t.ap_pos = positions_from_json(j.at("ap_pos"));
            t.user_pos = positions_from_json(j.at("user_pos"));
            t.ris_pos = positions_from_json(j.at("ris_pos"));
            t.beta_d = mat_from_json(j.at("beta_d"), t.M(), t.K(), "beta_d");
            t.beta_ap_ris = mat_from_json(j.at("beta_ap_ris"), t.M(), t.J(), "beta_ap_ris");
            t.beta_user_ris = mat_from_json(j.at("beta_user_ris"), t.K(), t.J(), "beta_user_ris");
            return t;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw config_error(std::string("topology json: ") + e.what());
        }
    }
}

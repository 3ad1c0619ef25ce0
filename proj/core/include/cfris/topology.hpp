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

#include "cfris/config.hpp"
#include "cfris/random.hpp"

namespace cfris
{
    struct Position
    {
        double x_km = 0.0;
        double y_km = 0.0;
        double h_m = 0.0;
    };

    // 3-D separation in metres.
    double distance_m(const Position &a, const Position &b);

    // One drop: node positions and all large-scale fading coefficients (linear power gains).
    struct Topology
    {
        std::vector<Position> ap_pos;   // M
        std::vector<Position> user_pos; // K
        std::vector<Position> ris_pos;  // J
        arma::mat beta_d;               // M x K, AP-user
        arma::mat beta_ap_ris;          // M x J, AP-RIS
        arma::mat beta_user_ris;        // K x J, user-RIS

        std::size_t M() const { return ap_pos.size(); }
        std::size_t K() const { return user_pos.size(); }
        std::size_t J() const { return ris_pos.size(); }
    };

    // Three-slope path loss: flat below d0, 20 dB/decade up to d1, 35 dB/decade beyond.
    struct PathLossModel
    {
        double intercept_db = 140.7;
        double d0_m = 10.0;
        double d1_m = 50.0;
    };

    PathLossModel path_loss_model(const SystemConfig &cfg);

    // Linear gain (< 1) at 3-D distance d_m. Throws std::invalid_argument for d_m <= 0.
    double path_loss(double d_m, const PathLossModel &model);
    double path_loss_db(double d_m, const PathLossModel &model);

    // APs uniform in [-D/2, 0]^2, users and RISs uniform in [0, D/2]^2 (km), i.i.d. log-normal
    // shadowing per link. Every node and link draws from its own substream of rng, so growing
    // M, K or J keeps the existing nodes and links unchanged.
    Topology draw_topology(const SystemConfig &cfg, const RandomStream &rng);

    // Round-trip serialisation for drop replay. Doubles are written with full precision.
    std::string topology_to_json(const Topology &topo);
    Topology topology_from_json(const std::string &text);
}

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

#include <vector>

#include "cfris/channel.hpp"
#include "cfris/config.hpp"
#include "cfris/correlation.hpp"
#include "cfris/estimation.hpp"
#include "cfris/topology.hpp"

namespace cfris
{
    // Everything that is fixed within one drop: geometry, statistics and estimator design.
    struct DropModel
    {
        SystemConfig cfg;
        Topology topo;
        CorrelationSet corr;
        Covariances cov;
        std::vector<double> sigma_j2;
        AgingTable aging;
        EstimationResult est;
    };

    DropModel build_drop_model(const SystemConfig &cfg, const Topology &topo, EstimationScheme scheme);
    DropModel build_drop_model(const SystemConfig &cfg, const Topology &topo, const CorrelationSet &corr,
                               EstimationScheme scheme);
}

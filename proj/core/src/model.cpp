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

#include "cfris/model.hpp"

#include <stdexcept>

namespace cfris
{
    DropModel build_drop_model(const SystemConfig &cfg, const Topology &topo, EstimationScheme scheme)
    {
        return build_drop_model(cfg, topo, build_correlation(cfg), scheme);
    }

    DropModel build_drop_model(const SystemConfig &cfg, const Topology &topo, const CorrelationSet &corr,
                               EstimationScheme scheme)
    {
        cfg.validate();
        if (topo.M() != cfg.M || topo.K() != cfg.K || topo.J() != cfg.J)
            throw std::invalid_argument("build_drop_model: topology does not match configuration");
        DropModel d;
        d.cfg = cfg;
        d.topo = topo;
        d.corr = corr;
        d.cov = build_covariances(topo, corr);
        d.sigma_j2 = emi_power(topo, cfg);
        d.aging = AgingTable(cfg);
        d.est = estimate_statistics(scheme, cfg, topo, d.corr, d.cov, d.sigma_j2, d.aging);
        return d;
    }
}

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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <armadillo>

namespace cfris
{
    // A seeded random stream. Independent substreams are derived from a parent key by
    // hashing (tag, index) pairs, so results never depend on the order in which
    // substreams are created or on how work is scheduled across threads.
    class RandomStream
    {
    public:
        explicit RandomStream(std::uint64_t seed);

        RandomStream derive(std::string_view tag, std::uint64_t index = 0) const;
        std::uint64_t key() const { return key_; }

        double uniform(double lo, double hi);
        double normal();                  // N(0,1)
        std::complex<double> complex_normal(); // CN(0,1)
        arma::cx_vec complex_normal_vec(arma::uword n);
        arma::cx_mat complex_normal_mat(arma::uword rows, arma::uword cols);

    private:
        std::uint64_t key_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t fnv1a64(std::string_view text);
}

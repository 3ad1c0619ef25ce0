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

#include "cfris/random.hpp"

using namespace cfris;

TEST_CASE("streams are reproducible and order independent", "[random]")
{
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i)
        CHECK(a.normal() == b.normal());

    const RandomStream root(7);
    RandomStream x1 = root.derive("trial", 3);
    RandomStream unrelated = root.derive("trial", 4); // creating another stream must not matter
    (void)unrelated.normal();
    RandomStream x2 = root.derive("trial", 3);
    for (int i = 0; i < 10; ++i)
        CHECK(x1.uniform(0.0, 1.0) == x2.uniform(0.0, 1.0));

    CHECK(root.derive("trial", 3).key() != root.derive("trial", 4).key());
    CHECK(root.derive("trial", 3).key() != root.derive("noise", 3).key());
    CHECK(RandomStream(1).key() != RandomStream(2).key());
}

TEST_CASE("uniform draws stay inside the interval", "[random]")
{
    RandomStream r(11);
    for (int i = 0; i < 10000; ++i)
    {
        const double u = r.uniform(-0.75, 0.0);
        REQUIRE(u >= -0.75);
        REQUIRE(u < 0.0);
    }
}

TEST_CASE("complex normal draws have unit power and circular symmetry", "[random]")
{
    RandomStream r(5);
    const std::size_t n = 200000;
    const arma::cx_vec v = r.complex_normal_vec(n);
    const double power = arma::mean(arma::square(arma::abs(v)));
    const std::complex<double> pseudo = arma::mean(v % v);
    const std::complex<double> mean = arma::mean(v);
    // standard errors: power 1/sqrt(n), pseudo-covariance and mean ~1/sqrt(n)
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(power - 1.0) < 4.0 * se);
    CHECK(std::abs(pseudo) < 4.0 * se * std::sqrt(2.0));
    CHECK(std::abs(mean) < 4.0 * se);
}

TEST_CASE("hash helpers match published reference values", "[random]")
{
    // FNV-1a 64: empty string is the offset basis; "a" is a published test vector.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    // splitmix64 from state 0: first output of the reference generator.
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

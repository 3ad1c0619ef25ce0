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

#include "cfris/random.hpp"

#include <cmath>

namespace cfris
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t fnv1a64(std::string_view text)
    {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    RandomStream::RandomStream(std::uint64_t seed)
        : key_(splitmix64(seed)), engine_(key_)
    {
    }

    RandomStream RandomStream::derive(std::string_view tag, std::uint64_t index) const
    {
        std::uint64_t k = splitmix64(key_ ^ fnv1a64(tag));
        k = splitmix64(k ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
        return RandomStream(k);
    }

    double RandomStream::uniform(double lo, double hi)
    {
        // 53 random mantissa bits; std::uniform_real_distribution is not portable bit-for-bit.
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double RandomStream::normal() { return normal_(engine_); }

    std::complex<double> RandomStream::complex_normal()
    {
        constexpr double s = 0.70710678118654752440;
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    arma::cx_vec RandomStream::complex_normal_vec(arma::uword n)
    {
        arma::cx_vec v(n);
        for (arma::uword i = 0; i < n; ++i)
            v(i) = complex_normal();
        return v;
    }

    arma::cx_mat RandomStream::complex_normal_mat(arma::uword rows, arma::uword cols)
    {
        arma::cx_mat A(rows, cols);
        for (arma::uword c = 0; c < cols; ++c)
            for (arma::uword r = 0; r < rows; ++r)
                A(r, c) = complex_normal();
        return A;
    }
}

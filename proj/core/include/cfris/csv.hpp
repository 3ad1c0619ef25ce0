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

#include <map>
#include <string>
#include <vector>

namespace cfris
{
    // A CSV table with a fixed header. Cells are stored pre-formatted.
    struct Table
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        void add(std::vector<std::string> row);
    };

    // Shortest text that parses back to the same double ("nan", "inf" for non-finite values).
    std::string format_number(double v);
    std::string format_count(std::size_t v);

    std::string to_csv(const Table &t);
    void write_text_file(const std::string &path, const std::string &content);

    // Linear-interpolation quantile (q in [0,1]) of unsorted values; NaN for an empty input.
    double quantile(std::vector<double> values, double q);
}

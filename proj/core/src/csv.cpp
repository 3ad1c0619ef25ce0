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

#include "cfris/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace cfris
{
    void Table::add(std::vector<std::string> row)
    {
        if (row.size() != header.size())
            throw std::logic_error("Table::add: row width does not match header");
        rows.push_back(std::move(row));
    }

    std::string format_number(double v)
    {
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    std::string format_count(std::size_t v) { return std::to_string(v); }

    std::string to_csv(const Table &t)
    {
        std::string out;
        auto line = [&out](const std::vector<std::string> &cells)
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(t.header);
        for (const auto &r : t.rows)
            line(r);
        return out;
    }

    void write_text_file(const std::string &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + path + "'");
        f << content;
        if (!f) throw std::runtime_error("write failed for '" + path + "'");
    }

    double quantile(std::vector<double> v, double q)
    {
        if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
        std::sort(v.begin(), v.end());
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    }
}

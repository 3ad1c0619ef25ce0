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

#include <stdexcept>
#include <string>

namespace cfris
{
    // Raised when a configuration file or experiment description violates its schema.
    // The message carries the offending field path, e.g. "config.ini:12: drops".
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Raised when a numerical routine cannot produce a trustworthy result
    // (indefinite covariance, ill-conditioned solve, non-finite SINR).
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

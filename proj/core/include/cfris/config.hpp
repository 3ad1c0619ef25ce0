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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cfris
{
    inline constexpr double speed_of_light = 3.0e8; // m/s, as used throughout the model
    inline constexpr double pi = 3.14159265358979323846;

    // Library version string ("major.minor.patch").
    const char *version();

    double dbm_to_watt(double dbm);
    double db_to_linear(double db);
    double kmh_to_mps(double kmh);
    double mps_to_kmh(double mps);

    // Hata-COST231 derived intercept of the three-slope path-loss model (dB).
    double hata_intercept_db(double f_c_hz, double h_ap_m, double h_user_m);

    // Every scalar parameter of one system instance. Powers are stored linear (W),
    // velocities in m/s, lengths in metres unless the name says otherwise.
    struct SystemConfig
    {
        std::size_t M = 20;   // APs
        std::size_t N = 2;    // antennas per AP
        std::size_t K = 20;   // single-antenna users
        std::size_t J = 2;    // RISs
        std::size_t L_h = 4;  // RIS elements per row
        std::size_t L_v = 4;  // RIS elements per column

        double area_km = 1.5; // side length D of the square deployment region

        std::size_t tau_p = 8;   // pilot length (samples per estimation sub-phase)
        std::size_t tau_c = 200; // resource-block length (samples)
        double T_s = 1.0e-5;     // duration of one time instant (s)
        double f_c = 1.9e9;      // carrier (Hz)
        double bandwidth = 20.0e6;

        double p_u = 0.1;                  // uplink data power (W), 20 dBm
        double p_d = 0.19952623149688797;  // downlink power (W), 23 dBm
        double p_p = 0.1;                  // pilot power without power control (W), 20 dBm
        double sigma2 = 7.943282347242822e-13; // noise power (W), -91 dBm

        double rho_sir_db = 20.0; // signal-to-EMI ratio; +inf switches EMI off

        double velocity = 0.0;          // m/s, applies to every user unless overridden
        std::vector<double> velocities; // optional per-user override (size K)

        double d_v = 0.0; // RIS element height (m); 0 selects lambda_c / 2
        double d_h = 0.0; // RIS element width (m); 0 selects lambda_c / 2
        double ris_phase = pi / 4.0;
        double ris_amplitude = 1.0;

        double alpha_dl = 0.5;  // downlink fractional power-control exponent
        double ap_corr_r = 0.5; // AP exponential-correlation coefficient

        // Large-scale fading.
        double pl_intercept_db = 0.0; // 0 selects the Hata-COST231 value
        double shadow_sigma_db = 8.0;
        double d0_m = 10.0;
        double d1_m = 50.0;
        double h_ap_m = 15.0;
        double h_ris_m = 30.0;
        double h_user_m = 1.65;

        std::uint64_t rng_seed = 1;

        std::size_t L() const { return L_h * L_v; }
        // Sets L_h x L_v to the most square factorisation of L.
        void set_ris_elements(std::size_t L);
        double lambda_c() const { return speed_of_light / f_c; }
        double element_height() const;
        double element_width() const;
        double element_area() const { return element_height() * element_width(); }
        double intercept_db() const;
        double user_velocity(std::size_t k) const;
        bool emi_enabled() const;
        double rho_linear() const;

        // Reference instant of the two-phase estimator (1-based): lambda = 2 tau_p + 1.
        std::size_t reference_instant() const { return 2 * tau_p + 1; }

        // Throws std::invalid_argument naming the first violated invariant.
        void validate() const;
    };

    // Line-oriented "key = value" file. '#' starts a comment. Keys are case sensitive.
    // Values are consumed by take(); anything left unconsumed is reported by
    // expect_all_consumed() so that typos never pass silently.
    class KeyValueFile
    {
    public:
        struct Entry
        {
            std::string value;
            std::size_t line = 0;
            bool consumed = false;
        };

        static KeyValueFile parse(std::istream &in, std::string source);
        static KeyValueFile load(const std::string &path);

        bool has(const std::string &key) const;
        const std::string *take(const std::string &key);
        std::string location(const std::string &key) const;
        const std::string &source() const { return source_; }
        void expect_all_consumed() const;

        // Canonical "key=value\n" listing sorted by key, used for manifest hashing.
        std::string canonical() const;

        double take_double(const std::string &key, double fallback);
        std::size_t take_count(const std::string &key, std::size_t fallback);
        std::uint64_t take_u64(const std::string &key, std::uint64_t fallback);
        std::vector<double> take_doubles(const std::string &key);
        std::vector<std::string> take_words(const std::string &key);
        std::string take_word(const std::string &key, const std::string &fallback);

        void set(const std::string &key, const std::string &value);

    private:
        std::string source_;
        std::map<std::string, Entry> entries_;
    };

    // Reads the system keys of a configuration file; see README for the schema.
    SystemConfig system_config_from(KeyValueFile &file);

    // Parses a number that may be written as "inf"/"+inf".
    double parse_number(const std::string &text, const std::string &where);
}

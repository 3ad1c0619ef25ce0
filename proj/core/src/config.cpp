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

#include "cfris/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cfris/error.hpp"

namespace cfris
{
#ifndef CFRIS_VERSION
#define CFRIS_VERSION "unknown"
#endif
    const char *version() { return CFRIS_VERSION; }

    double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double kmh_to_mps(double kmh) { return kmh / 3.6; }
    double mps_to_kmh(double mps) { return mps * 3.6; }

    double hata_intercept_db(double f_c_hz, double h_ap_m, double h_user_m)
    {
        const double f_mhz = f_c_hz / 1.0e6;
        const double lf = std::log10(f_mhz);
        return 46.3 + 33.9 * lf - 13.82 * std::log10(h_ap_m) - (1.1 * lf - 0.7) * h_user_m + (1.56 * lf - 0.8);
    }

    double SystemConfig::element_height() const { return d_v > 0.0 ? d_v : 0.5 * lambda_c(); }
    double SystemConfig::element_width() const { return d_h > 0.0 ? d_h : 0.5 * lambda_c(); }

    double SystemConfig::intercept_db() const
    {
        return pl_intercept_db != 0.0 ? pl_intercept_db : hata_intercept_db(f_c, h_ap_m, h_user_m);
    }

    void SystemConfig::set_ris_elements(std::size_t L)
    {
        // Most square factorisation: L_h is the largest divisor not above sqrt(L).
        std::size_t h = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(L))));
        while (h > 1 && L % h != 0) --h;
        L_h = std::max<std::size_t>(h, 1);
        L_v = L / L_h;
    }

    double SystemConfig::user_velocity(std::size_t k) const
    {
        return velocities.empty() ? velocity : velocities.at(k);
    }

    bool SystemConfig::emi_enabled() const { return J > 0 && std::isfinite(rho_sir_db); }

    double SystemConfig::rho_linear() const { return db_to_linear(rho_sir_db); }

    void SystemConfig::validate() const
    {
        auto fail = [](const std::string &what)
        { throw std::invalid_argument("invalid configuration: " + what); };

        if (M < 1) fail("M must be at least 1");
        if (N < 1) fail("N must be at least 1");
        if (K < 1) fail("K must be at least 1");
        if (J > 0 && (L_h < 1 || L_v < 1)) fail("L_h and L_v must be at least 1");
        if (tau_p < 1) fail("tau_p must be at least 1");
        if (tau_c <= 2 * tau_p) fail("tau_c must exceed 2 tau_p");
        if (!(area_km > 0.0)) fail("area_km must be positive");
        if (!(T_s > 0.0)) fail("T_s must be positive");
        if (!(f_c > 0.0)) fail("f_c must be positive");
        if (!(bandwidth > 0.0)) fail("bandwidth must be positive");
        if (!(p_u > 0.0) || !(p_d > 0.0) || !(p_p > 0.0)) fail("transmit powers must be positive");
        if (!(sigma2 > 0.0)) fail("noise power must be positive");
        if (std::isnan(rho_sir_db) || rho_sir_db == -std::numeric_limits<double>::infinity())
            fail("rho_db must be a number or +inf");
        if (!(velocity >= 0.0)) fail("velocity must be non-negative");
        if (!velocities.empty())
        {
            if (velocities.size() != K) fail("velocities must list exactly K values");
            for (double v : velocities)
                if (!(v >= 0.0)) fail("velocities must be non-negative");
        }
        if (d_v < 0.0 || d_h < 0.0) fail("RIS element spacing must be non-negative");
        if (!(ris_amplitude >= 0.0 && ris_amplitude <= 1.0)) fail("ris_amplitude must lie in [0,1]");
        if (!(alpha_dl >= 0.0 && alpha_dl <= 1.0)) fail("alpha_dl must lie in [0,1]");
        if (!(ap_corr_r >= 0.0 && ap_corr_r < 1.0)) fail("ap_corr_r must lie in [0,1)");
        if (!(shadow_sigma_db >= 0.0)) fail("shadow_sigma_db must be non-negative");
        if (!(d0_m > 0.0 && d1_m > d0_m)) fail("path-loss breakpoints need 0 < d0 < d1");
        if (!(h_ap_m > 0.0 && h_ris_m > 0.0 && h_user_m > 0.0)) fail("heights must be positive");
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        std::string trim(const std::string &s)
        {
            std::size_t b = 0, e = s.size();
            while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
            while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
            return s.substr(b, e - b);
        }

        std::vector<std::string> split_list(const std::string &s)
        {
            std::vector<std::string> out;
            std::string cur;
            for (char c : s)
            {
                if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
                {
                    if (!cur.empty()) out.push_back(cur);
                    cur.clear();
                }
                else
                    cur.push_back(c);
            }
            if (!cur.empty()) out.push_back(cur);
            return out;
        }
    }

    double parse_number(const std::string &text, const std::string &where)
    {
        std::string t = trim(text);
        std::string lower = t;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower == "inf" || lower == "+inf" || lower == "infinity")
            return std::numeric_limits<double>::infinity();
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(t, &used);
        }
        catch (const std::exception &)
        {
            throw config_error(where + ": expected a number, got '" + text + "'");
        }
        if (used != t.size())
            throw config_error(where + ": trailing characters in number '" + text + "'");
        return v;
    }

    KeyValueFile KeyValueFile::parse(std::istream &in, std::string source)
    {
        KeyValueFile f;
        f.source_ = std::move(source);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error(f.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw config_error(f.source_ + ":" + std::to_string(line_no) + ": empty key");
            if (f.entries_.count(key))
                throw config_error(f.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
            f.entries_[key] = Entry{value, line_no, false};
        }
        return f;
    }

    KeyValueFile KeyValueFile::load(const std::string &path)
    {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open configuration file '" + path + "'");
        return parse(in, path);
    }

    bool KeyValueFile::has(const std::string &key) const { return entries_.count(key) != 0; }

    const std::string *KeyValueFile::take(const std::string &key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        it->second.consumed = true;
        return &it->second.value;
    }

    std::string KeyValueFile::location(const std::string &key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end() || it->second.line == 0) return source_ + ": " + key;
        return source_ + ":" + std::to_string(it->second.line) + ": " + key;
    }

    void KeyValueFile::expect_all_consumed() const
    {
        for (const auto &[key, e] : entries_)
            if (!e.consumed)
                throw config_error(location(key) + ": unknown key");
    }

    std::string KeyValueFile::canonical() const
    {
        std::string out;
        for (const auto &[key, e] : entries_)
            out += key + "=" + e.value + "\n";
        return out;
    }

    void KeyValueFile::set(const std::string &key, const std::string &value)
    {
        auto &e = entries_[key];
        e.value = value;
    }

    double KeyValueFile::take_double(const std::string &key, double fallback)
    {
        const std::string *v = take(key);
        return v ? parse_number(*v, location(key)) : fallback;
    }

    std::size_t KeyValueFile::take_count(const std::string &key, std::size_t fallback)
    {
        const std::string *v = take(key);
        if (!v) return fallback;
        const double d = parse_number(*v, location(key));
        if (!(d >= 0.0) || d != std::floor(d) || d > 1e12)
            throw config_error(location(key) + ": expected a non-negative integer, got '" + *v + "'");
        return static_cast<std::size_t>(d);
    }

    std::uint64_t KeyValueFile::take_u64(const std::string &key, std::uint64_t fallback)
    {
        const std::string *v = take(key);
        if (!v) return fallback;
        try
        {
            std::size_t used = 0;
            const auto x = std::stoull(*v, &used, 0);
            if (used != v->size()) throw std::invalid_argument("trailing");
            return x;
        }
        catch (const std::exception &)
        {
            throw config_error(location(key) + ": expected an unsigned 64-bit integer, got '" + *v + "'");
        }
    }

    std::vector<double> KeyValueFile::take_doubles(const std::string &key)
    {
        std::vector<double> out;
        const std::string *v = take(key);
        if (!v) return out;
        for (const auto &w : split_list(*v))
            out.push_back(parse_number(w, location(key)));
        if (out.empty()) throw config_error(location(key) + ": empty list");
        return out;
    }

    std::vector<std::string> KeyValueFile::take_words(const std::string &key)
    {
        const std::string *v = take(key);
        if (!v) return {};
        auto out = split_list(*v);
        if (out.empty()) throw config_error(location(key) + ": empty list");
        return out;
    }

    std::string KeyValueFile::take_word(const std::string &key, const std::string &fallback)
    {
        const std::string *v = take(key);
        return v ? *v : fallback;
    }

    // ---------------------------------------------------------------------------------------------

    namespace
    {
        // Power keys may be given in dBm ("<name>_dbm") or Watts ("<name>_w"), never both.
        double take_power(KeyValueFile &f, const std::string &name, double fallback_w)
        {
            const bool in_dbm = f.has(name + "_dbm"), in_w = f.has(name + "_w");
            if (in_dbm && in_w)
                throw config_error(f.location(name + "_w") + ": give either " + name + "_dbm or " + name + "_w");
            if (in_dbm) return dbm_to_watt(f.take_double(name + "_dbm", 0.0));
            if (in_w) return f.take_double(name + "_w", fallback_w);
            return fallback_w;
        }
    }

    SystemConfig system_config_from(KeyValueFile &f)
    {
        SystemConfig c;
        c.M = f.take_count("M", c.M);
        c.N = f.take_count("N", c.N);
        c.K = f.take_count("K", c.K);
        c.J = f.take_count("J", c.J);
        if (f.has("L"))
        {
            if (f.has("L_h") || f.has("L_v"))
                throw config_error(f.location("L") + ": give either L or L_h/L_v");
            c.set_ris_elements(f.take_count("L", 16));
        }
        c.L_h = f.take_count("L_h", c.L_h);
        c.L_v = f.take_count("L_v", c.L_v);
        c.area_km = f.take_double("area_km", c.area_km);
        c.tau_p = f.take_count("tau_p", c.tau_p);
        c.tau_c = f.take_count("tau_c", c.tau_c);
        c.T_s = f.take_double("T_s", c.T_s);
        c.f_c = f.take_double("f_c_hz", c.f_c);
        c.bandwidth = f.take_double("bandwidth_hz", c.bandwidth);
        c.p_u = take_power(f, "p_u", c.p_u);
        c.p_d = take_power(f, "p_d", c.p_d);
        c.p_p = take_power(f, "p_p", c.p_p);
        c.sigma2 = take_power(f, "sigma2", c.sigma2);
        c.rho_sir_db = f.take_double("rho_db", c.rho_sir_db);
        c.velocity = kmh_to_mps(f.take_double("velocity_kmh", mps_to_kmh(c.velocity)));
        for (double v : f.take_doubles("velocities_kmh"))
            c.velocities.push_back(kmh_to_mps(v));
        c.d_v = f.take_double("d_v_m", c.d_v);
        c.d_h = f.take_double("d_h_m", c.d_h);
        c.ris_phase = f.take_double("ris_phase_rad", c.ris_phase);
        c.ris_amplitude = f.take_double("ris_amplitude", c.ris_amplitude);
        c.alpha_dl = f.take_double("alpha_dl", c.alpha_dl);
        c.ap_corr_r = f.take_double("ap_corr_r", c.ap_corr_r);
        c.pl_intercept_db = f.take_double("pl_intercept_db", c.pl_intercept_db);
        c.shadow_sigma_db = f.take_double("shadow_sigma_db", c.shadow_sigma_db);
        c.d0_m = f.take_double("d0_m", c.d0_m);
        c.d1_m = f.take_double("d1_m", c.d1_m);
        c.h_ap_m = f.take_double("h_ap_m", c.h_ap_m);
        c.h_ris_m = f.take_double("h_ris_m", c.h_ris_m);
        c.h_user_m = f.take_double("h_user_m", c.h_user_m);
        c.rng_seed = f.take_u64("seed", c.rng_seed);
        try
        {
            c.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(f.source() + ": " + e.what());
        }
        return c;
    }
}

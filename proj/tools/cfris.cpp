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

// cfris command line: run experiments from a key = value file, dump drop geometries.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfris/config.hpp"
#include "cfris/error.hpp"
#include "cfris/harness.hpp"
#include "cfris/random.hpp"
#include "cfris/topology.hpp"

namespace
{
    std::string hex64(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    struct SimulateArgs
    {
        std::string config, out;
        std::optional<std::size_t> trials, drops, threads;
        std::optional<std::uint64_t> seed;
    };

    int simulate(const SimulateArgs &a)
    {
        cfris::KeyValueFile file = cfris::KeyValueFile::load(a.config);
        if (a.trials) file.set("trials", std::to_string(*a.trials));
        if (a.drops) file.set("drops", std::to_string(*a.drops));
        if (a.seed) file.set("seed", std::to_string(*a.seed));
        // threads do not change the output, so they stay out of the hashed configuration
        const std::string canonical = file.canonical();
        if (a.threads) file.set("threads", std::to_string(*a.threads));

        const cfris::ExperimentSpec spec = cfris::experiment_from(file);
        // Everything is computed before the first byte is written: a failing run leaves no partial output.
        const cfris::Dataset data = cfris::run_experiment(spec);
        cfris::write_dataset(data, a.out);

        nlohmann::ordered_json m;
        m["name"] = spec.name;
        m["cfris_version"] = cfris::version();
        m["armadillo_version"] = arma::arma_version::as_string();
        m["compiler"] = __VERSION__;
        m["config_file"] = std::filesystem::path(a.config).filename().string();
        m["config_hash_fnv1a64"] = hex64(cfris::fnv1a64(canonical));
        m["seed"] = spec.seed;
        m["drops"] = spec.drops;
        m["trials"] = spec.trials;
        m["sweep"] = cfris::to_string(spec.sweep);
        m["sweep_values"] = spec.values;
        nlohmann::ordered_json files = nlohmann::ordered_json::object();
        for (const auto &[name, table] : data)
        {
            files[name]["rows"] = table.rows.size();
            files[name]["fnv1a64"] = hex64(cfris::fnv1a64(cfris::to_csv(table)));
        }
        m["files"] = files;
        cfris::write_text_file((std::filesystem::path(a.out) / "manifest.json").string(), m.dump(2) + "\n");
        std::cerr << "wrote " << data.size() << " tables to " << a.out << "\n";
        return 0;
    }

    int topology(const std::string &config, std::size_t drop, std::optional<std::uint64_t> seed)
    {
        cfris::KeyValueFile file = cfris::KeyValueFile::load(config);
        if (seed) file.set("seed", std::to_string(*seed));
        const cfris::ExperimentSpec spec = cfris::experiment_from(file);
        std::cout << cfris::topology_to_json(cfris::draw_drop_topology(spec.base, spec.seed, drop)) << "\n";
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"cfris - RIS-assisted cell-free massive MIMO under channel aging and EMI"};
    app.set_version_flag("--version", std::string(cfris::version()));
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *s = app.add_subcommand("simulate", "run an experiment and write CSV tables plus manifest.json");
    s->add_option("--config", sim.config, "experiment file (key = value)")->required()->check(CLI::ExistingFile);
    s->add_option("--out", sim.out, "output directory")->required();
    s->add_option("--trials", sim.trials, "Monte-Carlo blocks per drop (0 = closed form only)");
    s->add_option("--drops", sim.drops, "number of random drops");
    s->add_option("--seed", sim.seed, "master seed");
    s->add_option("--threads", sim.threads, "worker threads")->check(CLI::PositiveNumber);

    std::string topo_config;
    std::size_t topo_drop = 0;
    std::optional<std::uint64_t> topo_seed;
    auto *t = app.add_subcommand("topology", "print the geometry and large-scale fading of one drop as JSON");
    t->add_option("--config", topo_config, "experiment file")->required()->check(CLI::ExistingFile);
    t->add_option("--drop", topo_drop, "drop index");
    t->add_option("--seed", topo_seed, "master seed");

    CLI11_PARSE(app, argc, argv);
    try
    {
        if (*s) return simulate(sim);
        if (*t) return topology(topo_config, topo_drop, topo_seed);
    }
    catch (const cfris::config_error &e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

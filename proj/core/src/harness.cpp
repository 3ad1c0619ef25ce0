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

#include "cfris/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "cfris/downlink.hpp"
#include "cfris/error.hpp"
#include "cfris/montecarlo.hpp"
#include "cfris/trial.hpp"

namespace cfris
{
    namespace
    {
        const std::vector<std::pair<SweepVariable, const char *>> sweep_names{
            {SweepVariable::none, "none"},       {SweepVariable::pilot_power, "pilot_power"},
            {SweepVariable::velocity, "velocity"}, {SweepVariable::M, "M"},
            {SweepVariable::N, "N"},             {SweepVariable::J, "J"},
            {SweepVariable::L, "L"},             {SweepVariable::rho_db, "rho_dB"},
            {SweepVariable::time_instant, "time_instant"}};

        const std::vector<std::pair<Metric, const char *>> metric_names{
            {Metric::nmse, "nmse"}, {Metric::se_ul, "se_ul"}, {Metric::se_dl, "se_dl"},
            {Metric::se_sum, "se_sum"}, {Metric::ee, "ee"}, {Metric::per_instant, "per_instant"}};

        std::size_t as_count(double v, const char *what)
        {
            if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
                throw config_error(std::string("sweep value for ") + what + " must be a non-negative integer");
            return static_cast<std::size_t>(v);
        }

        double to_dbm(double watt) { return 10.0 * std::log10(watt * 1000.0); }
    }

    std::string to_string(SweepVariable v)
    {
        for (const auto &[e, n] : sweep_names)
            if (e == v) return n;
        return "?";
    }

    SweepVariable sweep_variable_from_string(const std::string &s)
    {
        for (const auto &[e, n] : sweep_names)
            if (s == n) return e;
        if (s == "rho_db") return SweepVariable::rho_db;
        throw config_error("unknown sweep variable '" + s + "'");
    }

    std::string to_string(Metric m)
    {
        for (const auto &[e, n] : metric_names)
            if (e == m) return n;
        return "?";
    }

    Metric metric_from_string(const std::string &s)
    {
        for (const auto &[e, n] : metric_names)
            if (s == n) return e;
        throw config_error("unknown metric '" + s + "'");
    }

    bool ExperimentSpec::wants(Metric m) const
    {
        return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
    }

    void ExperimentSpec::validate() const
    {
        if (values.empty()) throw config_error("experiment '" + name + "': sweep has no values");
        if (drops == 0) throw config_error("experiment '" + name + "': drops must be at least 1");
        if (metrics.empty()) throw config_error("experiment '" + name + "': no metrics requested");
        if (schemes.empty()) throw config_error("experiment '" + name + "': no estimation scheme");
        if (threads == 0) throw config_error("experiment '" + name + "': threads must be at least 1");
        if (sweep == SweepVariable::time_instant)
        {
            for (double v : values)
                if (as_count(v, "time_instant") < 1 || v > static_cast<double>(base.tau_c))
                    throw config_error("time_instant values must lie in 1..tau_c");
        }
        try
        {
            for (double v : values)
                apply_sweep(base, sweep, v).validate();
            power.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error("experiment '" + name + "': " + e.what());
        }
    }

    ExperimentSpec experiment_from(KeyValueFile &f)
    {
        ExperimentSpec s;
        s.name = f.take_word("name", s.name);
        if (f.has("sweep"))
        {
            s.sweep = sweep_variable_from_string(f.take_word("sweep", "none"));
            if (!f.has("sweep_values"))
                throw config_error(f.location("sweep") + ": sweep given without sweep_values");
            s.values = f.take_doubles("sweep_values");
            if (s.values.empty()) throw config_error(f.location("sweep_values") + ": empty sweep");
        }
        else if (f.has("sweep_values"))
            throw config_error(f.location("sweep_values") + ": sweep_values given without sweep");
        s.drops = f.take_count("drops", s.drops);
        s.trials = f.take_count("trials", s.trials);
        s.threads = f.take_count("threads", s.threads);
        if (f.has("metrics"))
        {
            s.metrics.clear();
            for (const auto &w : f.take_words("metrics"))
                s.metrics.push_back(metric_from_string(w));
        }
        if (f.has("scheme"))
        {
            s.schemes.clear();
            for (const auto &w : f.take_words("scheme"))
                s.schemes.push_back(estimation_scheme_from_string(w));
        }
        s.receiver = receiver_from_string(f.take_word("receiver", to_string(s.receiver)));
        const std::string pc = f.take_word("uplink_power_control", "on");
        if (pc != "on" && pc != "off") throw config_error("uplink_power_control must be 'on' or 'off'");
        s.uplink_power_control = pc == "on";
        s.power = power_model_from(f);
        s.base = system_config_from(f);
        s.seed = s.base.rng_seed;
        f.expect_all_consumed();
        if (s.sweep == SweepVariable::time_instant && !s.wants(Metric::per_instant))
            s.metrics.push_back(Metric::per_instant);
        s.validate();
        return s;
    }

    SystemConfig apply_sweep(const SystemConfig &base, SweepVariable v, double value)
    {
        SystemConfig c = base;
        switch (v)
        {
        case SweepVariable::none:
        case SweepVariable::time_instant: break;
        case SweepVariable::pilot_power: c.p_p = dbm_to_watt(value); break;
        case SweepVariable::velocity:
            c.velocities.clear();
            c.velocity = kmh_to_mps(value);
            break;
        case SweepVariable::M: c.M = as_count(value, "M"); break;
        case SweepVariable::N: c.N = as_count(value, "N"); break;
        case SweepVariable::J: c.J = as_count(value, "J"); break;
        case SweepVariable::L: c.set_ris_elements(as_count(value, "L")); break;
        case SweepVariable::rho_db: c.rho_sir_db = value; break;
        }
        return c;
    }

    RandomStream drop_stream(std::uint64_t seed, std::size_t drop)
    {
        return RandomStream(seed).derive("drop", drop);
    }

    Topology draw_drop_topology(const SystemConfig &cfg, std::uint64_t seed, std::size_t drop)
    {
        return draw_topology(cfg, drop_stream(seed, drop));
    }

    DropEvaluation evaluate_drop(const DropModel &d, const PowerModel &pm, const EvaluationOptions &opt,
                                 const RandomStream &mc_rng)
    {
        const SystemConfig &cfg = d.cfg;
        DropEvaluation r;
        r.scheme = d.est.scheme;
        r.reference = d.est.reference;
        r.nmse = d.est.nmse;

        const std::size_t n_data = d.est.data_instants(cfg.tau_c);
        const std::vector<double> eta_ul =
            opt.uplink_power_control ? uplink_power_control(d.cov) : std::vector<double>(cfg.K, 1.0);
        const UplinkTerms ut = build_uplink_terms(d, eta_ul);
        const arma::mat eta_dl = downlink_power_control(d.cov, d.est, cfg.alpha_dl);
        const arma::vec per_ap = arma::sum(eta_dl % d.est.trace_Q_total(), 1);
        if (per_ap.max() > 1.0 + 1e-9)
            throw numerical_error("downlink power constraint violated at an AP (" + format_number(per_ap.max()) + ")");
        const DownlinkTerms dt = build_downlink_terms(d, eta_dl);

        const arma::mat sinr_ul = uplink_sinr_trace(ut, d.aging, n_data, opt.receiver);
        const arma::mat sinr_dl = downlink_sinr_trace(dt, d.aging, n_data);
        r.se_ul = se_from_sinr(sinr_ul, cfg.tau_c);
        r.se_dl = se_from_sinr(sinr_dl, cfg.tau_c);
        r.se_sum = sum_se(r.se_ul, r.se_dl);

        if (opt.per_instant)
        {
            r.per_instant_ul.assign(n_data, 0.0);
            r.per_instant_dl.assign(n_data, 0.0);
            for (std::size_t i = 0; i < n_data; ++i)
                for (std::size_t k = 0; k < cfg.K; ++k)
                {
                    r.per_instant_ul[i] += std::log2(1.0 + sinr_ul(k, i));
                    r.per_instant_dl[i] += std::log2(1.0 + sinr_dl(k, i));
                }
        }

        if (opt.trials > 0)
        {
            if (opt.se_mc)
            {
                const LinkMoments mo = accumulate_link_moments(d, opt.trials, mc_rng);
                r.nmse_mc = mo.nmse();
                r.se_ul_mc = uplink_se_mc(mo, ut, d.aging, n_data, cfg.tau_c, opt.receiver);
                r.se_dl_mc = downlink_se_mc(mo, dt, d.aging, n_data, cfg.tau_c);
            }
            else
                r.nmse_mc = nmse_monte_carlo(d, opt.trials, mc_rng).monte_carlo;
        }

        PowerInputs in;
        in.pilot_power_d = d.est.plan.direct.power;
        in.pilot_power_c = d.est.plan.cascaded.power;
        in.eta_ul = eta_ul;
        in.eta_dl = eta_dl;
        in.trace_Q = d.est.trace_Q_total();
        r.energy = total_power(pm, cfg, in, r.se_sum);
        return r;
    }

    namespace
    {
        struct Job
        {
            std::size_t value_index = 0, drop = 0;
            SystemConfig cfg;
            std::vector<DropEvaluation> evals; // one per scheme
        };

        void run_job(const ExperimentSpec &spec, Job &job)
        {
            const Topology topo = draw_drop_topology(job.cfg, spec.seed, job.drop);
            const CorrelationSet corr = build_correlation(job.cfg);
            EvaluationOptions opt;
            opt.receiver = spec.receiver;
            opt.uplink_power_control = spec.uplink_power_control;
            opt.trials = spec.trials;
            opt.se_mc = spec.wants(Metric::se_ul) || spec.wants(Metric::se_dl);
            opt.per_instant = spec.wants(Metric::per_instant);
            const RandomStream mc_rng = RandomStream(spec.seed).derive("mc", job.drop);
            for (EstimationScheme s : spec.schemes)
            {
                const DropModel model = build_drop_model(job.cfg, topo, corr, s);
                job.evals.push_back(evaluate_drop(model, spec.power, opt, mc_rng));
            }
        }

        void add_stat_rows(Table &t, const std::string &value, const std::string &scheme, const std::string &metric,
                           const std::vector<double> &v)
        {
            double mean = 0.0;
            for (double x : v)
                mean += x;
            mean /= static_cast<double>(v.size());
            t.add({value, scheme, metric, format_count(v.size()), format_number(mean),
                   format_number(quantile(v, 0.05)), format_number(quantile(v, 0.33)),
                   format_number(quantile(v, 0.40)), format_number(quantile(v, 0.5)),
                   format_number(quantile(v, 0.95))});
        }
    }

    Dataset run_experiment(const ExperimentSpec &spec)
    {
        spec.validate();
        const bool per_value = spec.sweep != SweepVariable::time_instant;
        const std::size_t n_values = per_value ? spec.values.size() : 1;

        std::vector<Job> jobs;
        for (std::size_t v = 0; v < n_values; ++v)
            for (std::size_t d = 0; d < spec.drops; ++d)
            {
                Job j;
                j.value_index = v;
                j.drop = d;
                j.cfg = apply_sweep(spec.base, spec.sweep, per_value ? spec.values[v] : 0.0);
                jobs.push_back(std::move(j));
            }

        std::atomic<std::size_t> next{0};
        std::mutex err_mutex;
        std::exception_ptr first_error;
        std::size_t first_error_job = jobs.size();
        auto worker = [&]()
        {
            for (std::size_t i = next++; i < jobs.size(); i = next++)
            {
                try
                {
                    run_job(spec, jobs[i]);
                }
                catch (const std::exception &e)
                {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    // Report the lowest failing job so the message does not depend on scheduling.
                    if (i < first_error_job)
                    {
                        first_error_job = i;
                        const Job &j = jobs[i];
                        std::string where = "drop " + std::to_string(j.drop) + " (seed " + std::to_string(spec.seed);
                        if (per_value && spec.sweep != SweepVariable::none)
                            where += ", " + to_string(spec.sweep) + " = " + format_number(spec.values[j.value_index]);
                        where += "): ";
                        first_error = std::make_exception_ptr(numerical_error(where + e.what()));
                    }
                }
            }
        };
        const std::size_t n_threads = std::min(spec.threads, std::max<std::size_t>(jobs.size(), 1));
        if (n_threads <= 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < n_threads; ++t)
                pool.emplace_back(worker);
            for (auto &t : pool)
                t.join();
        }
        if (first_error) std::rethrow_exception(first_error);

        auto value_text = [&](const Job &j)
        {
            if (spec.sweep == SweepVariable::none) return std::string("-");
            if (!per_value) return std::string("all");
            return format_number(spec.values[j.value_index]);
        };
        const bool mc = spec.trials > 0;
        const std::string nan; // absent Monte-Carlo values stay empty

        Dataset out;
        Table nmse{{"sweep_value", "drop_id", "scheme", "p_p_dBm", "velocity_kmh", "nmse_closed_form",
                    "nmse_monte_carlo"}, {}};
        Table ul{{"sweep_value", "drop_id", "user", "scheme", "receiver", "power_control", "velocity_kmh",
                  "se_closed", "se_mc"}, {}};
        Table dl{{"sweep_value", "drop_id", "user", "scheme", "alpha", "velocity_kmh", "se_closed", "se_mc"}, {}};
        Table en{{"sweep_value", "drop_id", "scheme", "M", "N", "K", "J", "L", "velocity_kmh", "rho_dB", "se_sum",
                  "p_total", "ee"}, {}};
        Table pi{{"sweep_value", "drop_id", "scheme", "n", "se_ul_n", "se_dl_n"}, {}};
        Table summary{{"sweep_value", "scheme", "metric", "count", "mean", "p05", "p33", "p40", "p50", "p95"}, {}};

        // Summary samples keyed by (value, scheme, metric), kept in first-seen order.
        std::vector<std::tuple<std::string, std::string, std::string>> keys;
        std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> samples;
        auto sample = [&](const std::string &v, const std::string &s, const std::string &m, double x)
        {
            auto key = std::make_tuple(v, s, m);
            auto it = samples.find(key);
            if (it == samples.end())
            {
                keys.push_back(key);
                it = samples.emplace(key, std::vector<double>{}).first;
            }
            it->second.push_back(x);
        };

        for (const Job &j : jobs)
        {
            const std::string vt = value_text(j);
            const std::string drop = format_count(j.drop);
            const SystemConfig &c = j.cfg;
            for (const DropEvaluation &e : j.evals)
            {
                const std::string sch = to_string(e.scheme);
                if (spec.wants(Metric::nmse))
                {
                    nmse.add({vt, drop, sch, format_number(to_dbm(c.p_p)), format_number(mps_to_kmh(c.velocity)),
                              format_number(e.nmse), mc ? format_number(e.nmse_mc) : nan});
                    sample(vt, sch, "nmse", e.nmse);
                    if (mc) sample(vt, sch, "nmse_mc", e.nmse_mc);
                }
                for (std::size_t k = 0; k < c.K; ++k)
                {
                    const std::string user = format_count(k);
                    const std::string vel = format_number(mps_to_kmh(c.user_velocity(k)));
                    const bool have_mc = !e.se_ul_mc.empty();
                    if (spec.wants(Metric::se_ul))
                    {
                        ul.add({vt, drop, user, sch, to_string(spec.receiver), spec.uplink_power_control ? "on" : "off",
                                vel, format_number(e.se_ul[k]), have_mc ? format_number(e.se_ul_mc[k]) : nan});
                        sample(vt, sch, "se_ul", e.se_ul[k]);
                        if (have_mc) sample(vt, sch, "se_ul_mc", e.se_ul_mc[k]);
                    }
                    if (spec.wants(Metric::se_dl))
                    {
                        dl.add({vt, drop, user, sch, format_number(c.alpha_dl), vel, format_number(e.se_dl[k]),
                                have_mc ? format_number(e.se_dl_mc[k]) : nan});
                        sample(vt, sch, "se_dl", e.se_dl[k]);
                        if (have_mc) sample(vt, sch, "se_dl_mc", e.se_dl_mc[k]);
                    }
                }
                if (spec.wants(Metric::se_sum) || spec.wants(Metric::ee))
                {
                    en.add({vt, drop, sch, format_count(c.M), format_count(c.N), format_count(c.K), format_count(c.J),
                            format_count(c.L()), format_number(mps_to_kmh(c.velocity)), format_number(c.rho_sir_db),
                            format_number(e.se_sum), format_number(e.energy.p_total), format_number(e.energy.ee)});
                    if (spec.wants(Metric::se_sum)) sample(vt, sch, "se_sum", e.se_sum);
                    if (spec.wants(Metric::ee)) sample(vt, sch, "ee", e.energy.ee);
                }
                if (spec.wants(Metric::per_instant))
                {
                    for (std::size_t i = 0; i < e.per_instant_ul.size(); ++i)
                    {
                        const std::size_t n = e.reference + i;
                        if (!per_value &&
                            std::find(spec.values.begin(), spec.values.end(), static_cast<double>(n)) ==
                                spec.values.end())
                            continue;
                        pi.add({per_value ? vt : format_count(n), drop, sch, format_count(n),
                                format_number(e.per_instant_ul[i]), format_number(e.per_instant_dl[i])});
                    }
                }
            }
        }

        if (spec.wants(Metric::nmse)) out["nmse.csv"] = std::move(nmse);
        if (spec.wants(Metric::se_ul)) out["uplink.csv"] = std::move(ul);
        if (spec.wants(Metric::se_dl)) out["downlink.csv"] = std::move(dl);
        if (spec.wants(Metric::se_sum) || spec.wants(Metric::ee)) out["energy.csv"] = std::move(en);
        if (spec.wants(Metric::per_instant)) out["per_instant.csv"] = std::move(pi);
        for (const auto &key : keys)
            add_stat_rows(summary, std::get<0>(key), std::get<1>(key), std::get<2>(key), samples[key]);
        out["summary.csv"] = std::move(summary);
        return out;
    }

    void write_dataset(const Dataset &data, const std::string &dir)
    {
        std::filesystem::create_directories(dir);
        for (const auto &[name, table] : data)
            write_text_file((std::filesystem::path(dir) / name).string(), to_csv(table));
    }
}

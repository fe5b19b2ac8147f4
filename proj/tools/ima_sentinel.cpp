/*
 * Copyright 2026 The IMA Sentinel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ima/a664/frame_trace.hpp"
#include "ima/harness/config.hpp"
#include "ima/harness/report.hpp"
#include "ima/harness/scenario.hpp"
#include "ima/kernel/oracle.hpp"
#include "ima/kernel/random_netlist.hpp"
#include "ima/kernel/static_scheduler.hpp"
#include "ima/monitor/traffic_model.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace ima;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("ima-sentinel");
    logger->set_pattern("[%l] %v");
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("IMA_SENTINEL_LOG")) {
        const std::string name(env);
        if (name == "error" || name == "warn" || name == "info" || name == "debug")
            level = spdlog::level::from_str(name);
        else
            logger->warn("IMA_SENTINEL_LOG='{}' not recognised, using warn", name);
    }
    logger->set_level(level);
    spdlog::set_default_logger(logger);
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw harness::ConfigError(harness::ConfigErrorKind::Io, {path + ": cannot write"});
    out << text;
}

int finish(const harness::Report& report, const std::string& out_path)
{
    write_text(out_path, harness::emit_report(report));
    return report.pass() ? kExitPass : kExitFail;
}

struct SimulateArgs {
    std::string config;
    std::string scenario;
    std::optional<std::uint64_t> mafs;
    std::string out;
    std::string trace;
};

int simulate(const SimulateArgs& args)
{
    auto config = harness::load_config_file(args.config);
    if (!args.scenario.empty())
        config.scenario = harness::load_scenario_file(args.scenario);
    if (args.mafs)
        config.run_mafs = *args.mafs;
    const auto result = harness::run_scenario_detailed(config);
    if (!args.trace.empty()) {
        std::ofstream trace(args.trace, std::ios::binary);
        if (!trace)
            throw harness::ConfigError(harness::ConfigErrorKind::Io, {args.trace + ": cannot write"});
        a664::write_frame_trace(trace, result.delivered);
    }
    spdlog::info("{} frames emitted, {} delivered, {} anomalies", result.report.frames_emitted,
                 result.report.frames_received, result.report.anomalies.size());
    return finish(result.report, args.out);
}

struct CheckArgs {
    std::string config;
    std::string trace;
    std::optional<std::uint64_t> mafs;
    std::string out;
};

int check(const CheckArgs& args)
{
    auto config = harness::load_config_file(args.config);
    if (args.mafs)
        config.run_mafs = *args.mafs;
    std::ifstream in(args.trace, std::ios::binary);
    if (!in)
        throw harness::ConfigError(harness::ConfigErrorKind::Io, {args.trace + ": cannot open"});
    const auto events = a664::read_frame_trace(in, config.virtual_links);
    spdlog::info("{} frame events read from {}", events.size(), args.trace);
    return finish(harness::check_trace(config, events), args.out);
}

int schedule(const std::string& config_path)
{
    const auto config = harness::load_config_file(config_path);
    const auto& mf = config.major_frame;
    const auto period = monitor::transmitter_clock_period(mf, config.virtual_links);
    const auto schedule = kernel::elaborate(monitor::transmitter_netlist(mf, config.virtual_links, period));
    const auto model = monitor::build_expected_model(mf, config.virtual_links, config.prop_delay_us);

    nlohmann::ordered_json vls = nlohmann::ordered_json::array();
    for (const auto& vl : model.vls) {
        nlohmann::ordered_json emissions = nlohmann::ordered_json::array();
        for (const auto& e : vl.emissions)
            emissions.push_back({{"emit_offset_us", e.emit_offset},
                                 {"earliest_us", e.earliest},
                                 {"latest_us", e.latest},
                                 {"order_position", e.order_position}});
        vls.push_back({{"vl", vl.vl_id}, {"frames_per_maf", vl.frames_per_maf()}, {"emissions", emissions}});
    }
    const nlohmann::ordered_json doc{
        {"clock_period_us", period},
        {"kernel",
         {{"transition_order", schedule.transition_ids()},
          {"moore_order", schedule.moore_ids()},
          {"mealy_order", schedule.mealy_ids()}}},
        {"expected_model", {{"maf_us", model.maf_duration}, {"order", model.order}, {"vls", vls}}},
    };
    std::cout << doc.dump(2) << '\n';
    return kExitPass;
}

int selftest(std::size_t cases, std::uint64_t seed, std::uint64_t cycles)
{
    std::size_t equivalent = 0;
    for (std::size_t i = 0; i < cases; ++i) {
        const auto net = kernel::make_random_netlist(seed + i);
        const bool same = kernel::run(net, cycles) == kernel::oracle_run(net, cycles);
        equivalent += same ? 1 : 0;
        if (!same)
            spdlog::error("netlist seed {}: static schedule and oracle traces differ", seed + i);
    }
    std::size_t rejected = 0;
    const std::size_t cyclic_cases = std::min<std::size_t>(cases, 20);
    for (std::size_t i = 0; i < cyclic_cases; ++i) {
        const auto net = kernel::make_cyclic_netlist(seed + i);
        bool static_rejects = false;
        bool oracle_diverges = false;
        try {
            kernel::elaborate(net);
        } catch (const kernel::ElaborationError& e) {
            static_rejects = e.kind() == kernel::ElaborationErrorKind::CombinationalCycle;
        }
        try {
            kernel::oracle_run(net, 10);
        } catch (const kernel::NonConvergence&) {
            oracle_diverges = true;
        }
        rejected += static_rejects && oracle_diverges ? 1 : 0;
    }
    std::cout << "equivalence " << equivalent << "/" << cases << " netlists, " << cycles << " cycles each\n"
              << "cycle rejection " << rejected << "/" << cyclic_cases << " cyclic netlists\n";
    return equivalent == cases && rejected == cyclic_cases ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv)
{
    setup_logging();

    CLI::App app{"Deterministic IMA data-path simulator and traffic monitor"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run transmitter, faults and monitor; print the report");
    sim->add_option("--config", sim_args.config, "System config JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--scenario", sim_args.scenario, "Fault scenario JSON (overrides the config's)")
        ->check(CLI::ExistingFile);
    sim->add_option("--mafs", sim_args.mafs, "Number of major frames (overrides run_mafs)");
    sim->add_option("--out", sim_args.out, "Report file (default: stdout)");
    sim->add_option("--trace", sim_args.trace, "Write the delivered frame stream as JSON Lines");

    CheckArgs check_args;
    auto* chk = app.add_subcommand("check", "Monitor a recorded JSON Lines trace");
    chk->add_option("--config", check_args.config, "System config JSON")->required()->check(CLI::ExistingFile);
    chk->add_option("--trace", check_args.trace, "Frame trace JSON Lines")->required()->check(CLI::ExistingFile);
    chk->add_option("--mafs", check_args.mafs, "Major frames to close (default: run_mafs)");
    chk->add_option("--out", check_args.out, "Report file (default: stdout)");

    std::string schedule_config;
    auto* sched = app.add_subcommand("schedule", "Dump the static process order and the expected traffic model");
    sched->add_option("--config", schedule_config, "System config JSON")->required()->check(CLI::ExistingFile);

    std::size_t cases = 100;
    std::uint64_t seed = 1;
    std::uint64_t cycles = 1000;
    auto* self = app.add_subcommand("selftest", "Static scheduler against the event-driven oracle");
    self->add_option("--cases", cases, "Random netlists to compare")->capture_default_str();
    self->add_option("--seed", seed, "First seed")->capture_default_str();
    self->add_option("--cycles", cycles, "Cycles per netlist")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*sim)
            return simulate(sim_args);
        if (*chk)
            return check(check_args);
        if (*sched)
            return schedule(schedule_config);
        return selftest(cases, seed, cycles);
    } catch (const harness::ConfigError& e) {
        std::cerr << e.what() << '\n';
    } catch (const monitor::InfeasibleConfig& e) {
        std::cerr << "infeasible config: " << e.what() << '\n';
    } catch (const faults::TargetNotFound& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
    } catch (const a664::TraceFormatError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
    } catch (const kernel::ElaborationError& e) {
        std::cerr << "elaboration error: " << e.what() << '\n';
    }
    return kExitConfig;
}

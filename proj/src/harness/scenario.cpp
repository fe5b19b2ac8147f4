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

#include "ima/harness/scenario.hpp"
#include "ima/faults/faults.hpp"
#include "ima/harness/transmitter.hpp"
#include "ima/monitor/monitor.hpp"

#include <spdlog/spdlog.h>

namespace ima::harness {

namespace {

std::vector<monitor::Anomaly> monitor_stream(const SystemConfig& config,
                                             const std::vector<a664::FrameEvent>& events)
{
    auto model = monitor::build_expected_model(config.major_frame, config.virtual_links, config.prop_delay_us);
    monitor::Monitor mon(std::move(model), config.laws);
    std::vector<monitor::Anomaly> anomalies;
    for (const auto& e : events) {
        auto found = mon.ingest(e);
        anomalies.insert(anomalies.end(), std::make_move_iterator(found.begin()),
                         std::make_move_iterator(found.end()));
    }
    auto tail = mon.flush_until(config.run_mafs * config.major_frame.maf_duration);
    anomalies.insert(anomalies.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
    return anomalies;
}

} // namespace

RunResult run_scenario_detailed(const SystemConfig& config)
{
    const faults::FaultScenario none{};
    const auto& scenario = config.scenario ? *config.scenario : none;

    const auto transmit_frame = faults::apply_schedule_shifts(config.major_frame, scenario);
    auto emitted = simulate_transmitter(config, transmit_frame, config.run_mafs);
    spdlog::debug("transmitter emitted {} frames over {} MAFs", emitted.size(), config.run_mafs);

    RunResult result;
    result.report.config_digest = config_digest(config);
    result.report.frames_emitted = emitted.size();
    result.delivered = faults::apply_scenario(std::move(emitted), scenario);
    for (const auto& f : scenario.faults)
        spdlog::debug("fault applied: {}", faults::describe(f));
    result.report.frames_received = result.delivered.size();
    result.report.anomalies = monitor_stream(config, result.delivered);
    spdlog::debug("monitor reported {} anomalies", result.report.anomalies.size());
    return result;
}

Report run_scenario(const SystemConfig& config)
{
    return run_scenario_detailed(config).report;
}

Report check_trace(const SystemConfig& config, const std::vector<a664::FrameEvent>& events)
{
    Report report;
    report.config_digest = config_digest(config);
    report.frames_emitted = events.size();
    report.frames_received = events.size();
    report.anomalies = monitor_stream(config, events);
    return report;
}

} // namespace ima::harness

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

#include "ima/harness/transmitter.hpp"
#include "ima/a653/port.hpp"
#include "ima/a664/regulator.hpp"
#include "ima/monitor/traffic_model.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <optional>

namespace ima::harness {

namespace {

struct PartitionRuntime {
    const PartitionConfig* config;
    a653::AppGeneratorState generator;
    a653::Port653 port;
    std::optional<std::pair<std::uint16_t, Microseconds>> last_forwarded; ///< sampling ports only
    std::size_t vl_index;
};

} // namespace

std::vector<a664::FrameEvent> simulate_transmitter(const SystemConfig& config, const a653::MajorFrame& mf,
                                                   std::uint64_t mafs)
{
    std::vector<a664::FrameEvent> events;
    if (mafs == 0 || mf.maf_duration == 0)
        return events;

    const auto& vls = config.virtual_links;
    std::vector<PartitionRuntime> partitions;
    for (const auto& p : config.partitions) {
        auto vl = std::find_if(vls.begin(), vls.end(), [&](const auto& v) { return v.source_partition == p.id; });
        if (vl == vls.end())
            continue;
        const auto name = "P" + std::to_string(p.id);
        partitions.push_back({&p, a653::AppGeneratorState::from(p.generator),
                              p.port_kind == a653::PortKind::Queuing ? a653::Port653::queuing(name, p.port_capacity)
                                                                     : a653::Port653::sampling(name),
                              std::nullopt, static_cast<std::size_t>(vl - vls.begin())});
    }
    auto runtime_of = [&](a653::PartitionId id) -> PartitionRuntime* {
        for (auto& r : partitions)
            if (r.config->id == id)
                return &r;
        return nullptr;
    };

    std::vector<a664::VlRegulatorState> shapers(vls.size());
    const auto period = monitor::transmitter_clock_period(mf, vls);
    const auto end = mafs * mf.maf_duration;
    events.reserve(static_cast<std::size_t>(mafs) * mf.windows.size());

    for (Microseconds now = 0; now < end; now += period) {
        const auto phase = now % mf.maf_duration;
        for (const auto& w : mf.windows) {
            if (w.offset != phase)
                continue;
            auto* part = runtime_of(w.partition);
            if (!part)
                continue;
            auto [next, sample] = a653::generate_sample(part->generator, part->config->app, now);
            part->generator = next;
            if (part->port.send(sample) == a653::SendStatus::QueueFull)
                spdlog::warn("partition {} port full at {} us, sample {} lost", int(w.partition), now,
                             sample.sample_seq);
        }

        for (auto& part : partitions) {
            auto& backlog = shapers[part.vl_index].backlog;
            if (part.port.kind() == a653::PortKind::Queuing) {
                while (auto msg = part.port.receive())
                    backlog.push_back(*msg);
            } else if (auto msg = part.port.receive()) {
                const std::pair key{msg->sample_seq, msg->timestamp};
                if (part.last_forwarded != key) {
                    part.last_forwarded = key;
                    backlog.push_back(*msg);
                }
            }
        }

        for (std::size_t v = 0; v < vls.size(); ++v)
            for (auto& e : a664::regulate(shapers[v], vls[v], now))
                events.push_back({e.emit_time, e.emit_time + config.prop_delay_us, std::move(e.raw)});
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const auto& a, const auto& b) { return a.t_arrive < b.t_arrive; });
    return events;
}

} // namespace ima::harness

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

#include "ima/monitor/traffic_model.hpp"
#include "ima/kernel/static_scheduler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace ima::monitor {

namespace {

using kernel::ModuleSpec;
using kernel::ProcessContext;
using kernel::ProcessKind;

constexpr std::size_t kModelMafs = 3;

std::string start_port(a653::PartitionId p)
{
    return "start_p" + std::to_string(p);
}

std::string shaper_id(VlId vl)
{
    return "es_vl" + std::to_string(vl);
}

std::string emit_input(VlId vl)
{
    return "emit_vl" + std::to_string(vl);
}

// Backlog after this cycle's strobe, and whether the shaper lets a frame go.
struct ShaperDecision {
    std::uint64_t backlog;
    bool emit;
};

ShaperDecision decide(const ProcessContext& ctx, Microseconds bag_us)
{
    const auto backlog = ctx.read("backlog") + ctx.read("start");
    const auto now = ctx.read("now");
    const bool gap_ok = ctx.read("has_emitted") == 0 || now - ctx.read("last_emit") >= bag_us;
    return {backlog, backlog > 0 && gap_ok};
}

std::set<a653::PartitionId> source_partitions(std::span<const a664::VirtualLinkConfig> vls)
{
    std::set<a653::PartitionId> out;
    for (const auto& vl : vls)
        out.insert(vl.source_partition);
    return out;
}

} // namespace

const VlExpectation* ExpectedTrafficModel::find(VlId vl) const
{
    auto it = std::lower_bound(vls.begin(), vls.end(), vl,
                               [](const VlExpectation& e, VlId id) { return e.vl_id < id; });
    return it != vls.end() && it->vl_id == vl ? &*it : nullptr;
}

Microseconds transmitter_clock_period(const a653::MajorFrame& mf, std::span<const a664::VirtualLinkConfig> vls)
{
    Microseconds g = mf.maf_duration;
    for (const auto& w : mf.windows)
        g = std::gcd(std::gcd(g, w.offset), w.duration);
    for (const auto& vl : vls)
        g = std::gcd(g, vl.bag_us());
    return g == 0 ? 1 : g;
}

kernel::Netlist transmitter_netlist(const a653::MajorFrame& mf, std::span<const a664::VirtualLinkConfig> vls,
                                    Microseconds clock_period)
{
    if (vls.size() > 64)
        throw InfeasibleConfig("the switch tap mask holds at most 64 virtual links");

    kernel::Netlist net;
    net.clock_period_us = clock_period;
    const auto partitions = source_partitions(vls);

    ModuleSpec clock{.id = "clock", .registers = {{"tick", 64, 0}}, .inputs = {}, .outputs = {{"now", 64}},
                     .processes = {}};
    std::vector<std::string> timebase_writes{"now"};
    for (auto p : partitions) {
        clock.outputs.push_back({start_port(p), 1});
        timebase_writes.push_back(start_port(p));
    }
    clock.processes.push_back({"advance", ProcessKind::Transition, {"tick"}, {"tick"},
                               [](ProcessContext& ctx) { ctx.write(0, ctx.read(0) + 1); }});
    std::vector<std::vector<Microseconds>> starts;
    for (auto p : partitions) {
        std::vector<Microseconds> offsets;
        for (const auto& w : mf.windows)
            if (w.partition == p)
                offsets.push_back(w.offset);
        starts.push_back(std::move(offsets));
    }
    const auto maf = mf.maf_duration;
    clock.processes.push_back(
        {"timebase", ProcessKind::MooreGeneration, {"tick"}, timebase_writes,
         [clock_period, maf, starts](ProcessContext& ctx) {
             const auto now = ctx.read(0) * clock_period;
             const auto phase = maf == 0 ? now : now % maf;
             ctx.write(0, now);
             for (std::size_t i = 0; i < starts.size(); ++i)
                 ctx.write(i + 1, std::count(starts[i].begin(), starts[i].end(), phase) > 0 ? 1 : 0);
         }});
    net.modules.push_back(std::move(clock));

    ModuleSpec sw{.id = "switch", .registers = {}, .inputs = {}, .outputs = {{"tap_mask", 64}}, .processes = {}};
    std::vector<std::string> tap_reads;
    for (const auto& vl : vls) {
        const auto id = shaper_id(vl.vl_id);
        const auto bag = vl.bag_us();
        ModuleSpec es{.id = id,
                      .registers = {{"backlog", 32, 0}, {"last_emit", 64, 0}, {"has_emitted", 1, 0}},
                      .inputs = {{"start", 1}, {"now", 64}},
                      .outputs = {{"emit", 1}},
                      .processes = {}};
        const std::vector<std::string> reads{"backlog", "last_emit", "has_emitted", "start", "now"};
        es.processes.push_back({"shape", ProcessKind::MealyGeneration, reads, {"emit"},
                                [bag](ProcessContext& ctx) { ctx.write("emit", decide(ctx, bag).emit ? 1 : 0); }});
        es.processes.push_back({"commit", ProcessKind::Transition, reads, {"backlog", "last_emit", "has_emitted"},
                                [bag](ProcessContext& ctx) {
                                    const auto d = decide(ctx, bag);
                                    ctx.write("backlog", d.backlog - (d.emit ? 1 : 0));
                                    if (d.emit) {
                                        ctx.write("last_emit", ctx.read("now"));
                                        ctx.write("has_emitted", 1);
                                    } else {
                                        ctx.write("last_emit", ctx.read("last_emit"));
                                        ctx.write("has_emitted", ctx.read("has_emitted"));
                                    }
                                }});
        net.modules.push_back(std::move(es));
        net.bindings.push_back({"clock." + start_port(vl.source_partition), id + ".start"});
        net.bindings.push_back({"clock.now", id + ".now"});
        net.bindings.push_back({id + ".emit", "switch." + emit_input(vl.vl_id)});
        sw.inputs.push_back({emit_input(vl.vl_id), 1});
        tap_reads.push_back(emit_input(vl.vl_id));
    }
    sw.processes.push_back({"tap", ProcessKind::MealyGeneration, tap_reads, {"tap_mask"},
                            [](ProcessContext& ctx) {
                                std::uint64_t mask = 0;
                                for (std::size_t i = 0; i < ctx.read_count(); ++i)
                                    mask |= ctx.read(i) << i;
                                ctx.write(0, mask);
                            }});
    net.modules.push_back(std::move(sw));
    return net;
}

ExpectedTrafficModel build_expected_model(const a653::MajorFrame& mf,
                                          std::span<const a664::VirtualLinkConfig> vls,
                                          Microseconds prop_delay)
{
    ExpectedTrafficModel model;
    model.maf_duration = mf.maf_duration;
    if (vls.empty() || mf.maf_duration == 0)
        return model;

    std::set<VlId> ids;
    for (const auto& vl : vls)
        if (!ids.insert(vl.vl_id).second)
            throw InfeasibleConfig("duplicate VL " + std::to_string(vl.vl_id));

    const auto period = transmitter_clock_period(mf, vls);
    model.clock_period = period;
    kernel::Simulator sim(transmitter_netlist(mf, vls, period), false);

    const auto now_slot = sim.slot("clock.now");
    const auto tap_slot = sim.slot("switch.tap_mask");
    std::map<a653::PartitionId, std::size_t> start_slots;
    for (auto p : source_partitions(vls))
        start_slots[p] = sim.slot("clock." + start_port(p));

    // emitted[k][v]: emission offsets of vls[v] in MAF k.
    std::vector<std::vector<std::vector<Microseconds>>> emitted(kModelMafs,
                                                                std::vector<std::vector<Microseconds>>(vls.size()));
    std::vector<std::deque<Microseconds>> pending_window_ends(vls.size());
    const auto cycles = kModelMafs * (mf.maf_duration / period);
    for (std::uint64_t c = 0; c < cycles; ++c) {
        const auto now = sim.value(now_slot);
        const auto maf_start = now - now % mf.maf_duration;
        const auto phase = now - maf_start;
        const auto mask = sim.value(tap_slot);
        for (std::size_t v = 0; v < vls.size(); ++v) {
            if (sim.value(start_slots[vls[v].source_partition]) != 0)
                for (const auto& w : mf.windows)
                    if (w.partition == vls[v].source_partition && w.offset == phase)
                        pending_window_ends[v].push_back(maf_start + w.end());
            if ((mask >> v & 1) == 0)
                continue;
            if (pending_window_ends[v].empty())
                throw InfeasibleConfig("VL " + std::to_string(vls[v].vl_id) + " emits without a pending sample");
            const auto window_end = pending_window_ends[v].front();
            pending_window_ends[v].pop_front();
            if (now >= window_end)
                throw InfeasibleConfig("VL " + std::to_string(vls[v].vl_id) + " emits at " + std::to_string(now) +
                                       " us, after its partition window closed at " + std::to_string(window_end));
            emitted[now / mf.maf_duration][v].push_back(phase);
        }
        sim.step();
    }
    for (std::size_t k = 1; k < kModelMafs; ++k)
        if (emitted[k] != emitted[0])
            throw InfeasibleConfig("VL emission pattern does not repeat every major frame");

    std::vector<std::tuple<Microseconds, VlId, std::size_t>> all;
    for (std::size_t v = 0; v < vls.size(); ++v) {
        VlExpectation expectation{vls[v].vl_id, {}};
        for (auto offset : emitted[0][v]) {
            const auto latest = offset + prop_delay + vls[v].max_jitter_us;
            if (latest >= mf.maf_duration)
                throw InfeasibleConfig("VL " + std::to_string(vls[v].vl_id) +
                                       " latest arrival falls outside its major frame");
            all.emplace_back(offset, vls[v].vl_id, expectation.emissions.size());
            expectation.emissions.push_back({offset, offset + prop_delay, latest, 0});
        }
        model.vls.push_back(std::move(expectation));
    }
    std::sort(model.vls.begin(), model.vls.end(),
              [](const VlExpectation& a, const VlExpectation& b) { return a.vl_id < b.vl_id; });
    std::sort(all.begin(), all.end());
    for (std::size_t pos = 0; pos < all.size(); ++pos) {
        const auto& [offset, vl, index] = all[pos];
        auto it = std::find_if(model.vls.begin(), model.vls.end(), [vl](const auto& e) { return e.vl_id == vl; });
        it->emissions[index].order_position = pos;
        model.order.push_back(vl);
    }
    return model;
}

} // namespace ima::monitor

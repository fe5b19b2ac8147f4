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

#include "ima/kernel/static_scheduler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace ima::kernel {

namespace {

enum class SlotClass { Register, Output, Input };

struct LocalName {
    SlotClass cls;
    std::size_t slot; // for inputs: filled after binding
    unsigned width;
};

[[noreturn]] void fail(ElaborationErrorKind kind, const std::string& what)
{
    throw ElaborationError(kind, std::string(to_string(kind)) + ": " + what);
}

void check_width(unsigned width, const std::string& who)
{
    if (width == 0 || width > kMaxWidth)
        fail(ElaborationErrorKind::InvalidWidth, who + " has width " + std::to_string(width));
}

std::pair<std::string_view, std::string_view> split_qualified(std::string_view name)
{
    const auto dot = name.find('.');
    if (dot == std::string_view::npos)
        return {name, {}};
    return {name.substr(0, dot), name.substr(dot + 1)};
}

// Walks back along predecessor edges inside the unsorted remainder until a
// node repeats; the repeated stretch is a directed cycle.
std::vector<std::size_t> extract_cycle(const std::vector<std::vector<std::size_t>>& preds,
                                       const std::vector<bool>& remaining)
{
    std::size_t start = 0;
    while (!remaining[start])
        ++start;
    std::vector<std::size_t> walk;
    std::vector<std::size_t> position(remaining.size(), SIZE_MAX);
    std::size_t node = start;
    while (position[node] == SIZE_MAX) {
        position[node] = walk.size();
        walk.push_back(node);
        auto it = std::find_if(preds[node].begin(), preds[node].end(),
                               [&](std::size_t p) { return remaining[p]; });
        node = *it; // every remaining node keeps a remaining predecessor
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(position[node]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

} // namespace

std::vector<std::string> StaticSchedule::transition_ids() const
{
    std::vector<std::string> ids;
    for (auto i : transition_order_)
        ids.push_back(processes_[i].id);
    return ids;
}

std::vector<std::string> StaticSchedule::moore_ids() const
{
    std::vector<std::string> ids;
    for (auto i : moore_order_)
        ids.push_back(processes_[i].id);
    return ids;
}

std::vector<std::string> StaticSchedule::mealy_ids() const
{
    std::vector<std::string> ids;
    for (auto i : mealy_order_)
        ids.push_back(processes_[i].id);
    return ids;
}

std::optional<std::size_t> StaticSchedule::find_slot(std::string_view qualified_name) const
{
    auto it = std::lower_bound(aliases_.begin(), aliases_.end(), qualified_name,
                               [](const auto& entry, std::string_view key) { return entry.first < key; });
    if (it == aliases_.end() || it->first != qualified_name)
        return std::nullopt;
    return it->second;
}

StaticSchedule elaborate(const Netlist& netlist)
{
    if (netlist.clock_period_us == 0)
        fail(ElaborationErrorKind::InvalidClock, "clock period must be positive");

    StaticSchedule schedule;
    schedule.clock_period_us_ = netlist.clock_period_us;

    // Per-module local namespaces.
    std::vector<std::unordered_map<std::string, LocalName>> locals(netlist.modules.size());
    std::unordered_map<std::string, std::size_t> module_index;

    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        const auto& module = netlist.modules[m];
        if (module.id.empty() || module.id.find('.') != std::string::npos)
            fail(ElaborationErrorKind::UnknownName, "invalid module id '" + module.id + "'");
        if (!module_index.emplace(module.id, m).second)
            fail(ElaborationErrorKind::DuplicateName, "module '" + module.id + "' declared twice");
        auto declare = [&](const std::string& name, SlotClass cls, unsigned width) {
            check_width(width, qualified(module.id, name));
            if (!locals[m].emplace(name, LocalName{cls, SIZE_MAX, width}).second)
                fail(ElaborationErrorKind::DuplicateName, qualified(module.id, name) + " declared twice");
        };
        for (const auto& reg : module.registers)
            declare(reg.name, SlotClass::Register, reg.width);
        for (const auto& port : module.inputs)
            declare(port.name, SlotClass::Input, port.width);
        for (const auto& port : module.outputs)
            declare(port.name, SlotClass::Output, port.width);
    }

    // Slot layout: all registers, then all output ports, in declaration order.
    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        for (const auto& reg : netlist.modules[m].registers) {
            locals[m].at(reg.name).slot = schedule.slot_names_.size();
            schedule.slot_names_.push_back(qualified(netlist.modules[m].id, reg.name));
            schedule.reset_values_.push_back(reg.reset & width_mask(reg.width));
        }
    }
    schedule.register_count_ = schedule.slot_names_.size();
    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        for (const auto& port : netlist.modules[m].outputs) {
            locals[m].at(port.name).slot = schedule.slot_names_.size();
            schedule.slot_names_.push_back(qualified(netlist.modules[m].id, port.name));
            schedule.reset_values_.push_back(0);
        }
    }

    auto lookup = [&](std::string_view name) -> std::pair<std::size_t, LocalName*> {
        auto [mod, local] = split_qualified(name);
        auto mi = module_index.find(std::string(mod));
        if (mi == module_index.end())
            fail(ElaborationErrorKind::UnknownName, "no module for '" + std::string(name) + "'");
        auto li = locals[mi->second].find(std::string(local));
        if (li == locals[mi->second].end())
            fail(ElaborationErrorKind::UnknownName, "no port '" + std::string(name) + "'");
        return {mi->second, &li->second};
    };

    for (const auto& binding : netlist.bindings) {
        auto [src_module, src] = lookup(binding.source);
        auto [dst_module, dst] = lookup(binding.destination);
        (void)src_module;
        (void)dst_module;
        if (src->cls != SlotClass::Output)
            fail(ElaborationErrorKind::UnknownName, binding.source + " is not an output port");
        if (dst->cls != SlotClass::Input)
            fail(ElaborationErrorKind::UnknownName, binding.destination + " is not an input port");
        if (dst->slot != SIZE_MAX)
            fail(ElaborationErrorKind::DuplicateBinding, binding.destination + " bound more than once");
        if (src->width != dst->width)
            fail(ElaborationErrorKind::WidthMismatch,
                 binding.source + " (" + std::to_string(src->width) + ") -> " + binding.destination + " (" +
                     std::to_string(dst->width) + ")");
        dst->slot = src->slot;
    }

    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        for (const auto& port : netlist.modules[m].inputs) {
            if (locals[m].at(port.name).slot == SIZE_MAX)
                fail(ElaborationErrorKind::UnboundPort, qualified(netlist.modules[m].id, port.name) + " is unbound");
        }
    }

    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        const auto& module = netlist.modules[m];
        for (const auto& [name, local] : locals[m])
            schedule.aliases_.emplace_back(qualified(module.id, name), local.slot);
    }
    std::sort(schedule.aliases_.begin(), schedule.aliases_.end());

    // Resolve processes.
    std::vector<std::size_t> driver(schedule.slot_names_.size(), SIZE_MAX);
    for (std::size_t m = 0; m < netlist.modules.size(); ++m) {
        const auto& module = netlist.modules[m];
        for (const auto& spec : module.processes) {
            ScheduledProcess proc;
            proc.id = qualified(module.id, spec.name);
            proc.kind = spec.kind;
            proc.behavior = spec.behavior;
            if (!proc.behavior)
                fail(ElaborationErrorKind::IllegalAccess, proc.id + " has no behavior");

            for (const auto& name : spec.reads) {
                auto it = locals[m].find(name);
                if (it == locals[m].end())
                    fail(ElaborationErrorKind::UnknownName, proc.id + " reads unknown '" + name + "'");
                const auto cls = it->second.cls;
                const bool ok = cls == SlotClass::Register ||
                                (cls == SlotClass::Input && spec.kind != ProcessKind::MooreGeneration);
                if (!ok)
                    fail(ElaborationErrorKind::IllegalAccess,
                         proc.id + " (" + std::string(to_string(spec.kind)) + ") may not read '" + name + "'");
                proc.io.read_names.push_back(name);
                proc.io.read_slots.push_back(it->second.slot);
            }
            for (const auto& name : spec.writes) {
                auto it = locals[m].find(name);
                if (it == locals[m].end())
                    fail(ElaborationErrorKind::UnknownName, proc.id + " writes unknown '" + name + "'");
                const auto cls = it->second.cls;
                const bool ok = spec.kind == ProcessKind::Transition ? cls == SlotClass::Register
                                                                    : cls == SlotClass::Output;
                if (!ok)
                    fail(ElaborationErrorKind::IllegalAccess,
                         proc.id + " (" + std::string(to_string(spec.kind)) + ") may not write '" + name + "'");
                const auto slot = it->second.slot;
                if (driver[slot] != SIZE_MAX)
                    fail(ElaborationErrorKind::MultipleDrivers,
                         qualified(module.id, name) + " written by " +
                             schedule.processes_[driver[slot]].id + " and " + proc.id);
                driver[slot] = schedule.processes_.size();
                proc.io.write_names.push_back(name);
                proc.io.write_slots.push_back(slot);
                proc.io.write_masks.push_back(width_mask(it->second.width));
            }

            const auto index = schedule.processes_.size();
            switch (spec.kind) {
            case ProcessKind::Transition: schedule.transition_order_.push_back(index); break;
            case ProcessKind::MooreGeneration: schedule.moore_order_.push_back(index); break;
            case ProcessKind::MealyGeneration: break;
            }
            schedule.processes_.push_back(std::move(proc));
        }
    }

    // Mealy dependency graph: writer of a slot -> Mealy reader of that slot.
    std::vector<std::size_t> mealy;
    std::vector<std::size_t> node_of(schedule.processes_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < schedule.processes_.size(); ++i) {
        if (schedule.processes_[i].kind == ProcessKind::MealyGeneration) {
            node_of[i] = mealy.size();
            mealy.push_back(i);
        }
    }
    std::vector<std::vector<std::size_t>> succs(mealy.size());
    std::vector<std::vector<std::size_t>> preds(mealy.size());
    for (std::size_t b = 0; b < mealy.size(); ++b) {
        for (auto slot : schedule.processes_[mealy[b]].io.read_slots) {
            const auto writer = driver[slot];
            if (writer == SIZE_MAX || node_of[writer] == SIZE_MAX)
                continue;
            const auto a = node_of[writer];
            if (std::find(succs[a].begin(), succs[a].end(), b) == succs[a].end()) {
                succs[a].push_back(b);
                preds[b].push_back(a);
            }
        }
    }

    // Kahn's algorithm; ties broken by declaration order for determinism.
    std::vector<std::size_t> indegree(mealy.size());
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t n = 0; n < mealy.size(); ++n) {
        indegree[n] = preds[n].size();
        if (indegree[n] == 0)
            ready.push(n);
    }
    std::vector<bool> remaining(mealy.size(), true);
    while (!ready.empty()) {
        const auto n = ready.top();
        ready.pop();
        remaining[n] = false;
        schedule.mealy_order_.push_back(mealy[n]);
        for (auto s : succs[n]) {
            if (--indegree[s] == 0)
                ready.push(s);
        }
    }
    if (schedule.mealy_order_.size() != mealy.size()) {
        std::vector<std::string> ids;
        for (auto n : extract_cycle(preds, remaining))
            ids.push_back(schedule.processes_[mealy[n]].id);
        std::string what = "CombinationalCycle:";
        for (const auto& id : ids)
            what += " " + id;
        throw ElaborationError(ElaborationErrorKind::CombinationalCycle, what, std::move(ids));
    }

    return schedule;
}

SimState initialize(const StaticSchedule& schedule, bool checked)
{
    SimState state;
    state.values = schedule.reset_values();
    state.values.shrink_to_fit();
    state.staged.assign(schedule.register_count(), 0);
    state.staged.shrink_to_fit();

    const auto& procs = schedule.processes();
    for (auto i : schedule.moore_order()) {
        ProcessContext ctx(procs[i].io, state.values, state.values, checked);
        procs[i].behavior(ctx);
    }
    for (auto i : schedule.mealy_order()) {
        ProcessContext ctx(procs[i].io, state.values, state.values, checked);
        procs[i].behavior(ctx);
    }
    return state;
}

void step(SimState& state, const StaticSchedule& schedule, bool checked)
{
    const auto& procs = schedule.processes();
    const auto registers = schedule.register_count();

    // Rising edge: transitions see only pre-step values.
    std::copy_n(state.values.begin(), registers, state.staged.begin());
    std::span<std::uint64_t> staged_view(state.staged);
    for (auto i : schedule.transition_order()) {
        ProcessContext ctx(procs[i].io, state.values, staged_view, checked);
        procs[i].behavior(ctx);
    }
    std::copy_n(state.staged.begin(), registers, state.values.begin());

    // Falling edge.
    for (auto i : schedule.moore_order()) {
        ProcessContext ctx(procs[i].io, state.values, state.values, checked);
        procs[i].behavior(ctx);
    }
    for (auto i : schedule.mealy_order()) {
        ProcessContext ctx(procs[i].io, state.values, state.values, checked);
        procs[i].behavior(ctx);
    }
    ++state.cycle;
}

SignalTrace run(const Netlist& netlist, std::uint64_t n_cycles, RunOptions options)
{
    const auto schedule = elaborate(netlist);
    auto state = initialize(schedule, options.checked);

    SignalTrace trace;
    const auto first_port = schedule.register_count();
    const auto port_count = schedule.slot_count() - first_port;
    trace.ports.assign(schedule.slot_names().begin() + static_cast<std::ptrdiff_t>(first_port),
                       schedule.slot_names().end());
    trace.records.reserve(static_cast<std::size_t>(n_cycles) * port_count);

    for (std::uint64_t c = 0; c < n_cycles; ++c) {
        step(state, schedule, options.checked);
        for (std::size_t p = 0; p < port_count; ++p)
            trace.records.push_back({state.cycle, static_cast<std::uint32_t>(p), state.values[first_port + p]});
    }
    return trace;
}

Simulator::Simulator(const Netlist& netlist, bool checked)
    : schedule_(elaborate(netlist)), state_(initialize(schedule_, checked)), checked_(checked)
{
}

std::size_t Simulator::slot(std::string_view qualified_name) const
{
    auto found = schedule_.find_slot(qualified_name);
    if (!found)
        throw std::out_of_range("unknown signal '" + std::string(qualified_name) + "'");
    return *found;
}

std::uint64_t Simulator::value(std::string_view qualified_name) const
{
    return state_.values[slot(qualified_name)];
}

} // namespace ima::kernel

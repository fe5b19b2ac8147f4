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

#include "ima/kernel/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace ima::kernel {

NonConvergence::NonConvergence(std::uint64_t cycle, std::size_t deltas)
    : std::runtime_error("NonConvergence: cycle " + std::to_string(cycle) + " still active after " +
                         std::to_string(deltas) + " delta cycles"),
      cycle_(cycle), deltas_(deltas)
{
}

namespace {

struct OracleProcess {
    ProcessKind kind;
    ProcessIo io;
    const Behavior* behavior;
};

struct OracleModel {
    std::vector<std::string> ports; // output ports, declaration order
    std::size_t first_port = 0;
    std::vector<std::uint64_t> reset;
    std::vector<OracleProcess> processes;
    std::vector<std::vector<std::size_t>> sensitive; // slot -> generation processes reading it
};

OracleModel build(const Netlist& netlist)
{
    OracleModel model;
    struct Signal {
        std::size_t slot;
        unsigned width;
        char cls; // 'r', 'o', 'i'
    };
    std::map<std::string, Signal> signals;
    std::size_t next = 0;

    for (const auto& module : netlist.modules) {
        for (const auto& reg : module.registers) {
            signals[qualified(module.id, reg.name)] = {next++, reg.width, 'r'};
            model.reset.push_back(reg.reset & width_mask(reg.width));
        }
    }
    model.first_port = next;
    for (const auto& module : netlist.modules) {
        for (const auto& port : module.outputs) {
            signals[qualified(module.id, port.name)] = {next++, port.width, 'o'};
            model.ports.push_back(qualified(module.id, port.name));
            model.reset.push_back(0);
        }
    }

    std::map<std::string, const Signal*> bound;
    for (const auto& binding : netlist.bindings) {
        auto src = signals.find(binding.source);
        if (src == signals.end() || src->second.cls != 'o')
            throw ElaborationError(ElaborationErrorKind::UnknownName, "unknown output " + binding.source);
        if (!bound.emplace(binding.destination, &src->second).second)
            throw ElaborationError(ElaborationErrorKind::DuplicateBinding, binding.destination + " bound twice");
    }
    for (const auto& module : netlist.modules) {
        for (const auto& port : module.inputs) {
            const auto name = qualified(module.id, port.name);
            auto it = bound.find(name);
            if (it == bound.end())
                throw ElaborationError(ElaborationErrorKind::UnboundPort, name + " is unbound");
            if (it->second->width != port.width)
                throw ElaborationError(ElaborationErrorKind::WidthMismatch, name + " width mismatch");
            signals[name] = {it->second->slot, port.width, 'i'};
        }
    }

    model.sensitive.resize(next);
    for (const auto& module : netlist.modules) {
        for (const auto& spec : module.processes) {
            OracleProcess proc{spec.kind, {}, &spec.behavior};
            for (const auto& name : spec.reads) {
                auto it = signals.find(qualified(module.id, name));
                if (it == signals.end())
                    throw ElaborationError(ElaborationErrorKind::UnknownName, "unknown read " + name);
                proc.io.read_names.push_back(name);
                proc.io.read_slots.push_back(it->second.slot);
            }
            for (const auto& name : spec.writes) {
                auto it = signals.find(qualified(module.id, name));
                if (it == signals.end())
                    throw ElaborationError(ElaborationErrorKind::UnknownName, "unknown write " + name);
                proc.io.write_names.push_back(name);
                proc.io.write_slots.push_back(it->second.slot);
                proc.io.write_masks.push_back(width_mask(it->second.width));
            }
            const auto index = model.processes.size();
            if (spec.kind != ProcessKind::Transition) {
                for (auto slot : proc.io.read_slots)
                    model.sensitive[slot].push_back(index);
            }
            model.processes.push_back(std::move(proc));
        }
    }
    return model;
}

class EventDrivenSimulator {
public:
    EventDrivenSimulator(const Netlist& netlist, OracleOptions options)
        : model_(build(netlist)), options_(options), values_(model_.reset), pending_(values_)
    {
    }

    void initialize() { falling_edge(); }

    void clock()
    {
        ++cycle_;
        // Rising edge: clock-sensitive transitions, evaluated in reverse
        // declaration order; order must not matter.
        std::vector<std::size_t> triggered;
        for (std::size_t i = model_.processes.size(); i-- > 0;) {
            if (model_.processes[i].kind == ProcessKind::Transition)
                triggered.push_back(i);
        }
        evaluate_and_update(triggered);
        falling_edge();
    }

    std::uint64_t cycle() const { return cycle_; }
    const std::vector<std::uint64_t>& values() const { return values_; }
    const OracleModel& model() const { return model_; }

private:
    void falling_edge()
    {
        std::set<std::size_t, std::greater<>> triggered;
        for (std::size_t i = 0; i < model_.processes.size(); ++i) {
            if (model_.processes[i].kind != ProcessKind::Transition)
                triggered.insert(i);
        }
        std::size_t deltas = 0;
        while (!triggered.empty()) {
            if (++deltas > options_.delta_bound)
                throw NonConvergence(cycle_, deltas - 1);
            std::vector<std::size_t> batch(triggered.begin(), triggered.end());
            triggered.clear();
            for (auto slot : evaluate_and_update(batch)) {
                for (auto reader : model_.sensitive[slot])
                    triggered.insert(reader);
            }
        }
    }

    // Evaluation: every process reads the settled values; writes go to the
    // pending buffer. Update: pending values are applied and the slots that
    // actually changed are returned.
    std::vector<std::size_t> evaluate_and_update(const std::vector<std::size_t>& batch)
    {
        pending_ = values_;
        for (auto i : batch) {
            const auto& proc = model_.processes[i];
            ProcessContext ctx(proc.io, values_, pending_, options_.checked);
            (*proc.behavior)(ctx);
        }
        std::vector<std::size_t> changed;
        for (auto i : batch) {
            for (auto slot : model_.processes[i].io.write_slots) {
                if (pending_[slot] != values_[slot]) {
                    values_[slot] = pending_[slot];
                    changed.push_back(slot);
                }
            }
        }
        return changed;
    }

    OracleModel model_;
    OracleOptions options_;
    std::vector<std::uint64_t> values_;
    std::vector<std::uint64_t> pending_;
    std::uint64_t cycle_ = 0;
};

} // namespace

SignalTrace oracle_run(const Netlist& netlist, std::uint64_t n_cycles, OracleOptions options)
{
    EventDrivenSimulator sim(netlist, options);
    sim.initialize();

    SignalTrace trace;
    trace.ports = sim.model().ports;
    const auto first = sim.model().first_port;
    for (std::uint64_t c = 0; c < n_cycles; ++c) {
        sim.clock();
        for (std::size_t p = 0; p < trace.ports.size(); ++p)
            trace.records.push_back({sim.cycle(), static_cast<std::uint32_t>(p), sim.values()[first + p]});
    }
    return trace;
}

} // namespace ima::kernel

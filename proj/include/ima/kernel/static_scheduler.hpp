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

/**
 * @file static_scheduler.hpp
 * @brief Cycle-accurate simulation with a process order fixed at elaboration.
 *
 * One step() is one clock cycle:
 *   1. rising edge: every Transition runs against the pre-step values and
 *      the new register values are committed together;
 *   2. falling edge: every Moore process runs (declaration order), then
 *      every Mealy process runs once in the topological order computed by
 *      elaborate().
 *
 * Storage is sized once by initialize() and never grows afterwards.
 */
#pragma once

#include "ima/kernel/netlist.hpp"
#include "ima/kernel/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ima::kernel {

struct ScheduledProcess {
    std::string id; ///< "module.process"
    ProcessKind kind = ProcessKind::Transition;
    ProcessIo io;
    Behavior behavior;
};

class StaticSchedule {
public:
    const std::vector<ScheduledProcess>& processes() const { return processes_; }

    /// Indices into processes().
    std::span<const std::size_t> transition_order() const { return transition_order_; }
    std::span<const std::size_t> moore_order() const { return moore_order_; }
    std::span<const std::size_t> mealy_order() const { return mealy_order_; }

    std::vector<std::string> transition_ids() const;
    std::vector<std::string> moore_ids() const;
    std::vector<std::string> mealy_ids() const;

    /// Slots [0, register_count) are registers, the rest are output ports.
    std::size_t register_count() const { return register_count_; }
    std::size_t slot_count() const { return slot_names_.size(); }
    const std::vector<std::string>& slot_names() const { return slot_names_; }
    const std::vector<std::uint64_t>& reset_values() const { return reset_values_; }

    /// Slot holding the value of "module.port" or "module.register". Input
    /// ports resolve to the slot of the output they are bound to.
    std::optional<std::size_t> find_slot(std::string_view qualified_name) const;

    std::uint64_t clock_period_us() const { return clock_period_us_; }

private:
    friend StaticSchedule elaborate(const Netlist& netlist);

    std::vector<ScheduledProcess> processes_;
    std::vector<std::size_t> transition_order_;
    std::vector<std::size_t> moore_order_;
    std::vector<std::size_t> mealy_order_;
    std::size_t register_count_ = 0;
    std::vector<std::string> slot_names_;
    std::vector<std::uint64_t> reset_values_;
    std::vector<std::pair<std::string, std::size_t>> aliases_; ///< sorted lookup table
    std::uint64_t clock_period_us_ = 1;
};

struct SimState {
    std::uint64_t cycle = 0;
    std::vector<std::uint64_t> values; ///< registers, then output ports
    std::vector<std::uint64_t> staged; ///< rising-edge register staging

    std::span<const std::uint64_t> register_values(const StaticSchedule& schedule) const
    {
        return std::span(values).first(schedule.register_count());
    }
    std::span<const std::uint64_t> port_values(const StaticSchedule& schedule) const
    {
        return std::span(values).subspan(schedule.register_count());
    }

    /// Number of value cells reserved by this state.
    std::size_t storage_count() const { return values.capacity() + staged.capacity(); }
};

/// Validates the netlist and computes the static process order.
/// Throws ElaborationError.
StaticSchedule elaborate(const Netlist& netlist);

/// Reset registers, then one falling-edge pass so outputs reflect reset.
SimState initialize(const StaticSchedule& schedule, bool checked = true);

/// Advances @p state by one clock cycle.
void step(SimState& state, const StaticSchedule& schedule, bool checked = true);

struct RunOptions {
    bool checked = true;
};

/// Elaborates, initializes, then records every output port after each of
/// @p n_cycles steps. Records are stamped with the post-step cycle (1..n).
SignalTrace run(const Netlist& netlist, std::uint64_t n_cycles, RunOptions options = {});

/// Owns a schedule and its state; convenience for step-by-step clients.
class Simulator {
public:
    explicit Simulator(const Netlist& netlist, bool checked = true);

    void step() { kernel::step(state_, schedule_, checked_); }
    std::uint64_t cycle() const { return state_.cycle; }

    /// Current value of "module.port" / "module.register". Throws
    /// std::out_of_range for unknown names.
    std::uint64_t value(std::string_view qualified_name) const;
    std::uint64_t value(std::size_t slot) const { return state_.values[slot]; }
    std::size_t slot(std::string_view qualified_name) const;

    const StaticSchedule& schedule() const { return schedule_; }
    const SimState& state() const { return state_; }

private:
    StaticSchedule schedule_;
    SimState state_;
    bool checked_;
};

} // namespace ima::kernel

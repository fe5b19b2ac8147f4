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
 * @file netlist.hpp
 * @brief Structural description of a single-clock CFSM design.
 *
 * A design is a set of modules. Each module owns registers, input ports and
 * output ports, and a list of processes:
 *
 *  - Transition processes run on the rising clock edge. They read registers
 *    and input ports and are the only processes allowed to write registers.
 *  - Moore generation processes run on the falling edge, read registers only
 *    and write output ports.
 *  - Mealy generation processes run on the falling edge, read registers and
 *    input ports and write output ports. Their input-to-output paths are the
 *    combinational edges that constrain evaluation order.
 *
 * Every input port is bound to exactly one output port. Reading an input
 * therefore reads the bound output's current value.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ima::kernel {

enum class ProcessKind { Transition, MooreGeneration, MealyGeneration };

std::string_view to_string(ProcessKind kind);

/// Widest value carried by a single register or port.
inline constexpr unsigned kMaxWidth = 64;

constexpr std::uint64_t width_mask(unsigned width)
{
    return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

struct PortDecl {
    std::string name;
    unsigned width = 1;
};

struct RegisterDecl {
    std::string name;
    unsigned width = 1;
    std::uint64_t reset = 0;
};

/// Thrown when a behavior touches a value outside its declared read/write set.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Resolved storage slots for one process, in declaration order of its sets.
struct ProcessIo {
    std::vector<std::string> read_names;
    std::vector<std::string> write_names;
    std::vector<std::size_t> read_slots;
    std::vector<std::size_t> write_slots;
    std::vector<std::uint64_t> write_masks;
};

/**
 * The only view a behavior function gets of the simulation state.
 *
 * Reads come from @p source, writes land in @p sink. Writes are truncated to
 * the destination width. In checked mode any access outside the declared
 * sets raises ContractViolation.
 */
class ProcessContext {
public:
    ProcessContext(const ProcessIo& io, std::span<const std::uint64_t> source,
                   std::span<std::uint64_t> sink, bool checked)
        : io_(&io), source_(source), sink_(sink), checked_(checked)
    {
    }

    std::size_t read_count() const { return io_->read_slots.size(); }
    std::size_t write_count() const { return io_->write_slots.size(); }

    std::uint64_t read(std::size_t index) const
    {
        if (checked_ && index >= io_->read_slots.size())
            throw ContractViolation("read index " + std::to_string(index) + " outside declared read-set");
        return source_[io_->read_slots[index]];
    }

    void write(std::size_t index, std::uint64_t value)
    {
        if (checked_ && index >= io_->write_slots.size())
            throw ContractViolation("write index " + std::to_string(index) + " outside declared write-set");
        sink_[io_->write_slots[index]] = value & io_->write_masks[index];
    }

    std::uint64_t read(std::string_view name) const;
    void write(std::string_view name, std::uint64_t value);

private:
    const ProcessIo* io_;
    std::span<const std::uint64_t> source_;
    std::span<std::uint64_t> sink_;
    bool checked_;
};

using Behavior = std::function<void(ProcessContext&)>;

struct ProcessSpec {
    std::string name;
    ProcessKind kind = ProcessKind::Transition;
    std::vector<std::string> reads;
    std::vector<std::string> writes;
    Behavior behavior;
};

struct ModuleSpec {
    std::string id;
    std::vector<RegisterDecl> registers;
    std::vector<PortDecl> inputs;
    std::vector<PortDecl> outputs;
    std::vector<ProcessSpec> processes;
};

/// source is "module.output", destination is "module.input".
struct Binding {
    std::string source;
    std::string destination;
};

struct Netlist {
    std::vector<ModuleSpec> modules;
    std::vector<Binding> bindings;
    std::uint64_t clock_period_us = 1;
};

enum class ElaborationErrorKind {
    CombinationalCycle,
    UnboundPort,
    WidthMismatch,
    DuplicateBinding,
    DuplicateName,
    UnknownName,
    IllegalAccess,
    MultipleDrivers,
    InvalidWidth,
    InvalidClock,
};

std::string_view to_string(ElaborationErrorKind kind);

class ElaborationError : public std::runtime_error {
public:
    ElaborationError(ElaborationErrorKind kind, const std::string& what,
                     std::vector<std::string> cycle = {})
        : std::runtime_error(what), kind_(kind), cycle_(std::move(cycle))
    {
    }

    ElaborationErrorKind kind() const noexcept { return kind_; }

    /// Process ids forming the offending loop, for CombinationalCycle.
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    ElaborationErrorKind kind_;
    std::vector<std::string> cycle_;
};

/// "module.name"
std::string qualified(std::string_view module, std::string_view name);

} // namespace ima::kernel

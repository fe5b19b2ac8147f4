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

#include "ima/kernel/netlist.hpp"

#include <algorithm>

namespace ima::kernel {

std::string_view to_string(ProcessKind kind)
{
    switch (kind) {
    case ProcessKind::Transition: return "transition";
    case ProcessKind::MooreGeneration: return "moore";
    case ProcessKind::MealyGeneration: return "mealy";
    }
    return "?";
}

std::string_view to_string(ElaborationErrorKind kind)
{
    switch (kind) {
    case ElaborationErrorKind::CombinationalCycle: return "CombinationalCycle";
    case ElaborationErrorKind::UnboundPort: return "UnboundPort";
    case ElaborationErrorKind::WidthMismatch: return "WidthMismatch";
    case ElaborationErrorKind::DuplicateBinding: return "DuplicateBinding";
    case ElaborationErrorKind::DuplicateName: return "DuplicateName";
    case ElaborationErrorKind::UnknownName: return "UnknownName";
    case ElaborationErrorKind::IllegalAccess: return "IllegalAccess";
    case ElaborationErrorKind::MultipleDrivers: return "MultipleDrivers";
    case ElaborationErrorKind::InvalidWidth: return "InvalidWidth";
    case ElaborationErrorKind::InvalidClock: return "InvalidClock";
    }
    return "?";
}

std::string qualified(std::string_view module, std::string_view name)
{
    std::string out;
    out.reserve(module.size() + name.size() + 1);
    out.append(module).append(".").append(name);
    return out;
}

std::uint64_t ProcessContext::read(std::string_view name) const
{
    const auto& names = io_->read_names;
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw ContractViolation("read of '" + std::string(name) + "' outside declared read-set");
    return source_[io_->read_slots[static_cast<std::size_t>(it - names.begin())]];
}

void ProcessContext::write(std::string_view name, std::uint64_t value)
{
    const auto& names = io_->write_names;
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw ContractViolation("write of '" + std::string(name) + "' outside declared write-set");
    const auto index = static_cast<std::size_t>(it - names.begin());
    sink_[io_->write_slots[index]] = value & io_->write_masks[index];
}

} // namespace ima::kernel

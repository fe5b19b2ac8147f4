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
 * @file faults.hpp
 * @brief Positional fault injection on the frame event stream.
 *
 * Faults apply one after another; each nth counts (from 1) over the stream
 * as left by the faults before it.
 */
#pragma once

#include "ima/a653/partition.hpp"
#include "ima/a664/frame_trace.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ima::faults {

using a653::Microseconds;
using a653::PartitionId;
using a664::VlId;

struct Drop {
    VlId vl = 0;
    std::size_t nth = 1;
};

struct Delay {
    VlId vl = 0;
    std::size_t nth = 1;
    std::int64_t delta_us = 0; ///< arrival shift; clamped at time 0
};

struct Duplicate {
    VlId vl = 0;
    std::size_t nth = 1;
};

/// Re-encodes the nth frame of @p app with one value moved; CRC stays valid.
struct CorruptValue {
    std::uint8_t app = 0;
    std::size_t nth_sample = 1;
    std::size_t value_index = 0;
    double delta = 0.0;
};

/// XORs one raw byte; the CRC is left stale.
struct CorruptBits {
    VlId vl = 0;
    std::size_t nth = 1;
    std::size_t byte_index = 0;
    std::uint8_t xor_mask = 0;
};

struct RogueVl {
    VlId vl_id = 0;
    std::vector<Microseconds> times;
};

/// Moves the partition's windows in the transmitter schedule only.
struct ScheduleShift {
    PartitionId partition = 0;
    std::int64_t delta_us = 0;
};

using FaultSpec = std::variant<Drop, Delay, Duplicate, CorruptValue, CorruptBits, RogueVl, ScheduleShift>;

struct FaultScenario {
    std::string name;
    std::vector<FaultSpec> faults;
    std::uint64_t seed = 0; ///< reserved
};

class TargetNotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string describe(const FaultSpec& fault);

/// Output stays ordered by arrival time. Throws TargetNotFound.
std::vector<a664::FrameEvent> apply_scenario(std::vector<a664::FrameEvent> events, const FaultScenario& scenario);

/// The transmitter's major frame with every ScheduleShift applied, offsets
/// taken modulo the MAF. Throws TargetNotFound for a partition with no window.
a653::MajorFrame apply_schedule_shifts(a653::MajorFrame mf, const FaultScenario& scenario);

} // namespace ima::faults

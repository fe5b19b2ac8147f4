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
 * @file partition.hpp
 * @brief Time partitioning: the major frame and its partition windows.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ima::a653 {

using Microseconds = std::uint64_t;
using PartitionId = std::uint8_t;

struct PartitionWindow {
    PartitionId partition = 0;
    Microseconds offset = 0; ///< from MAF start
    Microseconds duration = 0;

    Microseconds end() const { return offset + duration; }

    friend bool operator==(const PartitionWindow&, const PartitionWindow&) = default;
};

/// The window pattern repeats identically every maf_duration.
struct MajorFrame {
    Microseconds maf_duration = 0;
    std::vector<PartitionWindow> windows;

    /// Start of the MAF containing @p t.
    Microseconds maf_start(Microseconds t) const { return maf_duration == 0 ? 0 : t - t % maf_duration; }

    friend bool operator==(const MajorFrame&, const MajorFrame&) = default;
};

enum class ViolationKind { ZeroMaf, ZeroDuration, OutOfRange, Unsorted, Overlap, PartitionAbsent };

struct ScheduleViolation {
    ViolationKind kind;
    PartitionId first = 0;
    PartitionId second = 0; ///< the other window, for Overlap
    std::string message;
};

/// Empty result means the schedule is valid. @p declared lists partitions
/// that must own at least one window; pass nothing to skip that check.
std::vector<ScheduleViolation> validate_major_frame(const MajorFrame& mf,
                                                    std::span<const PartitionId> declared = {});

/// Partition whose window contains t mod maf_duration; nullopt in slack.
std::optional<PartitionId> active_partition(const MajorFrame& mf, Microseconds t);

} // namespace ima::a653

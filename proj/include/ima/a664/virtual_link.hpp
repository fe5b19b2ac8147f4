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

#pragma once

#include "ima/a653/partition.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ima::a664 {

using a653::Microseconds;
using a653::PartitionId;
using VlId = std::uint16_t;

inline constexpr std::array<std::uint32_t, 8> kAllowedBagsMs{1, 2, 4, 8, 16, 32, 64, 128};
inline constexpr std::size_t kMinFrameSize = 64;
inline constexpr std::size_t kMaxFrameSize = 1518;

/// Unidirectional channel from one source partition to one or more
/// destination end systems.
struct VirtualLinkConfig {
    VlId vl_id = 0;
    std::uint32_t bag_ms = 1;
    std::uint32_t max_frame_size = kMaxFrameSize;
    Microseconds max_jitter_us = 0;
    PartitionId source_partition = 0;
    std::vector<std::string> destinations;

    Microseconds bag_us() const { return Microseconds{bag_ms} * 1000; }

    friend bool operator==(const VirtualLinkConfig&, const VirtualLinkConfig&) = default;
};

bool is_allowed_bag(std::uint32_t bag_ms);

/// Contract violations of a single VL, as human-readable messages.
std::vector<std::string> validate_virtual_link(const VirtualLinkConfig& vl);

/// Per-VL sequence successor: 0 is the reset marker, 255 wraps to 1.
constexpr std::uint8_t next_sequence(std::uint8_t n)
{
    return n == 255 ? 1 : static_cast<std::uint8_t>(n + 1);
}

} // namespace ima::a664

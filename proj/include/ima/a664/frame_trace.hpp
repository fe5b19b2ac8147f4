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
 * @file frame_trace.hpp
 * @brief Frame events between the end system and the monitor tap.
 *
 * JSON Lines, one object per frame:
 *   {"t_emit": u64, "t_arrive": u64, "vl": u16, "seq": u8, "app": u8,
 *    "sample_seq": u16, "timestamp": u64, "values": [f64...], "raw": "hex"}
 * "raw" carries the exact wire bytes; readers fall back to re-encoding
 * from the logical fields when it is absent.
 */
#pragma once

#include "ima/a664/codec.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ima::a664 {

struct FrameEvent {
    Microseconds t_emit = 0;
    Microseconds t_arrive = 0;
    Bytes raw;

    friend bool operator==(const FrameEvent&, const FrameEvent&) = default;
};

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view text);

void write_frame_trace(std::ostream& out, std::span<const FrameEvent> events);

/// @p vls supplies the source partition byte when a record has no "raw"
/// field to replay; unknown VLs get partition 0.
std::vector<FrameEvent> read_frame_trace(std::istream& in, std::span<const VirtualLinkConfig> vls);

} // namespace ima::a664

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
 * @file codec.hpp
 * @brief Byte layout of a VL frame as it leaves the end system.
 *
 * All multi-byte integers are big-endian.
 *
 *   0..3    03 00 00 00        VL-addressed frame marker
 *   4..5    vl_id
 *   6       source partition
 *   7       app_id
 *   8..9    sample_seq
 *   10..17  sample timestamp (us)
 *   18      value_count (1..3)
 *   19..    value_count x IEEE-754 binary64
 *   ...     zero padding up to a 64-byte frame
 *   N-5     vl_seq
 *   N-4..   CRC-32 over bytes 0..N-5
 */
#pragma once

#include "ima/a653/sample.hpp"
#include "ima/a664/virtual_link.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ima::a664 {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kHeaderSize = 19;
inline constexpr std::size_t kTrailerSize = 5; // vl_seq + CRC

struct FrameHeader {
    VlId vl_id = 0;
    PartitionId source_partition = 0;
    std::uint8_t app_id = 0;
    std::uint16_t sample_seq = 0;
    Microseconds timestamp = 0;
};

class FrameTooLarge : public std::length_error {
public:
    FrameTooLarge(std::size_t required, std::size_t limit);

    std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

/// Encoded length for @p value_count values, before the 64-byte floor.
constexpr std::size_t unpadded_length(std::size_t value_count)
{
    return kHeaderSize + 8 * value_count + kTrailerSize;
}

/// Throws FrameTooLarge if the frame cannot fit in @p max_frame_size.
Bytes encode_frame(const FrameHeader& header, std::span<const double> values, std::uint8_t vl_seq,
                   std::size_t max_frame_size = kMaxFrameSize);

/// One sample per frame; source partition comes from the VL.
Bytes encode_frame(const a653::AppSample& sample, const VirtualLinkConfig& vl, std::uint8_t vl_seq);

struct Frame {
    VlId vl_id = 0;
    std::uint8_t vl_seq = 0;
    PartitionId source_partition = 0;
    a653::AppSample payload;
    Microseconds emit_time = 0;
    Microseconds arrival_time = 0;
    Bytes raw;

    FrameHeader header() const
    {
        return {vl_id, source_partition, payload.app_id, payload.sample_seq, payload.timestamp};
    }
};

enum class DecodeError { TooShort, BadCrc, UnknownLayout };

std::string_view to_string(DecodeError error);

struct DecodeFailure {
    DecodeError error;
    std::string detail;
};

using DecodeResult = std::variant<Frame, DecodeFailure>;

/// Checks length, then CRC, then layout. Only canonical encodings (exact
/// length, zero padding) are accepted, so encode(decode(raw)) == raw.
DecodeResult decode_frame(std::span<const std::uint8_t> raw);

/// vl_id read from bytes 4..5 without any validation; for diagnostics on
/// frames that failed to decode.
std::optional<VlId> peek_vl_id(std::span<const std::uint8_t> raw);

} // namespace ima::a664

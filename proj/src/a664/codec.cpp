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

#include "ima/a664/codec.hpp"
#include "ima/a664/crc32.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace ima::a664 {

namespace {

constexpr std::uint8_t kPrefix[4] = {0x03, 0x00, 0x00, 0x00};

template <typename T>
void put_be(Bytes& out, std::size_t at, T value)
{
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out[at + i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * (sizeof(T) - 1 - i)));
}

template <typename T>
T get_be(std::span<const std::uint8_t> in, std::size_t at)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v = (v << 8) | in[at + i];
    return static_cast<T>(v);
}

} // namespace

FrameTooLarge::FrameTooLarge(std::size_t required, std::size_t limit)
    : std::length_error("FrameTooLarge: frame needs " + std::to_string(required) + " bytes, limit is " +
                        std::to_string(limit)),
      required_(required)
{
}

std::string_view to_string(DecodeError error)
{
    switch (error) {
    case DecodeError::TooShort: return "TooShort";
    case DecodeError::BadCrc: return "BadCrc";
    case DecodeError::UnknownLayout: return "UnknownLayout";
    }
    return "?";
}

Bytes encode_frame(const FrameHeader& header, std::span<const double> values, std::uint8_t vl_seq,
                   std::size_t max_frame_size)
{
    const auto length = std::max(kMinFrameSize, unpadded_length(values.size()));
    if (length > max_frame_size || values.size() > 255)
        throw FrameTooLarge(length, max_frame_size);

    Bytes out(length, 0);
    std::copy(std::begin(kPrefix), std::end(kPrefix), out.begin());
    put_be<std::uint16_t>(out, 4, header.vl_id);
    out[6] = header.source_partition;
    out[7] = header.app_id;
    put_be<std::uint16_t>(out, 8, header.sample_seq);
    put_be<std::uint64_t>(out, 10, header.timestamp);
    out[18] = static_cast<std::uint8_t>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        put_be<std::uint64_t>(out, kHeaderSize + 8 * i, std::bit_cast<std::uint64_t>(values[i]));
    out[length - 5] = vl_seq;
    put_be<std::uint32_t>(out, length - 4, crc32(std::span(out).first(length - 4)));
    return out;
}

Bytes encode_frame(const a653::AppSample& sample, const VirtualLinkConfig& vl, std::uint8_t vl_seq)
{
    const FrameHeader header{vl.vl_id, vl.source_partition, sample.app_id, sample.sample_seq, sample.timestamp};
    return encode_frame(header, sample.view(), vl_seq, vl.max_frame_size);
}

DecodeResult decode_frame(std::span<const std::uint8_t> raw)
{
    if (raw.size() < kMinFrameSize)
        return DecodeFailure{DecodeError::TooShort, std::to_string(raw.size()) + " bytes"};

    const auto n = raw.size();
    const auto expected_crc = get_be<std::uint32_t>(raw, n - 4);
    const auto actual_crc = crc32(raw.first(n - 4));
    if (expected_crc != actual_crc)
        return DecodeFailure{DecodeError::BadCrc, "CRC mismatch"};

    if (!std::equal(std::begin(kPrefix), std::end(kPrefix), raw.begin()))
        return DecodeFailure{DecodeError::UnknownLayout, "bad frame marker"};
    const std::size_t count = raw[18];
    if (count < 1 || count > a653::kMaxSampleValues)
        return DecodeFailure{DecodeError::UnknownLayout, "value_count " + std::to_string(count)};
    if (n != std::max(kMinFrameSize, unpadded_length(count)))
        return DecodeFailure{DecodeError::UnknownLayout, "non-canonical length " + std::to_string(n)};
    const auto pad_begin = raw.begin() + static_cast<std::ptrdiff_t>(kHeaderSize + 8 * count);
    const auto pad_end = raw.begin() + static_cast<std::ptrdiff_t>(n - 5);
    if (std::any_of(pad_begin, pad_end, [](std::uint8_t b) { return b != 0; }))
        return DecodeFailure{DecodeError::UnknownLayout, "non-zero padding"};

    Frame frame;
    frame.vl_id = get_be<std::uint16_t>(raw, 4);
    frame.source_partition = raw[6];
    frame.payload.app_id = raw[7];
    frame.payload.sample_seq = get_be<std::uint16_t>(raw, 8);
    frame.payload.timestamp = get_be<std::uint64_t>(raw, 10);
    frame.payload.value_count = static_cast<std::uint8_t>(count);
    for (std::size_t i = 0; i < count; ++i)
        frame.payload.values[i] = std::bit_cast<double>(get_be<std::uint64_t>(raw, kHeaderSize + 8 * i));
    frame.vl_seq = raw[n - 5];
    frame.raw.assign(raw.begin(), raw.end());
    return frame;
}

std::optional<VlId> peek_vl_id(std::span<const std::uint8_t> raw)
{
    if (raw.size() < 6)
        return std::nullopt;
    return get_be<std::uint16_t>(raw, 4);
}

} // namespace ima::a664

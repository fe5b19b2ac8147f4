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

#include "ima/a664/frame_trace.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace ima::a664 {

using nlohmann::ordered_json;

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xF]);
    }
    return out;
}

Bytes from_hex(std::string_view text)
{
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (text.size() % 2 != 0)
        throw TraceFormatError("odd-length hex string");
    Bytes out;
    out.reserve(text.size() / 2);
    for (std::size_t i = 0; i < text.size(); i += 2) {
        const int hi = nibble(text[i]);
        const int lo = nibble(text[i + 1]);
        if (hi < 0 || lo < 0)
            throw TraceFormatError("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

void write_frame_trace(std::ostream& out, std::span<const FrameEvent> events)
{
    for (const auto& event : events) {
        ordered_json record;
        record["t_emit"] = event.t_emit;
        record["t_arrive"] = event.t_arrive;
        // Logical fields are best-effort; corrupted frames only carry raw.
        auto decoded = decode_frame(event.raw);
        if (auto* frame = std::get_if<Frame>(&decoded)) {
            record["vl"] = frame->vl_id;
            record["seq"] = frame->vl_seq;
            record["app"] = frame->payload.app_id;
            record["sample_seq"] = frame->payload.sample_seq;
            record["timestamp"] = frame->payload.timestamp;
            record["values"] = std::vector<double>(frame->payload.view().begin(), frame->payload.view().end());
        } else if (auto vl = peek_vl_id(event.raw)) {
            record["vl"] = *vl;
        }
        record["raw"] = to_hex(event.raw);
        out << record.dump() << '\n';
    }
}

namespace {

FrameEvent parse_record(const ordered_json& j, std::span<const VirtualLinkConfig> vls)
{
    FrameEvent event;
    event.t_emit = j.at("t_emit").get<Microseconds>();
    event.t_arrive = j.at("t_arrive").get<Microseconds>();
    if (auto raw = j.find("raw"); raw != j.end()) {
        event.raw = from_hex(raw->get<std::string>());
        return event;
    }
    FrameHeader header;
    header.vl_id = j.at("vl").get<VlId>();
    header.app_id = j.at("app").get<std::uint8_t>();
    header.sample_seq = j.at("sample_seq").get<std::uint16_t>();
    header.timestamp = j.value("timestamp", event.t_emit);
    for (const auto& vl : vls)
        if (vl.vl_id == header.vl_id)
            header.source_partition = vl.source_partition;
    const auto values = j.at("values").get<std::vector<double>>();
    event.raw = encode_frame(header, values, j.at("seq").get<std::uint8_t>());
    return event;
}

} // namespace

std::vector<FrameEvent> read_frame_trace(std::istream& in, std::span<const VirtualLinkConfig> vls)
{
    std::vector<FrameEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            events.push_back(parse_record(ordered_json::parse(line), vls));
        } catch (const std::exception& e) {
            throw TraceFormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return events;
}

} // namespace ima::a664

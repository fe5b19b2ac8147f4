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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ima::kernel {

struct TraceRecord {
    std::uint64_t cycle = 0;
    std::uint32_t port = 0; ///< index into SignalTrace::ports
    std::uint64_t value = 0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Per-cycle output port values, one record per port per simulated cycle.
struct SignalTrace {
    std::vector<std::string> ports; ///< "module.port"
    std::vector<TraceRecord> records;

    friend bool operator==(const SignalTrace&, const SignalTrace&) = default;

    /// {"cycle": u64, "port": "module.port", "value": u64} per line.
    void write_jsonl(std::ostream& out) const;
    std::string to_jsonl() const;
};

} // namespace ima::kernel

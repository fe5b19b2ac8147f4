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

#include "ima/monitor/anomaly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ima::harness {

struct AnomalyCounts {
    std::size_t missing = 0;
    std::size_t unexpected = 0;
    std::size_t incoherent = 0;
    std::size_t sequence = 0;

    friend bool operator==(const AnomalyCounts&, const AnomalyCounts&) = default;
};

struct Report {
    std::string config_digest;
    std::uint64_t frames_emitted = 0;
    std::uint64_t frames_received = 0;
    std::vector<monitor::Anomaly> anomalies; ///< detection order

    AnomalyCounts counts() const;
    bool pass() const { return anomalies.empty(); }
};

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string emit_report(const Report& report);

} // namespace ima::harness

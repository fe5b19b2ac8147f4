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
#include "ima/a664/virtual_link.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace ima::monitor {

enum class AnomalyKind { MissingData, UnexpectedComm, IncoherentData, SequenceError };

/// Finer classification inside a kind.
enum class AnomalyCause {
    Missing,   ///< MissingData
    Timing,    ///< arrival outside every expected interval
    Excess,    ///< more frames than the MAF allows
    Order,     ///< inter-VL order differs from the schedule
    UnknownVl, ///< VL absent from the model
    Malformed, ///< frame failed to decode
    Rate,      ///< variation law exceeded
    Bounds,    ///< value outside its absolute range
    Gap,       ///< sequence numbers skipped
    Repeat,    ///< sequence number seen twice in a row
};

std::string_view to_string(AnomalyKind kind);
std::string_view to_string(AnomalyCause cause);

struct Anomaly {
    AnomalyKind kind = AnomalyKind::UnexpectedComm;
    AnomalyCause cause = AnomalyCause::Timing;
    a664::VlId vl = 0;
    a653::Microseconds detected_at = 0;
    std::string detail;
    double expected = 0.0; ///< bound, interval start or expected sequence
    double observed = 0.0;
    int value_index = -1; ///< IncoherentData only

    friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

} // namespace ima::monitor

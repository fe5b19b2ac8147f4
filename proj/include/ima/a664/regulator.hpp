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

#include "ima/a653/sample.hpp"
#include "ima/a664/codec.hpp"
#include "ima/a664/virtual_link.hpp"

#include <deque>
#include <optional>
#include <vector>

namespace ima::a664 {

/// BAG shaper state of one VL.
struct VlRegulatorState {
    std::optional<Microseconds> last_emission;
    std::deque<a653::AppSample> backlog; ///< framed when they leave the shaper
    std::uint8_t next_seq = 1;
};

struct Emission {
    Microseconds emit_time = 0;
    std::uint8_t vl_seq = 0;
    Bytes raw;
};

/**
 * Called once per simulation cycle per VL. Emits the head of the backlog
 * iff the backlog is non-empty and at least one BAG has elapsed since the
 * previous emission (boundary inclusive). At most one frame per call.
 */
std::vector<Emission> regulate(VlRegulatorState& state, const VirtualLinkConfig& vl, Microseconds now);

} // namespace ima::a664

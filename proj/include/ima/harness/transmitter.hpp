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

#include "ima/a664/frame_trace.hpp"
#include "ima/harness/config.hpp"

#include <cstdint>
#include <vector>

namespace ima::harness {

/**
 * Runs the partitions and the end system for @p mafs major frames of @p mf.
 *
 * Each window start makes its partition produce one sample into its port.
 * Every tick the end system drains the ports into the VL backlogs and
 * regulates each VL. Frames arrive prop_delay_us after emission.
 */
std::vector<a664::FrameEvent> simulate_transmitter(const SystemConfig& config, const a653::MajorFrame& mf,
                                                   std::uint64_t mafs);

} // namespace ima::harness

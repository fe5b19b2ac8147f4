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
 * @file scenario.hpp
 * @brief End-to-end run: transmitter, fault injection, monitor, report.
 */
#pragma once

#include "ima/a664/frame_trace.hpp"
#include "ima/harness/config.hpp"
#include "ima/harness/report.hpp"

#include <vector>

namespace ima::harness {

struct RunResult {
    Report report;
    std::vector<a664::FrameEvent> delivered; ///< stream after fault injection
};

/// Deterministic. Throws monitor::InfeasibleConfig and faults::TargetNotFound.
RunResult run_scenario_detailed(const SystemConfig& config);
Report run_scenario(const SystemConfig& config);

/// Monitors a recorded stream against the config, closing run_mafs MAFs.
Report check_trace(const SystemConfig& config, const std::vector<a664::FrameEvent>& events);

} // namespace ima::harness

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
 * @file generator.hpp
 * @brief Kinematic data source behind the GPS, speed and angle partitions.
 *
 * Rates are constant. Position moves on a flat earth:
 *   lat += v cos(h) dt / 111320
 *   lon += v sin(h) dt / (111320 cos(lat))
 */
#pragma once

#include "ima/a653/sample.hpp"

#include <optional>
#include <utility>

namespace ima::a653 {

inline constexpr double kMetersPerDegree = 111320.0;

struct GeneratorParams {
    double latitude = 0.0;  ///< degrees
    double longitude = 0.0; ///< degrees
    double speed = 0.0;     ///< m/s
    double heading = 0.0;   ///< degrees, [0, 360)
    double acceleration = 0.0; ///< m/s^2
    double turn_rate = 0.0;    ///< deg/s

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct AppGeneratorState {
    double latitude = 0.0;
    double longitude = 0.0;
    double speed = 0.0;
    double heading = 0.0;
    double acceleration = 0.0;
    double turn_rate = 0.0;
    std::optional<Microseconds> last_sample;
    std::uint16_t sample_seq = 0; ///< last stamped value; wraps 65535 -> 0

    static AppGeneratorState from(const GeneratorParams& params);
};

/// Advances the state to @p t and returns the sample for @p app.
std::pair<AppGeneratorState, AppSample> generate_sample(AppGeneratorState state, AppId app, Microseconds t);

} // namespace ima::a653

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

#include "ima/a653/generator.hpp"

#include <cmath>
#include <numbers>

namespace ima::a653 {

std::string_view app_name(std::uint8_t app_id)
{
    switch (app_id) {
    case 1: return "gps";
    case 2: return "speed";
    case 3: return "angle";
    default: return "unknown";
    }
}

bool is_known_app(std::uint8_t app_id) { return app_id >= 1 && app_id <= 3; }

std::size_t value_count_for(AppId app) { return app == AppId::Gps ? 2 : 1; }

AppGeneratorState AppGeneratorState::from(const GeneratorParams& params)
{
    AppGeneratorState state;
    state.latitude = params.latitude;
    state.longitude = params.longitude;
    state.speed = params.speed;
    state.heading = params.heading;
    state.acceleration = params.acceleration;
    state.turn_rate = params.turn_rate;
    return state;
}

std::pair<AppGeneratorState, AppSample> generate_sample(AppGeneratorState state, AppId app, Microseconds t)
{
    const double dt = state.last_sample && t > *state.last_sample
                          ? static_cast<double>(t - *state.last_sample) / 1e6
                          : 0.0;
    if (dt > 0.0) {
        constexpr double kRad = std::numbers::pi / 180.0;
        const double heading_rad = state.heading * kRad;
        const double distance = state.speed * dt;
        const double lat_rad = state.latitude * kRad;
        state.latitude += distance * std::cos(heading_rad) / kMetersPerDegree;
        state.longitude += distance * std::sin(heading_rad) / (kMetersPerDegree * std::cos(lat_rad));
        state.speed += state.acceleration * dt;
        state.heading = std::fmod(state.heading + state.turn_rate * dt, 360.0);
        if (state.heading < 0.0)
            state.heading += 360.0;
        if (state.heading >= 360.0)
            state.heading -= 360.0;
    }
    state.last_sample = t;
    state.sample_seq = static_cast<std::uint16_t>(state.sample_seq + 1);

    AppSample sample;
    sample.app_id = static_cast<std::uint8_t>(app);
    sample.sample_seq = state.sample_seq;
    sample.timestamp = t;
    switch (app) {
    case AppId::Gps:
        sample.values = {state.latitude, state.longitude, 0.0};
        sample.value_count = 2;
        break;
    case AppId::Speed:
        sample.values = {state.speed, 0.0, 0.0};
        sample.value_count = 1;
        break;
    case AppId::Angle:
        sample.values = {state.heading, 0.0, 0.0};
        sample.value_count = 1;
        break;
    }
    return {state, sample};
}

} // namespace ima::a653

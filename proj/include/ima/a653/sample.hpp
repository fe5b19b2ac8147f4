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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ima::a653 {

/// Flight-management applications. Stored as a raw byte in samples so that
/// frames from unknown producers can still be represented.
enum class AppId : std::uint8_t { Gps = 1, Speed = 2, Angle = 3 };

inline constexpr std::size_t kMaxSampleValues = 3;

std::string_view app_name(std::uint8_t app_id);
bool is_known_app(std::uint8_t app_id);
/// GPS carries latitude and longitude; speed and angle one value each.
std::size_t value_count_for(AppId app);

struct AppSample {
    std::uint8_t app_id = 0;
    std::uint16_t sample_seq = 0;
    Microseconds timestamp = 0;
    std::array<double, kMaxSampleValues> values{};
    std::uint8_t value_count = 0;

    std::span<const double> view() const { return {values.data(), value_count}; }

    friend bool operator==(const AppSample&, const AppSample&) = default;
};

} // namespace ima::a653

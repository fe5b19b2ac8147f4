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
 * @file checks.hpp
 * @brief Per-frame sequence and data-consistency checks.
 */
#pragma once

#include "ima/a664/codec.hpp"
#include "ima/monitor/anomaly.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ima::monitor {

struct ValueLaw {
    double max_rate = 0.0; ///< units per second
    double min = 0.0;
    double max = 0.0;
    bool angular = false; ///< compare by minimal signed difference mod 360
};

struct VariationLaw {
    std::uint8_t app_id = 0;
    std::vector<ValueLaw> values;
    std::size_t window_n = 8; ///< at least 2
    double epsilon = 1e-9;
};

/// Minimal signed difference b - a on the circle, in (-180, 180].
double angular_difference(double a, double b);

/// Last window_n accepted samples of one application, fixed capacity.
class SampleWindow {
public:
    struct Entry {
        a653::Microseconds timestamp = 0;
        a653::AppSample sample;
    };

    explicit SampleWindow(std::size_t capacity);

    void push(const a653::AppSample& sample);
    const Entry* newest() const;
    std::size_t size() const { return size_; }
    std::size_t capacity() const { return ring_.size(); }

private:
    std::vector<Entry> ring_;
    std::size_t head_ = 0; ///< next write position
    std::size_t size_ = 0;
};

/// Checks @p observed against next_sequence(@p last) and updates @p last.
/// Zero is the reset marker and re-synchronises silently.
std::optional<Anomaly> check_sequence(std::uint8_t& last, std::uint8_t observed, a664::VlId vl,
                                      a653::Microseconds at);

/// Compares the frame's sample with the newest one in @p window. The sample
/// joins the window only if it is coherent, so one bad value is reported
/// once rather than again against its successor.
std::vector<Anomaly> check_data(const VariationLaw& law, SampleWindow& window, const a664::Frame& frame);

} // namespace ima::monitor

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

#include "ima/monitor/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ima::monitor {

std::string_view to_string(AnomalyKind kind)
{
    switch (kind) {
    case AnomalyKind::MissingData: return "MissingData";
    case AnomalyKind::UnexpectedComm: return "UnexpectedComm";
    case AnomalyKind::IncoherentData: return "IncoherentData";
    case AnomalyKind::SequenceError: return "SequenceError";
    }
    return "?";
}

std::string_view to_string(AnomalyCause cause)
{
    switch (cause) {
    case AnomalyCause::Missing: return "missing";
    case AnomalyCause::Timing: return "timing";
    case AnomalyCause::Excess: return "excess";
    case AnomalyCause::Order: return "order";
    case AnomalyCause::UnknownVl: return "unknown_vl";
    case AnomalyCause::Malformed: return "malformed";
    case AnomalyCause::Rate: return "rate";
    case AnomalyCause::Bounds: return "bounds";
    case AnomalyCause::Gap: return "gap";
    case AnomalyCause::Repeat: return "repeat";
    }
    return "?";
}

double angular_difference(double a, double b)
{
    double d = std::fmod(b - a, 360.0);
    if (d > 180.0)
        d -= 360.0;
    else if (d <= -180.0)
        d += 360.0;
    return d;
}

SampleWindow::SampleWindow(std::size_t capacity) : ring_(std::max<std::size_t>(capacity, 1)) {}

void SampleWindow::push(const a653::AppSample& sample)
{
    ring_[head_] = {sample.timestamp, sample};
    head_ = (head_ + 1) % ring_.size();
    size_ = std::min(size_ + 1, ring_.size());
}

const SampleWindow::Entry* SampleWindow::newest() const
{
    if (size_ == 0)
        return nullptr;
    return &ring_[(head_ + ring_.size() - 1) % ring_.size()];
}

std::optional<Anomaly> check_sequence(std::uint8_t& last, std::uint8_t observed, a664::VlId vl,
                                      a653::Microseconds at)
{
    const auto previous = last;
    last = observed;
    if (observed == 0)
        return std::nullopt;
    const auto expected = a664::next_sequence(previous);
    if (observed == expected)
        return std::nullopt;

    Anomaly a{.kind = AnomalyKind::SequenceError, .cause = AnomalyCause::Gap, .vl = vl, .detected_at = at,
              .detail = {}, .expected = double(expected), .observed = double(observed), .value_index = -1};
    if (observed == previous) {
        a.cause = AnomalyCause::Repeat;
        a.detail = "sequence " + std::to_string(observed) + " repeated";
    } else {
        // Valid sequence values form a ring of 255 (1..255).
        const int gap = ((observed - 1) - (expected - 1) + 255) % 255;
        a.detail = "expected sequence " + std::to_string(expected) + ", got " + std::to_string(observed) + " (gap " +
                   std::to_string(gap) + ")";
    }
    return a;
}

std::vector<Anomaly> check_data(const VariationLaw& law, SampleWindow& window, const a664::Frame& frame)
{
    std::vector<Anomaly> out;
    const auto& sample = frame.payload;
    const auto* previous = window.newest();
    const auto n = std::min<std::size_t>(sample.value_count, law.values.size());

    auto report = [&](AnomalyCause cause, std::size_t i, double expected, double observed, std::string detail) {
        out.push_back({AnomalyKind::IncoherentData, cause, frame.vl_id, frame.arrival_time, std::move(detail),
                       expected, observed, static_cast<int>(i)});
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& rule = law.values[i];
        const double v = sample.values[i];
        if (!(v >= rule.min && v <= rule.max)) {
            std::ostringstream d;
            d << "app " << int(sample.app_id) << " value[" << i << "] = " << v << " outside [" << rule.min << ", "
              << rule.max << "]";
            report(AnomalyCause::Bounds, i, v < rule.min ? rule.min : rule.max, v, d.str());
        }
        if (!previous)
            continue;
        const double dt = sample.timestamp > previous->timestamp
                              ? double(sample.timestamp - previous->timestamp) / 1e6
                              : 0.0;
        const double before = previous->sample.values[i];
        const double diff = rule.angular ? angular_difference(before, v) : v - before;
        const double allowed = rule.max_rate * dt + law.epsilon;
        if (!(std::abs(diff) <= allowed)) {
            std::ostringstream d;
            d << "app " << int(sample.app_id) << " value[" << i << "] changed by " << diff << " in " << dt
              << " s, allowed " << allowed;
            report(AnomalyCause::Rate, i, allowed, diff, d.str());
        }
    }
    if (out.empty())
        window.push(sample);
    return out;
}

} // namespace ima::monitor

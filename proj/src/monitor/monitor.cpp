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

#include "ima/monitor/monitor.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <string>

namespace ima::monitor {

namespace {

Anomaly unexpected(AnomalyCause cause, a664::VlId vl, Microseconds at, std::string detail)
{
    return {AnomalyKind::UnexpectedComm, cause, vl, at, std::move(detail), 0.0, double(at), -1};
}

} // namespace

Monitor::Monitor(ExpectedTrafficModel model, std::vector<VariationLaw> laws) : model_(std::move(model))
{
    for (const auto& vl : model_.vls)
        vl_state_.push_back({std::vector<bool>(vl.frames_per_maf(), false), 0, 0});
    for (auto& law : laws) {
        windows_.emplace(law.app_id, SampleWindow(law.window_n));
        laws_.emplace(law.app_id, std::move(law));
    }
}

std::vector<Anomaly> Monitor::flush_maf()
{
    std::vector<Anomaly> out;
    const auto start = maf_start();
    const auto end = start + model_.maf_duration;
    for (std::size_t v = 0; v < model_.vls.size(); ++v) {
        auto& state = vl_state_[v];
        const auto& expectation = model_.vls[v];
        for (std::size_t j = 0; j < state.consumed.size(); ++j) {
            if (state.consumed[j])
                continue;
            const auto& e = expectation.emissions[j];
            out.push_back({AnomalyKind::MissingData, AnomalyCause::Missing, expectation.vl_id, end,
                           "no frame in [" + std::to_string(start + e.earliest) + ", " +
                               std::to_string(start + e.latest) + "] us",
                           double(start + e.earliest), 0.0, -1});
        }
        std::fill(state.consumed.begin(), state.consumed.end(), false);
        state.arrivals = 0;
    }
    max_order_position_.reset();
    ++maf_index_;
    return out;
}

std::vector<Anomaly> Monitor::flush_until(Microseconds t)
{
    std::vector<Anomaly> out;
    if (model_.maf_duration == 0)
        return out;
    while (maf_start() + model_.maf_duration <= t) {
        auto flushed = flush_maf();
        out.insert(out.end(), flushed.begin(), flushed.end());
    }
    return out;
}

void Monitor::check_temporal(std::size_t v, Microseconds arrival, std::vector<Anomaly>& out)
{
    auto& state = vl_state_[v];
    const auto& expectation = model_.vls[v];
    const auto vl = expectation.vl_id;

    if (arrival < maf_start()) {
        out.push_back(unexpected(AnomalyCause::Timing, vl, arrival,
                                 "arrival at " + std::to_string(arrival) + " us belongs to a closed major frame"));
        return;
    }
    const auto offset = arrival - maf_start();

    auto match = std::find_if(expectation.emissions.begin(), expectation.emissions.end(), [&](const auto& e) {
        const auto j = static_cast<std::size_t>(&e - expectation.emissions.data());
        return !state.consumed[j] && offset >= e.earliest && offset <= e.latest;
    });
    if (match != expectation.emissions.end()) {
        state.consumed[static_cast<std::size_t>(match - expectation.emissions.begin())] = true;
    } else if (std::all_of(state.consumed.begin(), state.consumed.end(), [](bool c) { return c; })) {
        out.push_back(unexpected(AnomalyCause::Excess, vl, arrival,
                                 "VL " + std::to_string(vl) + " exceeds " +
                                     std::to_string(expectation.frames_per_maf()) + " frame(s) per major frame"));
    } else {
        out.push_back(unexpected(AnomalyCause::Timing, vl, arrival,
                                 "VL " + std::to_string(vl) + " arrival at " + std::to_string(arrival) +
                                     " us outside every expected interval"));
    }

    // The k-th arrival of a VL in the MAF takes the k-th expected slot.
    const auto k = state.arrivals++;
    if (k >= expectation.frames_per_maf())
        return;
    const auto position = expectation.emissions[k].order_position;
    if (max_order_position_ && position < *max_order_position_) {
        const auto ahead = model_.order[*max_order_position_];
        out.push_back(unexpected(AnomalyCause::Order, vl, arrival,
                                 "VL " + std::to_string(vl) + " arrived after VL " + std::to_string(ahead) +
                                     ", schedule expects it earlier"));
    }
    max_order_position_ = std::max(max_order_position_.value_or(0), position);
}

void Monitor::check_laws(const a664::Frame& frame, std::vector<Anomaly>& out)
{
    const auto app = frame.payload.app_id;
    auto law = laws_.find(app);
    if (law == laws_.end()) {
        if (lawless_apps_.insert(app).second)
            spdlog::warn("no variation law for app {}; data checks skipped", int(app));
        return;
    }
    auto found = check_data(law->second, windows_.at(app), frame);
    out.insert(out.end(), found.begin(), found.end());
}

std::vector<Anomaly> Monitor::ingest(const a664::FrameEvent& event)
{
    auto out = flush_until(event.t_arrive);

    auto decoded = a664::decode_frame(event.raw);
    if (auto* failure = std::get_if<a664::DecodeFailure>(&decoded)) {
        out.push_back(unexpected(AnomalyCause::Malformed, a664::peek_vl_id(event.raw).value_or(0), event.t_arrive,
                                 std::string("malformed frame: ") + std::string(a664::to_string(failure->error)) +
                                     " (" + failure->detail + ")"));
        return out;
    }
    auto& frame = std::get<a664::Frame>(decoded);
    frame.emit_time = event.t_emit;
    frame.arrival_time = event.t_arrive;

    auto it = std::find_if(model_.vls.begin(), model_.vls.end(),
                           [&](const VlExpectation& e) { return e.vl_id == frame.vl_id; });
    if (it == model_.vls.end()) {
        out.push_back(unexpected(AnomalyCause::UnknownVl, frame.vl_id, event.t_arrive,
                                 "frame on unconfigured VL " + std::to_string(frame.vl_id)));
        return out;
    }
    const auto v = static_cast<std::size_t>(it - model_.vls.begin());

    check_temporal(v, event.t_arrive, out);
    if (auto seq = check_sequence(vl_state_[v].last_seq, frame.vl_seq, frame.vl_id, event.t_arrive))
        out.push_back(std::move(*seq));
    check_laws(frame, out);
    return out;
}

} // namespace ima::monitor

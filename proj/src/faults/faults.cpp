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

#include "ima/faults/faults.hpp"

#include <algorithm>

namespace ima::faults {

namespace {

using a664::FrameEvent;
using Events = std::vector<FrameEvent>;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// Index of the nth frame whose raw bytes carry @p vl.
std::size_t nth_on_vl(const Events& events, VlId vl, std::size_t nth, const std::string& what)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < events.size(); ++i)
        if (a664::peek_vl_id(events[i].raw) == vl && ++seen == nth)
            return i;
    throw TargetNotFound(what + ": VL " + std::to_string(vl) + " has " + std::to_string(seen) +
                         " frame(s), occurrence " + std::to_string(nth) + " requested");
}

void sort_by_arrival(Events& events)
{
    std::stable_sort(events.begin(), events.end(),
                     [](const FrameEvent& a, const FrameEvent& b) { return a.t_arrive < b.t_arrive; });
}

void apply(Events& events, const Drop& f)
{
    events.erase(events.begin() + static_cast<std::ptrdiff_t>(nth_on_vl(events, f.vl, f.nth, "drop")));
}

void apply(Events& events, const Delay& f)
{
    auto& e = events[nth_on_vl(events, f.vl, f.nth, "delay")];
    const auto shifted = static_cast<std::int64_t>(e.t_arrive) + f.delta_us;
    e.t_arrive = shifted < 0 ? 0 : static_cast<Microseconds>(shifted);
    sort_by_arrival(events);
}

void apply(Events& events, const Duplicate& f)
{
    const auto i = nth_on_vl(events, f.vl, f.nth, "duplicate");
    const auto copy = events[i];
    events.insert(events.begin() + static_cast<std::ptrdiff_t>(i + 1), copy);
}

void apply(Events& events, const CorruptValue& f)
{
    std::size_t seen = 0;
    for (auto& e : events) {
        auto decoded = a664::decode_frame(e.raw);
        auto* frame = std::get_if<a664::Frame>(&decoded);
        if (!frame || frame->payload.app_id != f.app || ++seen != f.nth_sample)
            continue;
        if (f.value_index >= frame->payload.value_count)
            throw TargetNotFound("corrupt_value: app " + std::to_string(f.app) + " carries " +
                                 std::to_string(frame->payload.value_count) + " value(s), index " +
                                 std::to_string(f.value_index) + " requested");
        frame->payload.values[f.value_index] += f.delta;
        e.raw = a664::encode_frame(frame->header(), frame->payload.view(), frame->vl_seq, e.raw.size());
        return;
    }
    throw TargetNotFound("corrupt_value: app " + std::to_string(f.app) + " has " + std::to_string(seen) +
                         " frame(s), occurrence " + std::to_string(f.nth_sample) + " requested");
}

void apply(Events& events, const CorruptBits& f)
{
    auto& e = events[nth_on_vl(events, f.vl, f.nth, "corrupt_bits")];
    if (f.byte_index >= e.raw.size())
        throw TargetNotFound("corrupt_bits: byte " + std::to_string(f.byte_index) + " beyond a " +
                             std::to_string(e.raw.size()) + "-byte frame");
    e.raw[f.byte_index] ^= f.xor_mask;
}

void apply(Events& events, const RogueVl& f)
{
    const std::vector<double> values{0.0};
    for (auto t : f.times) {
        FrameEvent rogue{t, t, a664::encode_frame(a664::FrameHeader{f.vl_id, 0, 0, 0, t}, values, 1)};
        auto at = std::upper_bound(events.begin(), events.end(), t,
                                   [](Microseconds time, const FrameEvent& e) { return time < e.t_arrive; });
        events.insert(at, std::move(rogue));
    }
}

void apply(Events&, const ScheduleShift&) {}

} // namespace

std::string describe(const FaultSpec& fault)
{
    return std::visit(
        Overloaded{
            [](const Drop& f) { return "drop VL " + std::to_string(f.vl) + " #" + std::to_string(f.nth); },
            [](const Delay& f) {
                return "delay VL " + std::to_string(f.vl) + " #" + std::to_string(f.nth) + " by " +
                       std::to_string(f.delta_us) + " us";
            },
            [](const Duplicate& f) { return "duplicate VL " + std::to_string(f.vl) + " #" + std::to_string(f.nth); },
            [](const CorruptValue& f) {
                return "corrupt app " + std::to_string(f.app) + " sample #" + std::to_string(f.nth_sample) +
                       " value[" + std::to_string(f.value_index) + "] by " + std::to_string(f.delta);
            },
            [](const CorruptBits& f) {
                return "flip bits " + std::to_string(f.xor_mask) + " of byte " + std::to_string(f.byte_index) +
                       " on VL " + std::to_string(f.vl) + " #" + std::to_string(f.nth);
            },
            [](const RogueVl& f) {
                return "rogue VL " + std::to_string(f.vl_id) + " x" + std::to_string(f.times.size());
            },
            [](const ScheduleShift& f) {
                return "shift partition " + std::to_string(f.partition) + " by " + std::to_string(f.delta_us) + " us";
            },
        },
        fault);
}

std::vector<a664::FrameEvent> apply_scenario(std::vector<a664::FrameEvent> events, const FaultScenario& scenario)
{
    for (const auto& fault : scenario.faults)
        std::visit([&](const auto& f) { apply(events, f); }, fault);
    return events;
}

a653::MajorFrame apply_schedule_shifts(a653::MajorFrame mf, const FaultScenario& scenario)
{
    const auto maf = static_cast<std::int64_t>(mf.maf_duration);
    for (const auto& fault : scenario.faults) {
        const auto* shift = std::get_if<ScheduleShift>(&fault);
        if (!shift)
            continue;
        bool found = false;
        for (auto& w : mf.windows) {
            if (w.partition != shift->partition)
                continue;
            found = true;
            if (maf > 0)
                w.offset = static_cast<Microseconds>(
                    ((static_cast<std::int64_t>(w.offset) + shift->delta_us) % maf + maf) % maf);
        }
        if (!found)
            throw TargetNotFound("schedule_shift: partition " + std::to_string(shift->partition) + " has no window");
    }
    std::stable_sort(mf.windows.begin(), mf.windows.end(),
                     [](const auto& a, const auto& b) { return a.offset < b.offset; });
    return mf;
}

} // namespace ima::faults

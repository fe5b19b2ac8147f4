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

#include "ima/a653/partition.hpp"

#include <algorithm>

namespace ima::a653 {

namespace {

std::string pname(PartitionId id) { return "P" + std::to_string(id); }

} // namespace

std::vector<ScheduleViolation> validate_major_frame(const MajorFrame& mf, std::span<const PartitionId> declared)
{
    std::vector<ScheduleViolation> out;
    if (mf.maf_duration == 0)
        out.push_back({ViolationKind::ZeroMaf, 0, 0, "major frame duration must be positive"});

    for (std::size_t i = 0; i < mf.windows.size(); ++i) {
        const auto& w = mf.windows[i];
        if (w.duration == 0)
            out.push_back({ViolationKind::ZeroDuration, w.partition, 0, pname(w.partition) + " window has zero duration"});
        if (w.end() > mf.maf_duration)
            out.push_back({ViolationKind::OutOfRange, w.partition, 0,
                           pname(w.partition) + " window [" + std::to_string(w.offset) + ", " +
                               std::to_string(w.end()) + ") exceeds MAF " + std::to_string(mf.maf_duration)});
        if (i > 0 && w.offset < mf.windows[i - 1].offset)
            out.push_back({ViolationKind::Unsorted, w.partition, mf.windows[i - 1].partition,
                           "windows are not sorted by offset"});
    }

    for (std::size_t i = 0; i < mf.windows.size(); ++i) {
        for (std::size_t j = i + 1; j < mf.windows.size(); ++j) {
            const auto& a = mf.windows[i];
            const auto& b = mf.windows[j];
            if (a.duration == 0 || b.duration == 0)
                continue;
            if (a.offset < b.end() && b.offset < a.end())
                out.push_back({ViolationKind::Overlap, a.partition, b.partition,
                               "windows of " + pname(a.partition) + " and " + pname(b.partition) + " overlap"});
        }
    }

    for (auto id : declared) {
        const bool present = std::any_of(mf.windows.begin(), mf.windows.end(),
                                         [id](const PartitionWindow& w) { return w.partition == id; });
        if (!present)
            out.push_back({ViolationKind::PartitionAbsent, id, 0, pname(id) + " has no window in the major frame"});
    }
    return out;
}

std::optional<PartitionId> active_partition(const MajorFrame& mf, Microseconds t)
{
    if (mf.maf_duration == 0)
        return std::nullopt;
    const auto r = t % mf.maf_duration;
    for (const auto& w : mf.windows) {
        if (w.offset <= r && r < w.end())
            return w.partition;
    }
    return std::nullopt;
}

} // namespace ima::a653

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
 * @file monitor.hpp
 * @brief Switch-resident frame analyser.
 *
 * Frames are checked in arrival order against the expected traffic model:
 * temporal consistency first, then sequence continuity, then the variation
 * laws. Expectations left unmatched when a MAF closes become MissingData.
 */
#pragma once

#include "ima/a664/frame_trace.hpp"
#include "ima/monitor/anomaly.hpp"
#include "ima/monitor/checks.hpp"
#include "ima/monitor/traffic_model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ima::monitor {

class Monitor {
public:
    Monitor(ExpectedTrafficModel model, std::vector<VariationLaw> laws);

    /// Closes every MAF that ended at or before the arrival, then checks
    /// the frame. Events must come in nondecreasing arrival order.
    std::vector<Anomaly> ingest(const a664::FrameEvent& event);

    /// Closes the current MAF.
    std::vector<Anomaly> flush_maf();

    /// Closes every MAF whose end is at or before @p t.
    std::vector<Anomaly> flush_until(Microseconds t);

    std::uint64_t current_maf() const { return maf_index_; }
    const ExpectedTrafficModel& model() const { return model_; }

private:
    struct VlState {
        std::vector<bool> consumed;
        std::size_t arrivals = 0; ///< this MAF
        std::uint8_t last_seq = 0;
    };

    void check_temporal(std::size_t vl_index, Microseconds arrival, std::vector<Anomaly>& out);
    void check_laws(const a664::Frame& frame, std::vector<Anomaly>& out);
    Microseconds maf_start() const { return maf_index_ * model_.maf_duration; }

    ExpectedTrafficModel model_;
    std::vector<VlState> vl_state_; ///< parallel to model_.vls
    std::map<std::uint8_t, VariationLaw> laws_;
    std::map<std::uint8_t, SampleWindow> windows_;
    std::set<std::uint8_t> lawless_apps_;
    std::optional<std::size_t> max_order_position_;
    std::uint64_t maf_index_ = 0;
};

} // namespace ima::monitor

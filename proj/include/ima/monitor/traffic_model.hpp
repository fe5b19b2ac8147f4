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
 * @file traffic_model.hpp
 * @brief Expected per-VL arrivals, predicted by re-simulating the transmitter.
 *
 * The transmitter is described as a CFSM netlist and run on the static
 * kernel: a clock module raises one start strobe per partition window, one
 * shaper module per VL tracks its backlog against the BAG, and a switch
 * module gathers the emit strobes into a tap mask.
 */
#pragma once

#include "ima/a653/partition.hpp"
#include "ima/a664/virtual_link.hpp"
#include "ima/kernel/netlist.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ima::monitor {

using a653::Microseconds;
using a664::VlId;

/// All times are offsets from the start of the MAF.
struct ExpectedEmission {
    Microseconds emit_offset = 0;
    Microseconds earliest = 0; ///< emit + prop_delay
    Microseconds latest = 0;   ///< emit + prop_delay + max_jitter
    std::size_t order_position = 0; ///< rank among all emissions of the MAF

    friend bool operator==(const ExpectedEmission&, const ExpectedEmission&) = default;
};

struct VlExpectation {
    VlId vl_id = 0;
    std::vector<ExpectedEmission> emissions;

    std::size_t frames_per_maf() const { return emissions.size(); }

    friend bool operator==(const VlExpectation&, const VlExpectation&) = default;
};

struct ExpectedTrafficModel {
    Microseconds maf_duration = 0;
    Microseconds clock_period = 0;
    std::vector<VlExpectation> vls; ///< ascending vl_id
    std::vector<VlId> order;        ///< VL of each expected emission, MAF order

    const VlExpectation* find(VlId vl) const;
    bool empty() const { return order.empty(); }

    friend bool operator==(const ExpectedTrafficModel&, const ExpectedTrafficModel&) = default;
};

class InfeasibleConfig : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest tick that lands on every window edge and every BAG boundary.
Microseconds transmitter_clock_period(const a653::MajorFrame& mf, std::span<const a664::VirtualLinkConfig> vls);

/// The transmitter as a netlist, clocked at @p clock_period.
kernel::Netlist transmitter_netlist(const a653::MajorFrame& mf, std::span<const a664::VirtualLinkConfig> vls,
                                    Microseconds clock_period);

/// Throws InfeasibleConfig when a VL cannot drain its window's sample
/// before the window closes, the pattern is not MAF-periodic, or a latest
/// arrival spills past the end of the MAF.
ExpectedTrafficModel build_expected_model(const a653::MajorFrame& mf,
                                          std::span<const a664::VirtualLinkConfig> vls,
                                          Microseconds prop_delay);

} // namespace ima::monitor

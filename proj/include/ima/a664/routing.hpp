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

#include "ima/a664/codec.hpp"
#include "ima/a664/virtual_link.hpp"

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ima::a664 {

class RoutingTable {
public:
    RoutingTable() = default;
    explicit RoutingTable(std::span<const VirtualLinkConfig> vls);

    void add(VlId vl, std::vector<std::string> destinations);
    const std::vector<std::string>* find(VlId vl) const;

private:
    std::map<VlId, std::vector<std::string>> routes_;
};

struct UnknownVl {
    VlId vl_id;
};

using RouteResult = std::variant<std::vector<std::string>, UnknownVl>;

/// Destinations of the frame's VL. The switch additionally copies every
/// frame, routed or not, to the monitor tap.
RouteResult route(const Frame& frame, const RoutingTable& table);

} // namespace ima::a664

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

#include "ima/a664/routing.hpp"

namespace ima::a664 {

RoutingTable::RoutingTable(std::span<const VirtualLinkConfig> vls)
{
    for (const auto& vl : vls)
        add(vl.vl_id, vl.destinations);
}

void RoutingTable::add(VlId vl, std::vector<std::string> destinations)
{
    routes_[vl] = std::move(destinations);
}

const std::vector<std::string>* RoutingTable::find(VlId vl) const
{
    auto it = routes_.find(vl);
    return it == routes_.end() ? nullptr : &it->second;
}

RouteResult route(const Frame& frame, const RoutingTable& table)
{
    if (const auto* destinations = table.find(frame.vl_id))
        return *destinations;
    return UnknownVl{frame.vl_id};
}

} // namespace ima::a664

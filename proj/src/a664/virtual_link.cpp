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

#include "ima/a664/virtual_link.hpp"

#include <algorithm>

namespace ima::a664 {

bool is_allowed_bag(std::uint32_t bag_ms)
{
    return std::find(kAllowedBagsMs.begin(), kAllowedBagsMs.end(), bag_ms) != kAllowedBagsMs.end();
}

std::vector<std::string> validate_virtual_link(const VirtualLinkConfig& vl)
{
    std::vector<std::string> errors;
    const auto who = "VL " + std::to_string(vl.vl_id) + ": ";
    if (!is_allowed_bag(vl.bag_ms))
        errors.push_back(who + "bag must be one of 1,2,4,8,16,32,64,128");
    if (vl.max_frame_size < kMinFrameSize || vl.max_frame_size > kMaxFrameSize)
        errors.push_back(who + "max_frame_size must be within [64, 1518]");
    if (vl.destinations.empty())
        errors.push_back(who + "destinations must not be empty");
    return errors;
}

} // namespace ima::a664

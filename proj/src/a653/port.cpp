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

#include "ima/a653/port.hpp"

namespace ima::a653 {

Port653 Port653::queuing(std::string name, std::size_t capacity)
{
    return Port653(PortKind::Queuing, std::move(name), capacity);
}

Port653 Port653::sampling(std::string name)
{
    return Port653(PortKind::Sampling, std::move(name), 1);
}

SendStatus Port653::send(const AppSample& message)
{
    if (kind_ == PortKind::Sampling) {
        messages_.clear();
        messages_.push_back(message);
        return SendStatus::Ok;
    }
    if (messages_.size() >= capacity_)
        return SendStatus::QueueFull;
    messages_.push_back(message);
    return SendStatus::Ok;
}

std::optional<AppSample> Port653::receive()
{
    if (messages_.empty())
        return std::nullopt;
    AppSample front = messages_.front();
    if (kind_ == PortKind::Queuing)
        messages_.pop_front();
    return front;
}

} // namespace ima::a653

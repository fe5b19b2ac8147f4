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

#include "ima/a653/sample.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <string>

namespace ima::a653 {

enum class PortKind { Queuing, Sampling };

enum class SendStatus { Ok, QueueFull };

inline constexpr std::size_t kDefaultQueueCapacity = 8;

/**
 * Inter-partition communication port.
 *
 * Queuing ports deliver in FIFO order and refuse messages beyond capacity.
 * Sampling ports hold only the latest message; reads do not consume it.
 */
class Port653 {
public:
    static Port653 queuing(std::string name, std::size_t capacity = kDefaultQueueCapacity);
    static Port653 sampling(std::string name);

    [[nodiscard]] SendStatus send(const AppSample& message);
    std::optional<AppSample> receive();

    PortKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return messages_.size(); }

private:
    Port653(PortKind kind, std::string name, std::size_t capacity)
        : kind_(kind), name_(std::move(name)), capacity_(capacity)
    {
    }

    PortKind kind_;
    std::string name_;
    std::size_t capacity_;
    std::deque<AppSample> messages_;
};

} // namespace ima::a653

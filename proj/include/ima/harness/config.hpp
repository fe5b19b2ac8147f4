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
 * @file config.hpp
 * @brief System configuration: schedule, partitions, VLs, laws, scenario.
 */
#pragma once

#include "ima/a653/generator.hpp"
#include "ima/a653/partition.hpp"
#include "ima/a653/port.hpp"
#include "ima/a664/virtual_link.hpp"
#include "ima/faults/faults.hpp"
#include "ima/monitor/checks.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ima::harness {

using a653::Microseconds;

struct PartitionConfig {
    a653::PartitionId id = 0;
    a653::AppId app = a653::AppId::Gps;
    a653::PortKind port_kind = a653::PortKind::Queuing;
    std::size_t port_capacity = a653::kDefaultQueueCapacity;
    a653::GeneratorParams generator;
};

struct SystemConfig {
    a653::MajorFrame major_frame;
    std::vector<PartitionConfig> partitions;
    std::vector<a664::VirtualLinkConfig> virtual_links;
    std::vector<monitor::VariationLaw> laws;
    Microseconds prop_delay_us = 0;
    std::uint64_t run_mafs = 0;
    std::optional<faults::FaultScenario> scenario;
};

enum class ConfigErrorKind { Parse, Validation, Io };

class ConfigError : public std::runtime_error {
public:
    ConfigError(ConfigErrorKind kind, std::vector<std::string> errors);

    ConfigErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    ConfigErrorKind kind_;
    std::vector<std::string> errors_;
};

/// Parses and cross-validates. Throws ConfigError listing every problem found.
SystemConfig load_config(std::string_view json_text);
SystemConfig load_config_file(const std::filesystem::path& path);

/// A scenario document: either the scenario object itself or an object
/// holding it under "scenario".
faults::FaultScenario load_scenario(std::string_view json_text);
faults::FaultScenario load_scenario_file(const std::filesystem::path& path);

/// Cross-reference and range checks on an already-parsed config.
std::vector<std::string> validate_config(const SystemConfig& config);

/// Canonical JSON of the effective config (stable key order).
std::string canonical_json(const SystemConfig& config);

/// FNV-1a 64 of canonical_json(), as 16 hex digits.
std::string config_digest(const SystemConfig& config);

} // namespace ima::harness

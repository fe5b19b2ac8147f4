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

#include "ima/kernel/netlist.hpp"

#include <cstddef>
#include <cstdint>

namespace ima::kernel {

struct RandomNetlistLimits {
    std::size_t max_modules = 8;
    std::size_t max_processes = 4; ///< per module
};

/// Seeded random design whose Mealy dependency graph is acyclic. Behaviors
/// are pure mixing functions of their declared reads.
Netlist make_random_netlist(std::uint64_t seed, RandomNetlistLimits limits = {});

/// Seeded random design containing a ring of Mealy incrementers, so it has
/// a combinational cycle that never settles.
Netlist make_cyclic_netlist(std::uint64_t seed, RandomNetlistLimits limits = {});

} // namespace ima::kernel

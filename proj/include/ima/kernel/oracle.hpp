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
 * @file oracle.hpp
 * @brief Event-driven delta-cycle reference simulator.
 *
 * Evaluates every process whose sensitivity changed, applies the buffered
 * writes, and repeats until nothing is triggered before advancing time. It
 * computes no static order and exists to cross-check run().
 */
#pragma once

#include "ima/kernel/netlist.hpp"
#include "ima/kernel/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace ima::kernel {

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(std::uint64_t cycle, std::size_t deltas);

    std::uint64_t cycle() const noexcept { return cycle_; }
    std::size_t deltas() const noexcept { return deltas_; }

private:
    std::uint64_t cycle_;
    std::size_t deltas_;
};

struct OracleOptions {
    std::size_t delta_bound = 1000;
    bool checked = true;
};

/// Same trace format and stamping as run(). Throws NonConvergence when a
/// time step needs more than options.delta_bound delta cycles, and
/// ElaborationError for structural defects other than combinational loops.
SignalTrace oracle_run(const Netlist& netlist, std::uint64_t n_cycles, OracleOptions options = {});

} // namespace ima::kernel

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

#include "ima/kernel/random_netlist.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

namespace ima::kernel {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(unsigned percent) { return below(100) < percent; }
    unsigned width() { return chance(25) ? 64 : static_cast<unsigned>(between(1, 63)); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// out[k] = mix(seed_k ^ sum_i rotl(in[i], rot_i)); pure in its reads.
Behavior mixing_behavior(Rng& rng, std::size_t reads)
{
    std::vector<int> rotations(reads);
    for (auto& r : rotations)
        r = static_cast<int>(rng.below(64));
    const auto salt = rng.next();
    return [rotations, salt](ProcessContext& ctx) {
        std::uint64_t acc = salt;
        for (std::size_t i = 0; i < ctx.read_count(); ++i)
            acc += std::rotl(ctx.read(i), rotations[i]);
        for (std::size_t k = 0; k < ctx.write_count(); ++k)
            ctx.write(k, mix(acc + k));
    };
}

struct OutputInfo {
    std::size_t module;
    std::string name;
    unsigned width;
    ProcessKind driver;
};

template <typename T>
std::vector<T> sample(Rng& rng, const std::vector<T>& pool, std::size_t max_count)
{
    std::vector<T> out;
    if (pool.empty())
        return out;
    const auto count = rng.between(0, std::min(max_count, pool.size()));
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
        out.push_back(pool[idx[i]]);
    }
    return out;
}

void add_random_modules(Netlist& netlist, Rng& rng, const RandomNetlistLimits& limits, std::size_t count,
                        const std::string& prefix)
{
    const auto base = netlist.modules.size();
    std::vector<OutputInfo> outputs;
    for (const auto& module : netlist.modules) {
        // Pre-existing modules only expose Moore-driven outputs to newcomers.
        for (const auto& proc : module.processes) {
            if (proc.kind == ProcessKind::MooreGeneration) {
                for (const auto& w : proc.writes) {
                    auto it = std::find_if(module.outputs.begin(), module.outputs.end(),
                                           [&](const PortDecl& p) { return p.name == w; });
                    outputs.push_back({SIZE_MAX, qualified(module.id, w), it->width, ProcessKind::MooreGeneration});
                }
            }
        }
    }

    // Pass 1: registers, processes (kinds and writes), outputs.
    for (std::size_t m = 0; m < count; ++m) {
        ModuleSpec module;
        module.id = prefix + std::to_string(base + m);
        const auto n_regs = rng.between(1, 3);
        for (std::size_t r = 0; r < n_regs; ++r)
            module.registers.push_back({"r" + std::to_string(r), rng.width(), rng.next()});

        std::vector<std::string> undriven;
        for (const auto& reg : module.registers)
            undriven.push_back(reg.name);
        const auto n_procs = rng.between(1, std::max<std::size_t>(1, limits.max_processes));
        for (std::size_t p = 0; p < n_procs; ++p) {
            ProcessSpec proc;
            proc.name = "p" + std::to_string(p);
            const auto roll = rng.below(3);
            proc.kind = roll == 0 ? ProcessKind::Transition
                                  : (roll == 1 ? ProcessKind::MooreGeneration : ProcessKind::MealyGeneration);
            if (p == 0)
                proc.kind = ProcessKind::Transition;
            if (proc.kind == ProcessKind::Transition && undriven.empty())
                proc.kind = ProcessKind::MooreGeneration;
            if (proc.kind == ProcessKind::Transition) {
                const auto n = rng.between(1, undriven.size());
                for (std::size_t k = 0; k < n; ++k) {
                    proc.writes.push_back(undriven.back());
                    undriven.pop_back();
                }
            } else {
                const auto n = rng.between(1, 2);
                for (std::size_t k = 0; k < n; ++k) {
                    PortDecl out{"o" + std::to_string(module.outputs.size()), rng.width()};
                    proc.writes.push_back(out.name);
                    outputs.push_back({base + m, qualified(module.id, out.name), out.width, proc.kind});
                    module.outputs.push_back(out);
                }
            }
            module.processes.push_back(std::move(proc));
        }
        netlist.modules.push_back(std::move(module));
    }

    // Pass 2: inputs and bindings. An input may feed a Mealy process only if
    // its source is Moore-driven or Mealy-driven by an earlier module; that
    // keeps the Mealy graph acyclic.
    for (std::size_t m = 0; m < count; ++m) {
        auto& module = netlist.modules[base + m];
        std::vector<std::string> comb_safe;
        std::vector<std::string> any_input;
        std::vector<std::size_t> upstream_mealy;
        for (std::size_t o = 0; o < outputs.size(); ++o) {
            if (outputs[o].driver == ProcessKind::MealyGeneration && outputs[o].module < base + m)
                upstream_mealy.push_back(o);
        }
        const auto n_inputs = outputs.empty() ? 0 : rng.between(1, 3);
        for (std::size_t i = 0; i < n_inputs; ++i) {
            // Favor upstream Mealy outputs so combinational chains are common.
            const auto pick = !upstream_mealy.empty() && rng.chance(50)
                                  ? upstream_mealy[rng.below(upstream_mealy.size())]
                                  : rng.below(outputs.size());
            const auto& src = outputs[pick];
            PortDecl in{"i" + std::to_string(i), src.width};
            netlist.bindings.push_back({src.name, qualified(module.id, in.name)});
            module.inputs.push_back(in);
            any_input.push_back(in.name);
            const bool safe = src.driver == ProcessKind::MooreGeneration ||
                              (src.module != SIZE_MAX && src.module < base + m);
            if (safe)
                comb_safe.push_back(in.name);
        }
        std::vector<std::string> regs;
        for (const auto& reg : module.registers)
            regs.push_back(reg.name);

        for (auto& proc : module.processes) {
            switch (proc.kind) {
            case ProcessKind::Transition: {
                auto pool = regs;
                pool.insert(pool.end(), any_input.begin(), any_input.end());
                proc.reads = sample(rng, pool, 3);
                break;
            }
            case ProcessKind::MooreGeneration: proc.reads = sample(rng, regs, 2); break;
            case ProcessKind::MealyGeneration: {
                auto extra = sample(rng, regs, 1);
                proc.reads = sample(rng, comb_safe, 3);
                if (proc.reads.empty() && !comb_safe.empty())
                    proc.reads.push_back(comb_safe[rng.below(comb_safe.size())]);
                proc.reads.insert(proc.reads.end(), extra.begin(), extra.end());
                break;
            }
            }
            proc.behavior = mixing_behavior(rng, proc.reads.size());
        }
    }
}

} // namespace

Netlist make_random_netlist(std::uint64_t seed, RandomNetlistLimits limits)
{
    Rng rng(seed);
    Netlist netlist;
    netlist.clock_period_us = rng.between(1, 1000);
    add_random_modules(netlist, rng, limits, rng.between(2, std::max<std::size_t>(2, limits.max_modules)), "m");
    return netlist;
}

Netlist make_cyclic_netlist(std::uint64_t seed, RandomNetlistLimits limits)
{
    Rng rng(seed ^ 0x5EEDC0DEULL);
    Netlist netlist;
    netlist.clock_period_us = 1;

    // Ring of 1..4 modules; each Mealy stage increments its input.
    const auto ring = rng.between(1, std::min<std::size_t>(4, std::max<std::size_t>(1, limits.max_modules)));
    const auto width = rng.width();
    for (std::size_t k = 0; k < ring; ++k) {
        ModuleSpec module;
        module.id = "ring" + std::to_string(k);
        module.inputs.push_back({"in", width});
        module.outputs.push_back({"out", width});
        module.processes.push_back({"inc", ProcessKind::MealyGeneration, {"in"}, {"out"},
                                    [](ProcessContext& ctx) { ctx.write(0, ctx.read(0) + 1); }});
        netlist.modules.push_back(std::move(module));
    }
    for (std::size_t k = 0; k < ring; ++k)
        netlist.bindings.push_back({"ring" + std::to_string(k) + ".out", "ring" + std::to_string((k + 1) % ring) + ".in"});

    if (limits.max_modules > ring) {
        const auto extra = rng.between(0, limits.max_modules - ring);
        if (extra > 0)
            add_random_modules(netlist, rng, limits, extra, "m");
    }
    return netlist;
}

} // namespace ima::kernel

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

#include "ima/harness/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ima::harness {

using nlohmann::json;

namespace {

std::string join_path(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

// Typed field access that records problems instead of stopping at the first.
class Reader {
public:
    std::vector<std::string> errors;

    const json* field(const json& obj, std::string_view key, const std::string& path, bool required)
    {
        if (!obj.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required)
                fail(join_path(path, key), "missing");
            return nullptr;
        }
        return &*it;
    }

    template <typename T>
    T unsigned_int(const json& obj, std::string_view key, const std::string& path, std::optional<T> fallback = {})
    {
        const json* v = field(obj, key, path, !fallback);
        if (!v)
            return fallback.value_or(T{});
        if (!v->is_number_unsigned() || v->get<std::uint64_t>() > std::numeric_limits<T>::max()) {
            fail(join_path(path, key), "must be an integer in [0, " +
                                           std::to_string(std::uint64_t{std::numeric_limits<T>::max()}) + "]");
            return fallback.value_or(T{});
        }
        return static_cast<T>(v->get<std::uint64_t>());
    }

    std::int64_t signed_int(const json& obj, std::string_view key, const std::string& path)
    {
        const json* v = field(obj, key, path, true);
        if (!v)
            return 0;
        if (!v->is_number_integer()) {
            fail(join_path(path, key), "must be an integer");
            return 0;
        }
        return v->get<std::int64_t>();
    }

    double number(const json& obj, std::string_view key, const std::string& path, std::optional<double> fallback = {})
    {
        const json* v = field(obj, key, path, !fallback);
        if (!v)
            return fallback.value_or(0.0);
        if (!v->is_number()) {
            fail(join_path(path, key), "must be a number");
            return 0.0;
        }
        return v->get<double>();
    }

    bool boolean(const json& obj, std::string_view key, const std::string& path, bool fallback)
    {
        const json* v = field(obj, key, path, false);
        if (!v)
            return fallback;
        if (!v->is_boolean()) {
            fail(join_path(path, key), "must be true or false");
            return fallback;
        }
        return v->get<bool>();
    }

    std::string string(const json& obj, std::string_view key, const std::string& path,
                       std::optional<std::string> fallback = {})
    {
        const json* v = field(obj, key, path, !fallback);
        if (!v)
            return fallback.value_or("");
        if (!v->is_string()) {
            fail(join_path(path, key), "must be a string");
            return fallback.value_or("");
        }
        return v->get<std::string>();
    }

    const json& array(const json& obj, std::string_view key, const std::string& path, bool required = true)
    {
        static const json empty = json::array();
        const json* v = field(obj, key, path, required);
        if (!v)
            return empty;
        if (!v->is_array()) {
            fail(join_path(path, key), "must be an array");
            return empty;
        }
        return *v;
    }

    void fail(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }
};

std::optional<a653::AppId> parse_app(Reader& r, const json& obj, const std::string& path)
{
    const json* v = r.field(obj, "app", path, true);
    if (!v)
        return std::nullopt;
    if (v->is_string()) {
        const auto name = v->get<std::string>();
        for (std::uint8_t id = 1; id <= 3; ++id)
            if (a653::app_name(id) == name)
                return static_cast<a653::AppId>(id);
    } else if (v->is_number_unsigned() && a653::is_known_app(static_cast<std::uint8_t>(v->get<std::uint64_t>())) &&
               v->get<std::uint64_t>() <= 255) {
        return static_cast<a653::AppId>(v->get<std::uint64_t>());
    }
    r.fail(join_path(path, "app"), "unknown application (expected gps, speed, angle or 1..3)");
    return std::nullopt;
}

faults::FaultSpec parse_fault(Reader& r, const json& f, const std::string& path)
{
    const auto type = r.string(f, "type", path);
    if (type == "drop")
        return faults::Drop{r.unsigned_int<a664::VlId>(f, "vl", path), r.unsigned_int<std::size_t>(f, "nth", path)};
    if (type == "delay")
        return faults::Delay{r.unsigned_int<a664::VlId>(f, "vl", path), r.unsigned_int<std::size_t>(f, "nth", path),
                             r.signed_int(f, "delta_us", path)};
    if (type == "duplicate")
        return faults::Duplicate{r.unsigned_int<a664::VlId>(f, "vl", path),
                                 r.unsigned_int<std::size_t>(f, "nth", path)};
    if (type == "corrupt_value")
        return faults::CorruptValue{r.unsigned_int<std::uint8_t>(f, "app", path),
                                    r.unsigned_int<std::size_t>(f, "nth_sample", path),
                                    r.unsigned_int<std::size_t>(f, "value_index", path),
                                    r.number(f, "delta", path)};
    if (type == "corrupt_bits")
        return faults::CorruptBits{r.unsigned_int<a664::VlId>(f, "vl", path),
                                   r.unsigned_int<std::size_t>(f, "nth", path),
                                   r.unsigned_int<std::size_t>(f, "byte_index", path),
                                   r.unsigned_int<std::uint8_t>(f, "xor_mask", path)};
    if (type == "rogue_vl") {
        faults::RogueVl rogue{r.unsigned_int<a664::VlId>(f, "vl_id", path), {}};
        const auto& times = r.array(f, "times", path);
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i].is_number_unsigned())
                rogue.times.push_back(times[i].get<Microseconds>());
            else
                r.fail(index_path(join_path(path, "times"), i), "must be a non-negative integer");
        }
        return rogue;
    }
    if (type == "schedule_shift")
        return faults::ScheduleShift{r.unsigned_int<a653::PartitionId>(f, "partition", path),
                                     r.signed_int(f, "delta_us", path)};
    if (!type.empty())
        r.fail(join_path(path, "type"), "unknown fault type '" + type + "'");
    return faults::Drop{};
}

faults::FaultScenario parse_scenario(Reader& r, const json& s, const std::string& path)
{
    faults::FaultScenario scenario;
    scenario.name = r.string(s, "name", path, std::string("unnamed"));
    scenario.seed = r.unsigned_int<std::uint64_t>(s, "seed", path, std::uint64_t{0});
    const auto& list = r.array(s, "faults", path);
    for (std::size_t i = 0; i < list.size(); ++i)
        scenario.faults.push_back(parse_fault(r, list[i], index_path(join_path(path, "faults"), i)));
    return scenario;
}

SystemConfig parse_config(Reader& r, const json& doc)
{
    SystemConfig cfg;
    if (const json* mf = r.field(doc, "major_frame", "", true)) {
        cfg.major_frame.maf_duration = r.unsigned_int<Microseconds>(*mf, "maf_us", "major_frame");
        const auto& windows = r.array(*mf, "windows", "major_frame");
        for (std::size_t i = 0; i < windows.size(); ++i) {
            const auto p = index_path("major_frame.windows", i);
            cfg.major_frame.windows.push_back({r.unsigned_int<a653::PartitionId>(windows[i], "partition", p),
                                               r.unsigned_int<Microseconds>(windows[i], "offset_us", p),
                                               r.unsigned_int<Microseconds>(windows[i], "duration_us", p)});
        }
    }

    const auto& partitions = r.array(doc, "partitions", "");
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto p = index_path("partitions", i);
        const auto& j = partitions[i];
        PartitionConfig part;
        part.id = r.unsigned_int<a653::PartitionId>(j, "id", p);
        part.app = parse_app(r, j, p).value_or(a653::AppId::Gps);
        if (const json* port = r.field(j, "port", p, false)) {
            const auto pp = join_path(p, "port");
            const auto kind = r.string(*port, "kind", pp, std::string("queuing"));
            if (kind == "sampling")
                part.port_kind = a653::PortKind::Sampling;
            else if (kind != "queuing")
                r.fail(join_path(pp, "kind"), "must be queuing or sampling");
            part.port_capacity = r.unsigned_int<std::size_t>(*port, "capacity", pp, a653::kDefaultQueueCapacity);
        }
        if (const json* g = r.field(j, "generator", p, false)) {
            const auto gp = join_path(p, "generator");
            part.generator = {r.number(*g, "lat", gp, 0.0),   r.number(*g, "lon", gp, 0.0),
                              r.number(*g, "speed", gp, 0.0), r.number(*g, "heading", gp, 0.0),
                              r.number(*g, "accel", gp, 0.0), r.number(*g, "turn_rate", gp, 0.0)};
        }
        cfg.partitions.push_back(part);
    }

    const auto& vls = r.array(doc, "virtual_links", "");
    for (std::size_t i = 0; i < vls.size(); ++i) {
        const auto p = index_path("virtual_links", i);
        const auto& j = vls[i];
        a664::VirtualLinkConfig vl;
        vl.vl_id = r.unsigned_int<a664::VlId>(j, "vl_id", p);
        vl.bag_ms = r.unsigned_int<std::uint32_t>(j, "bag_ms", p);
        vl.max_frame_size =
            r.unsigned_int<std::uint32_t>(j, "max_frame_size", p, static_cast<std::uint32_t>(a664::kMaxFrameSize));
        vl.max_jitter_us = r.unsigned_int<Microseconds>(j, "max_jitter_us", p, Microseconds{0});
        vl.source_partition = r.unsigned_int<a653::PartitionId>(j, "source_partition", p);
        const auto& dest = r.array(j, "destinations", p);
        for (std::size_t d = 0; d < dest.size(); ++d) {
            if (dest[d].is_string())
                vl.destinations.push_back(dest[d].get<std::string>());
            else
                r.fail(index_path(join_path(p, "destinations"), d), "must be a string");
        }
        cfg.virtual_links.push_back(std::move(vl));
    }

    const auto& laws = r.array(doc, "laws", "", false);
    for (std::size_t i = 0; i < laws.size(); ++i) {
        const auto p = index_path("laws", i);
        const auto& j = laws[i];
        monitor::VariationLaw law;
        law.app_id = static_cast<std::uint8_t>(parse_app(r, j, p).value_or(a653::AppId::Gps));
        law.window_n = r.unsigned_int<std::size_t>(j, "window_n", p, std::size_t{8});
        law.epsilon = r.number(j, "epsilon", p, 1e-9);
        const auto& values = r.array(j, "values", p);
        for (std::size_t k = 0; k < values.size(); ++k) {
            const auto vp = index_path(join_path(p, "values"), k);
            law.values.push_back({r.number(values[k], "max_rate", vp), r.number(values[k], "min", vp),
                                  r.number(values[k], "max", vp), r.boolean(values[k], "angular", vp, false)});
        }
        cfg.laws.push_back(std::move(law));
    }

    cfg.prop_delay_us = r.unsigned_int<Microseconds>(doc, "prop_delay_us", "");
    cfg.run_mafs = r.unsigned_int<std::uint64_t>(doc, "run_mafs", "", std::uint64_t{100});
    if (const json* s = r.field(doc, "scenario", "", false); s && !s->is_null())
        cfg.scenario = parse_scenario(r, *s, "scenario");
    return cfg;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(ConfigErrorKind::Parse, {e.what()});
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(ConfigErrorKind::Io, {path.string() + ": cannot open"});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

json fault_json(const faults::FaultSpec& fault)
{
    return std::visit(
        Overloaded{
            [](const faults::Drop& f) { return json{{"type", "drop"}, {"vl", f.vl}, {"nth", f.nth}}; },
            [](const faults::Delay& f) {
                return json{{"type", "delay"}, {"vl", f.vl}, {"nth", f.nth}, {"delta_us", f.delta_us}};
            },
            [](const faults::Duplicate& f) { return json{{"type", "duplicate"}, {"vl", f.vl}, {"nth", f.nth}}; },
            [](const faults::CorruptValue& f) {
                return json{{"type", "corrupt_value"}, {"app", f.app},         {"nth_sample", f.nth_sample},
                            {"value_index", f.value_index}, {"delta", f.delta}};
            },
            [](const faults::CorruptBits& f) {
                return json{{"type", "corrupt_bits"}, {"vl", f.vl},             {"nth", f.nth},
                            {"byte_index", f.byte_index}, {"xor_mask", f.xor_mask}};
            },
            [](const faults::RogueVl& f) { return json{{"type", "rogue_vl"}, {"vl_id", f.vl_id}, {"times", f.times}}; },
            [](const faults::ScheduleShift& f) {
                return json{{"type", "schedule_shift"}, {"partition", f.partition}, {"delta_us", f.delta_us}};
            },
        },
        fault);
}

} // namespace

ConfigError::ConfigError(ConfigErrorKind kind, std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string text = kind == ConfigErrorKind::Parse ? "config parse error" : "invalid config";
          for (const auto& e : errors)
              text += "\n  " + e;
          return text;
      }()),
      kind_(kind), errors_(std::move(errors))
{
}

std::vector<std::string> validate_config(const SystemConfig& cfg)
{
    std::vector<std::string> errors;

    std::set<a653::PartitionId> partition_ids;
    std::set<std::uint8_t> apps;
    for (const auto& p : cfg.partitions) {
        const auto who = "partition " + std::to_string(p.id);
        if (!partition_ids.insert(p.id).second)
            errors.push_back(who + ": duplicate partition id");
        apps.insert(static_cast<std::uint8_t>(p.app));
        if (p.port_kind == a653::PortKind::Queuing && p.port_capacity == 0)
            errors.push_back(who + ": queuing port capacity must be at least 1");
    }

    const std::vector<a653::PartitionId> declared(partition_ids.begin(), partition_ids.end());
    for (const auto& v : a653::validate_major_frame(cfg.major_frame, declared))
        errors.push_back("major_frame: " + v.message);
    for (const auto& w : cfg.major_frame.windows)
        if (!partition_ids.contains(w.partition))
            errors.push_back("major_frame: window for unknown partition " + std::to_string(w.partition));

    std::set<a664::VlId> vl_ids;
    std::map<a653::PartitionId, int> vls_per_partition;
    for (const auto& vl : cfg.virtual_links) {
        for (auto& e : a664::validate_virtual_link(vl))
            errors.push_back(std::move(e));
        if (!vl_ids.insert(vl.vl_id).second)
            errors.push_back("VL " + std::to_string(vl.vl_id) + ": duplicate vl_id");
        if (!partition_ids.contains(vl.source_partition))
            errors.push_back("VL " + std::to_string(vl.vl_id) + ": unknown partition " +
                             std::to_string(vl.source_partition));
        ++vls_per_partition[vl.source_partition];
    }
    for (auto id : partition_ids)
        if (vls_per_partition[id] != 1)
            errors.push_back("partition " + std::to_string(id) + ": must source exactly one VL, found " +
                             std::to_string(vls_per_partition[id]));

    std::set<std::uint8_t> law_apps;
    for (const auto& law : cfg.laws) {
        const auto who = "law for " + std::string(a653::app_name(law.app_id));
        if (!law_apps.insert(law.app_id).second)
            errors.push_back(who + ": duplicate law");
        if (!apps.contains(law.app_id))
            errors.push_back(who + ": app is not produced by any partition");
        if (law.window_n < 2)
            errors.push_back(who + ": window_n must be at least 2");
        if (!(law.epsilon >= 0.0))
            errors.push_back(who + ": epsilon must be non-negative");
        if (a653::is_known_app(law.app_id) &&
            law.values.size() != a653::value_count_for(static_cast<a653::AppId>(law.app_id)))
            errors.push_back(who + ": expected " +
                             std::to_string(a653::value_count_for(static_cast<a653::AppId>(law.app_id))) +
                             " value law(s), found " + std::to_string(law.values.size()));
        for (std::size_t i = 0; i < law.values.size(); ++i) {
            const auto& v = law.values[i];
            if (!(v.max_rate >= 0.0))
                errors.push_back(who + ": values[" + std::to_string(i) + "].max_rate must be non-negative");
            if (!(v.min <= v.max))
                errors.push_back(who + ": values[" + std::to_string(i) + "] has min > max");
        }
    }

    if (cfg.scenario)
        for (const auto& fault : cfg.scenario->faults) {
            const auto nth_ok = std::visit(
                [](const auto& f) {
                    using F = std::decay_t<decltype(f)>;
                    if constexpr (requires { f.nth; })
                        return f.nth >= 1;
                    else if constexpr (std::is_same_v<F, faults::CorruptValue>)
                        return f.nth_sample >= 1;
                    else
                        return true;
                },
                fault);
            if (!nth_ok)
                errors.push_back("scenario: " + faults::describe(fault) + ": occurrences count from 1");
        }
    return errors;
}

SystemConfig load_config(std::string_view json_text)
{
    const auto doc = parse_json(json_text);
    Reader reader;
    auto cfg = parse_config(reader, doc);
    if (!reader.errors.empty())
        throw ConfigError(ConfigErrorKind::Validation, std::move(reader.errors));
    auto errors = validate_config(cfg);
    if (!errors.empty())
        throw ConfigError(ConfigErrorKind::Validation, std::move(errors));
    return cfg;
}

SystemConfig load_config_file(const std::filesystem::path& path)
{
    return load_config(read_file(path));
}

faults::FaultScenario load_scenario(std::string_view json_text)
{
    const auto doc = parse_json(json_text);
    Reader reader;
    const bool wrapped = doc.is_object() && doc.contains("scenario");
    auto scenario = parse_scenario(reader, wrapped ? doc["scenario"] : doc, wrapped ? "scenario" : "");
    if (!reader.errors.empty())
        throw ConfigError(ConfigErrorKind::Validation, std::move(reader.errors));
    return scenario;
}

faults::FaultScenario load_scenario_file(const std::filesystem::path& path)
{
    return load_scenario(read_file(path));
}

std::string canonical_json(const SystemConfig& cfg)
{
    json doc;
    json windows = json::array();
    for (const auto& w : cfg.major_frame.windows)
        windows.push_back({{"partition", w.partition}, {"offset_us", w.offset}, {"duration_us", w.duration}});
    doc["major_frame"] = {{"maf_us", cfg.major_frame.maf_duration}, {"windows", windows}};

    json partitions = json::array();
    for (const auto& p : cfg.partitions) {
        const auto& g = p.generator;
        partitions.push_back(
            {{"id", p.id},
             {"app", a653::app_name(static_cast<std::uint8_t>(p.app))},
             {"port",
              {{"kind", p.port_kind == a653::PortKind::Queuing ? "queuing" : "sampling"},
               {"capacity", p.port_capacity}}},
             {"generator",
              {{"lat", g.latitude},
               {"lon", g.longitude},
               {"speed", g.speed},
               {"heading", g.heading},
               {"accel", g.acceleration},
               {"turn_rate", g.turn_rate}}}});
    }
    doc["partitions"] = partitions;

    json vls = json::array();
    for (const auto& vl : cfg.virtual_links)
        vls.push_back({{"vl_id", vl.vl_id},
                       {"bag_ms", vl.bag_ms},
                       {"max_frame_size", vl.max_frame_size},
                       {"max_jitter_us", vl.max_jitter_us},
                       {"source_partition", vl.source_partition},
                       {"destinations", vl.destinations}});
    doc["virtual_links"] = vls;

    json laws = json::array();
    for (const auto& law : cfg.laws) {
        json values = json::array();
        for (const auto& v : law.values)
            values.push_back({{"max_rate", v.max_rate}, {"min", v.min}, {"max", v.max}, {"angular", v.angular}});
        laws.push_back({{"app", a653::app_name(law.app_id)},
                        {"window_n", law.window_n},
                        {"epsilon", law.epsilon},
                        {"values", values}});
    }
    doc["laws"] = laws;
    doc["prop_delay_us"] = cfg.prop_delay_us;
    doc["run_mafs"] = cfg.run_mafs;
    if (cfg.scenario) {
        json list = json::array();
        for (const auto& f : cfg.scenario->faults)
            list.push_back(fault_json(f));
        doc["scenario"] = {{"name", cfg.scenario->name}, {"seed", cfg.scenario->seed}, {"faults", list}};
    }
    return doc.dump();
}

std::string config_digest(const SystemConfig& cfg)
{
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_json(cfg)) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char text[17];
    std::snprintf(text, sizeof text, "%016llx", static_cast<unsigned long long>(hash));
    return text;
}

} // namespace ima::harness

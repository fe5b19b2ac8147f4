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
#include "ima/harness/report.hpp"
#include "ima/harness/scenario.hpp"
#include "ima/harness/transmitter.hpp"
#include "ima/monitor/traffic_model.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace ima;
using namespace ima::harness;
using monitor::AnomalyKind;

namespace {

std::string baseline_text()
{
    std::ifstream in(IMA_BASELINE_CONFIG);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json baseline_json()
{
    return nlohmann::json::parse(baseline_text());
}

std::vector<std::string> errors_of(const nlohmann::json& doc)
{
    try {
        load_config(doc.dump());
    } catch (const ConfigError& e) {
        return e.errors();
    }
    return {};
}

bool mentions(const std::vector<std::string>& errors, std::string_view text)
{
    return std::any_of(errors.begin(), errors.end(), [&](const auto& e) { return e.find(text) != std::string::npos; });
}

std::size_t count_kind(const Report& r, AnomalyKind kind)
{
    return static_cast<std::size_t>(
        std::count_if(r.anomalies.begin(), r.anomalies.end(), [&](const auto& a) { return a.kind == kind; }));
}

} // namespace

TEST_CASE("baseline config loads")
{
    const auto cfg = load_config(baseline_text());
    CHECK(cfg.major_frame.maf_duration == 300000);
    CHECK(cfg.major_frame.windows.size() == 3);
    CHECK(cfg.partitions.size() == 3);
    CHECK(cfg.virtual_links.size() == 3);
    CHECK(cfg.laws.size() == 3);
    CHECK(cfg.prop_delay_us == 100);
    CHECK(cfg.run_mafs == 100);
    CHECK_FALSE(cfg.scenario);
    CHECK(cfg.partitions[1].app == a653::AppId::Speed);
    CHECK(cfg.laws[2].values[0].angular);
    CHECK(cfg.virtual_links[2].destinations == std::vector<std::string>{"CPM2", "CPM3"});
}

TEST_CASE("config validation examples")
{
    SUBCASE("bag 3")
    {
        auto doc = baseline_json();
        doc["virtual_links"][0]["bag_ms"] = 3;
        CHECK(mentions(errors_of(doc), "bag must be one of 1,2,4,8,16,32,64,128"));
    }
    SUBCASE("unknown partition")
    {
        auto doc = baseline_json();
        doc["virtual_links"][1]["source_partition"] = 9;
        CHECK(mentions(errors_of(doc), "unknown partition"));
    }
    SUBCASE("overlapping windows")
    {
        auto doc = baseline_json();
        doc["major_frame"]["windows"][1]["offset_us"] = 50000;
        CHECK_FALSE(errors_of(doc).empty());
    }
    SUBCASE("every violation is reported")
    {
        auto doc = baseline_json();
        doc["virtual_links"][0]["bag_ms"] = 3;
        doc["virtual_links"][1]["source_partition"] = 9;
        doc["laws"][0]["window_n"] = 1;
        doc["prop_delay_us"] = -5;
        const auto errors = errors_of(doc);
        CHECK(errors.size() >= 1);
        CHECK(mentions(errors, "prop_delay_us"));

        doc["prop_delay_us"] = 100;
        const auto semantic = errors_of(doc);
        CHECK(mentions(semantic, "bag must be"));
        CHECK(mentions(semantic, "unknown partition"));
        CHECK(mentions(semantic, "window_n"));
        CHECK(mentions(semantic, "exactly one VL"));
    }
    SUBCASE("law for an app nobody produces")
    {
        auto doc = baseline_json();
        doc["partitions"][2]["app"] = "speed";
        CHECK(mentions(errors_of(doc), "not produced"));
    }
    SUBCASE("malformed JSON")
    {
        try {
            load_config("{ not json");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.kind() == ConfigErrorKind::Parse);
        }
    }
    SUBCASE("unknown fault type")
    {
        auto doc = baseline_json();
        doc["scenario"] = {{"name", "x"}, {"faults", {{{"type", "melt"}}}}};
        CHECK(mentions(errors_of(doc), "unknown fault type"));
    }
}

TEST_CASE("scenario parsing covers every fault type")
{
    const auto s = load_scenario(R"({"scenario": {"name": "all", "seed": 3, "faults": [
        {"type": "drop", "vl": 2, "nth": 1},
        {"type": "delay", "vl": 2, "nth": 1, "delta_us": -1000},
        {"type": "duplicate", "vl": 2, "nth": 1},
        {"type": "corrupt_value", "app": 2, "nth_sample": 5, "value_index": 0, "delta": 50.0},
        {"type": "corrupt_bits", "vl": 3, "nth": 2, "byte_index": 20, "xor_mask": 1},
        {"type": "rogue_vl", "vl_id": 99, "times": [150000]},
        {"type": "schedule_shift", "partition": 1, "delta_us": 150000}]}})");
    CHECK(s.name == "all");
    CHECK(s.seed == 3);
    REQUIRE(s.faults.size() == 7);
    CHECK(std::get<faults::Delay>(s.faults[1]).delta_us == -1000);
    CHECK(std::get<faults::RogueVl>(s.faults[5]).times == std::vector<Microseconds>{150000});
    CHECK(std::get<faults::ScheduleShift>(s.faults[6]).partition == 1);
}

TEST_CASE("digest is stable and sensitive")
{
    const auto a = load_config(baseline_text());
    auto b = a;
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a).size() == 16);
    b.run_mafs = 101;
    CHECK(config_digest(a) != config_digest(b));
    CHECK(load_config(canonical_json(a)).run_mafs == a.run_mafs);
    CHECK(canonical_json(load_config(canonical_json(a))) == canonical_json(a));
}

TEST_CASE("baseline run: PASS, 300 frames, no anomaly")
{
    const auto report = run_scenario(load_config(baseline_text()));
    CHECK(report.frames_emitted == 300);
    CHECK(report.frames_received == 300);
    CHECK(report.anomalies.empty());
    CHECK(report.pass());
}

TEST_CASE("transmitter frames follow the partition schedule")
{
    const auto cfg = load_config(baseline_text());
    const auto events = simulate_transmitter(cfg, cfg.major_frame, 2);
    REQUIRE(events.size() == 6);
    const std::vector<Microseconds> emits{0, 100000, 200000, 300000, 400000, 500000};
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].t_emit == emits[i]);
        CHECK(events[i].t_arrive == emits[i] + 100);
        auto decoded = a664::decode_frame(events[i].raw);
        REQUIRE(std::holds_alternative<a664::Frame>(decoded));
        const auto& f = std::get<a664::Frame>(decoded);
        CHECK(f.vl_id == i % 3 + 1);
        CHECK(f.vl_seq == i / 3 + 1);
        CHECK(f.payload.sample_seq == i / 3 + 1);
        CHECK(f.payload.timestamp == emits[i]);
    }
}

TEST_CASE("sampling ports give the same traffic")
{
    auto doc = baseline_json();
    for (auto& p : doc["partitions"])
        p["port"]["kind"] = "sampling";
    const auto sampled = run_scenario(load_config(doc.dump()));
    CHECK(sampled.frames_emitted == 300);
    CHECK(sampled.pass());
}

TEST_CASE("run_mafs 0 is an empty PASS")
{
    auto cfg = load_config(baseline_text());
    cfg.run_mafs = 0;
    const auto report = run_scenario(cfg);
    CHECK(report.frames_emitted == 0);
    CHECK(report.pass());
}

TEST_CASE("drop scenario: one MissingData and one SequenceError")
{
    auto cfg = load_config(baseline_text());
    cfg.scenario = faults::FaultScenario{"drop", {faults::Drop{2, 1}}, 0};
    const auto report = run_scenario(cfg);
    CHECK(report.frames_received == 299);
    REQUIRE(report.anomalies.size() == 2);
    CHECK(report.counts() == AnomalyCounts{1, 0, 0, 1});
    CHECK(report.anomalies[0].kind == AnomalyKind::MissingData);
    CHECK(report.anomalies[0].vl == 2);
    CHECK(report.anomalies[0].detected_at == 300000);
    CHECK(report.anomalies[1].kind == AnomalyKind::SequenceError);
    CHECK(report.anomalies[1].vl == 2);
}

TEST_CASE("corrupt value scenario: exactly one IncoherentData")
{
    auto cfg = load_config(baseline_text());
    cfg.scenario = faults::FaultScenario{"cv", {faults::CorruptValue{2, 5, 0, 50.0}}, 0};
    const auto report = run_scenario(cfg);
    REQUIRE(report.anomalies.size() == 1);
    CHECK(report.anomalies[0].kind == AnomalyKind::IncoherentData);
    CHECK(report.anomalies[0].vl == 2);
    CHECK(count_kind(report, AnomalyKind::UnexpectedComm) == 0);
    CHECK(count_kind(report, AnomalyKind::MissingData) == 0);
}

TEST_CASE("report JSON")
{
    auto cfg = load_config(baseline_text());
    const auto pass = emit_report(run_scenario(cfg));
    const auto doc = nlohmann::json::parse(pass);
    CHECK(doc["verdict"] == "PASS");
    CHECK(doc["counts"] == nlohmann::json{{"missing", 0}, {"unexpected", 0}, {"incoherent", 0}, {"sequence", 0}});
    CHECK(doc["frames_emitted"] == 300);
    CHECK(pass == emit_report(run_scenario(cfg)));

    cfg.scenario = faults::FaultScenario{"drop", {faults::Drop{2, 1}}, 0};
    const auto fail = nlohmann::json::parse(emit_report(run_scenario(cfg)));
    CHECK(fail["verdict"] == "FAIL");
    REQUIRE(fail["anomalies"].size() == 2);
    CHECK(fail["anomalies"][0]["kind"] == "MissingData");
    CHECK(fail["anomalies"][0]["vl"] == 2);
    CHECK(fail["anomalies"][0]["t"] == 300000);
    CHECK(fail["anomalies"][1]["kind"] == "SequenceError");
}

TEST_CASE("check_trace over a serialized stream reproduces the run")
{
    auto cfg = load_config(baseline_text());
    cfg.scenario = faults::FaultScenario{"mix", {faults::Duplicate{1, 3}, faults::CorruptBits{3, 2, 20, 1}}, 0};
    const auto run = run_scenario_detailed(cfg);
    std::stringstream trace;
    a664::write_frame_trace(trace, run.delivered);
    const auto replayed = check_trace(cfg, a664::read_frame_trace(trace, cfg.virtual_links));
    CHECK(replayed.anomalies == run.report.anomalies);
    CHECK_FALSE(replayed.pass());
}

TEST_CASE("infeasible schedules and missing fault targets propagate")
{
    auto cfg = load_config(baseline_text());
    cfg.scenario = faults::FaultScenario{"bad", {faults::Drop{2, 1000}}, 0};
    CHECK_THROWS_AS(run_scenario(cfg), faults::TargetNotFound);

    auto doc = baseline_json();
    doc["major_frame"]["windows"][2]["offset_us"] = 299800;
    doc["major_frame"]["windows"][2]["duration_us"] = 200;
    CHECK_THROWS_AS(run_scenario(load_config(doc.dump())), monitor::InfeasibleConfig);
}

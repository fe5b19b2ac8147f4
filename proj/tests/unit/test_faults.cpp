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

#include "ima/faults/faults.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ima;
using namespace ima::faults;
using a664::FrameEvent;

namespace {

// Two MAFs of three VLs, one frame each, app id equal to the VL.
std::vector<FrameEvent> stream()
{
    std::vector<FrameEvent> events;
    for (std::uint8_t seq = 1; seq <= 2; ++seq)
        for (std::uint16_t vl = 1; vl <= 3; ++vl) {
            const Microseconds emit = (seq - 1) * 300000u + (vl - 1) * 100000u;
            const std::vector<double> values{100.0 + seq};
            events.push_back({emit, emit + 100,
                              a664::encode_frame({vl, static_cast<std::uint8_t>(vl), static_cast<std::uint8_t>(vl),
                                                  seq, emit},
                                                 values, seq)});
        }
    return events;
}

bool ordered(const std::vector<FrameEvent>& events)
{
    return std::is_sorted(events.begin(), events.end(),
                          [](const auto& a, const auto& b) { return a.t_arrive < b.t_arrive; });
}

// Frames of @p out that also appear, unchanged, in @p in.
std::size_t untouched(const std::vector<FrameEvent>& in, const std::vector<FrameEvent>& out)
{
    return static_cast<std::size_t>(std::count_if(out.begin(), out.end(), [&](const FrameEvent& e) {
        return std::find(in.begin(), in.end(), e) != in.end();
    }));
}

FaultScenario single(FaultSpec f)
{
    return {"single", {std::move(f)}, 0};
}

} // namespace

TEST_CASE("empty scenario is the identity")
{
    const auto in = stream();
    CHECK(apply_scenario(in, {}) == in);
}

TEST_CASE("drop removes exactly the nth frame of the VL")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(Drop{2, 1}));
    REQUIRE(out.size() == in.size() - 1);
    CHECK(std::find(out.begin(), out.end(), in[1]) == out.end());
    CHECK(untouched(in, out) == out.size());
}

TEST_CASE("delay shifts arrival and keeps order")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(Delay{1, 1, 250000}));
    REQUIRE(out.size() == in.size());
    CHECK(ordered(out));
    CHECK(out[2].raw == in[0].raw);
    CHECK(out[2].t_arrive == 250100);
    CHECK(untouched(in, out) == out.size() - 1);

    const auto early = apply_scenario(in, single(Delay{2, 1, -1000000}));
    CHECK(early[0].t_arrive == 0);
    CHECK(ordered(early));
}

TEST_CASE("duplicate inserts a byte-identical copy right after")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(Duplicate{3, 2}));
    REQUIRE(out.size() == in.size() + 1);
    CHECK(out[5] == in[5]);
    CHECK(out[6] == in[5]);
    CHECK(ordered(out));
}

TEST_CASE("corrupt value keeps a valid CRC and moves only the value")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(CorruptValue{2, 2, 0, 50.0}));
    REQUIRE(out.size() == in.size());
    auto decoded = a664::decode_frame(out[4].raw);
    REQUIRE(std::holds_alternative<a664::Frame>(decoded));
    const auto& f = std::get<a664::Frame>(decoded);
    CHECK(f.payload.values[0] == doctest::Approx(152.0));
    CHECK(f.vl_seq == 2);
    CHECK(f.payload.sample_seq == 2);
    CHECK(untouched(in, out) == out.size() - 1);
    CHECK_THROWS_AS(apply_scenario(in, single(CorruptValue{2, 1, 1, 1.0})), TargetNotFound);
}

TEST_CASE("corrupt bits breaks the CRC")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(CorruptBits{3, 2, 20, 0x01}));
    auto decoded = a664::decode_frame(out[5].raw);
    REQUIRE(std::holds_alternative<a664::DecodeFailure>(decoded));
    CHECK(std::get<a664::DecodeFailure>(decoded).error == a664::DecodeError::BadCrc);
    CHECK(out[5].raw[20] == (in[5].raw[20] ^ 0x01));
    CHECK(untouched(in, out) == out.size() - 1);
}

TEST_CASE("rogue VL frames are valid and time ordered")
{
    const auto in = stream();
    const auto out = apply_scenario(in, single(RogueVl{99, {150000, 0, 700000}}));
    REQUIRE(out.size() == in.size() + 3);
    CHECK(ordered(out));
    CHECK(untouched(in, out) == in.size());
    int rogue = 0;
    for (const auto& e : out) {
        auto decoded = a664::decode_frame(e.raw);
        REQUIRE(std::holds_alternative<a664::Frame>(decoded));
        if (std::get<a664::Frame>(decoded).vl_id == 99) {
            ++rogue;
            CHECK(e.t_emit == e.t_arrive);
        }
    }
    CHECK(rogue == 3);
}

TEST_CASE("missing targets raise TargetNotFound")
{
    const auto in = stream();
    CHECK_THROWS_AS(apply_scenario(in, single(Drop{2, 3})), TargetNotFound);
    CHECK_THROWS_AS(apply_scenario(in, single(Duplicate{7, 1})), TargetNotFound);
    CHECK_THROWS_AS(apply_scenario(in, single(CorruptBits{1, 1, 64, 1})), TargetNotFound);
}

TEST_CASE("faults compose sequentially and deterministically")
{
    const auto in = stream();
    const FaultScenario s{"combo", {Drop{1, 1}, Drop{1, 1}, Duplicate{2, 1}, RogueVl{9, {5}}}, 0};
    const auto a = apply_scenario(in, s);
    CHECK(a == apply_scenario(in, s));
    CHECK(a.size() == in.size() - 2 + 1 + 1);
    CHECK_FALSE(std::any_of(a.begin(), a.end(), [](const auto& e) { return a664::peek_vl_id(e.raw) == 1; }));
}

TEST_CASE("schedule shift moves windows modulo the MAF")
{
    const a653::MajorFrame mf{300000, {{1, 0, 100000}, {2, 100000, 100000}, {3, 200000, 100000}}};
    const auto shifted = apply_schedule_shifts(mf, single(ScheduleShift{1, 150000}));
    REQUIRE(shifted.windows.size() == 3);
    CHECK(shifted.windows[0] == a653::PartitionWindow{2, 100000, 100000});
    CHECK(shifted.windows[1] == a653::PartitionWindow{1, 150000, 100000});

    const auto back = apply_schedule_shifts(mf, single(ScheduleShift{3, -250000}));
    CHECK(std::find(back.windows.begin(), back.windows.end(), a653::PartitionWindow{3, 250000, 100000}) !=
          back.windows.end());
    CHECK(apply_schedule_shifts(mf, {}) == mf);
    CHECK_THROWS_AS(apply_schedule_shifts(mf, single(ScheduleShift{9, 1})), TargetNotFound);

    const auto stream_only = stream();
    CHECK(apply_scenario(stream_only, single(ScheduleShift{1, 150000})) == stream_only);
}

TEST_CASE("describe")
{
    CHECK(describe(Drop{2, 1}) == "drop VL 2 #1");
    CHECK(describe(RogueVl{99, {1, 2}}) == "rogue VL 99 x2");
}

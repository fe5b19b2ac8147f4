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

#include "ima/a653/generator.hpp"
#include "ima/a653/partition.hpp"
#include "ima/a653/port.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ima::a653;

namespace {

MajorFrame tiled()
{
    return {300000, {{1, 0, 100000}, {2, 100000, 100000}, {3, 200000, 100000}}};
}

AppSample sample_with_seq(std::uint16_t seq)
{
    AppSample s;
    s.app_id = 2;
    s.sample_seq = seq;
    s.values = {static_cast<double>(seq), 0, 0};
    s.value_count = 1;
    return s;
}

bool has_kind(const std::vector<ScheduleViolation>& v, ViolationKind kind)
{
    for (const auto& x : v)
        if (x.kind == kind)
            return true;
    return false;
}

double angular_diff(double from, double to)
{
    double d = std::fmod(to - from, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d < -180.0)
        d += 360.0;
    return d;
}

} // namespace

TEST_CASE("validate_major_frame")
{
    const std::vector<PartitionId> declared{1, 2, 3};
    CHECK(validate_major_frame(tiled(), declared).empty());

    MajorFrame overlap{300000, {{1, 0, 100000}, {2, 50000, 100000}}};
    const auto v = validate_major_frame(overlap);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::Overlap);
    CHECK(v[0].first == 1);
    CHECK(v[0].second == 2);

    MajorFrame out_of_range{300000, {{1, 250000, 100000}}};
    CHECK(has_kind(validate_major_frame(out_of_range), ViolationKind::OutOfRange));

    MajorFrame missing{300000, {{1, 0, 100000}, {2, 100000, 100000}}};
    CHECK(has_kind(validate_major_frame(missing, declared), ViolationKind::PartitionAbsent));

    MajorFrame unsorted{300000, {{2, 100000, 100000}, {1, 0, 100000}}};
    CHECK(has_kind(validate_major_frame(unsorted), ViolationKind::Unsorted));

    MajorFrame zero{300000, {{1, 0, 0}}};
    CHECK(has_kind(validate_major_frame(zero), ViolationKind::ZeroDuration));
    CHECK(has_kind(validate_major_frame(MajorFrame{}), ViolationKind::ZeroMaf));
}

TEST_CASE("active_partition")
{
    CHECK(active_partition(tiled(), 150000) == PartitionId{2});
    CHECK(active_partition(tiled(), 450000) == PartitionId{2});
    CHECK(active_partition(tiled(), 0) == PartitionId{1});
    CHECK(active_partition(tiled(), 100000) == PartitionId{2});

    MajorFrame slack{300000, {{1, 0, 100000}, {2, 100000, 100000}, {3, 200000, 90000}}};
    CHECK_FALSE(active_partition(slack, 295000).has_value());
}

TEST_CASE("property: window exclusivity and periodicity")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        // Random valid tiling with slack.
        MajorFrame mf;
        Microseconds cursor = 0;
        const auto n = 1 + rng() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            cursor += rng() % 3 * 1000;
            const Microseconds d = 1000 * (1 + rng() % 50);
            mf.windows.push_back({static_cast<PartitionId>(1 + i), cursor, d});
            cursor += d;
        }
        mf.maf_duration = cursor + rng() % 2 * 5000;
        REQUIRE(validate_major_frame(mf).empty());
        for (int k = 0; k < 200; ++k) {
            const Microseconds t = rng() % (10 * mf.maf_duration);
            int owners = 0;
            for (const auto& w : mf.windows)
                owners += (w.offset <= t % mf.maf_duration && t % mf.maf_duration < w.end()) ? 1 : 0;
            CHECK(owners <= 1);
            CHECK(active_partition(mf, t) == active_partition(mf, t + mf.maf_duration));
        }
    }
}

TEST_CASE("sampling port overwrites and reads without consuming")
{
    auto port = Port653::sampling("speed");
    CHECK_FALSE(port.receive().has_value());
    CHECK(port.send(sample_with_seq(1)) == SendStatus::Ok);
    CHECK(port.send(sample_with_seq(2)) == SendStatus::Ok);
    CHECK(port.size() == 1);
    CHECK(port.receive()->sample_seq == 2);
    CHECK(port.receive()->sample_seq == 2);
}

TEST_CASE("queuing port is FIFO and bounded")
{
    auto port = Port653::queuing("gps", 2);
    CHECK_FALSE(port.receive().has_value());
    CHECK(port.send(sample_with_seq(1)) == SendStatus::Ok);
    CHECK(port.send(sample_with_seq(2)) == SendStatus::Ok);
    CHECK(port.send(sample_with_seq(3)) == SendStatus::QueueFull);
    CHECK(port.receive()->sample_seq == 1);
    CHECK(port.size() == 1);
    CHECK(port.receive()->sample_seq == 2);
    CHECK_FALSE(port.receive().has_value());
}

TEST_CASE("property: queuing port conserves messages in order")
{
    std::mt19937_64 rng(5);
    auto port = Port653::queuing("q", 8);
    std::uint16_t sent = 0;
    std::uint16_t received = 0;
    for (int i = 0; i < 5000; ++i) {
        if (rng() % 2 == 0) {
            if (port.size() < 8) {
                CHECK(port.send(sample_with_seq(sent)) == SendStatus::Ok);
                ++sent;
            } else {
                CHECK(port.send(sample_with_seq(9999)) == SendStatus::QueueFull);
            }
        } else if (auto m = port.receive()) {
            CHECK(m->sample_seq == received);
            ++received;
        }
    }
    while (auto m = port.receive())
        CHECK(m->sample_seq == received++);
    CHECK(sent == received);
}

TEST_CASE("generate_sample")
{
    SUBCASE("linear speed update")
    {
        auto s = AppGeneratorState::from({0, 0, 100.0, 0, 0.5, 0});
        s.last_sample = 0;
        auto [next, sample] = generate_sample(s, AppId::Speed, 300000);
        CHECK(next.speed == doctest::Approx(100.15).epsilon(1e-12));
        CHECK(sample.value_count == 1);
        CHECK(sample.values[0] == next.speed);
        CHECK(sample.timestamp == 300000);
    }
    SUBCASE("heading wraps modulo 360")
    {
        auto s = AppGeneratorState::from({0, 0, 0, 359.0, 0, 5.0});
        s.last_sample = 0;
        auto [next, sample] = generate_sample(s, AppId::Angle, 300000);
        CHECK(next.heading == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(sample.values[0] == next.heading);
    }
    SUBCASE("zero elapsed time leaves values unchanged but still counts")
    {
        auto s = AppGeneratorState::from({43.6, 1.44, 150.0, 90.0, 2.5, 2.5});
        s.last_sample = 1000;
        s.sample_seq = 9;
        auto [next, sample] = generate_sample(s, AppId::Gps, 1000);
        CHECK(next.latitude == 43.6);
        CHECK(next.longitude == 1.44);
        CHECK(next.speed == 150.0);
        CHECK(sample.sample_seq == 10);
        CHECK(sample.value_count == 2);
    }
    SUBCASE("sample_seq wraps at 65535")
    {
        auto s = AppGeneratorState::from({});
        s.sample_seq = 65535;
        auto [next, sample] = generate_sample(s, AppId::Speed, 0);
        CHECK(sample.sample_seq == 0);
    }
    SUBCASE("flat-earth position step")
    {
        auto s = AppGeneratorState::from({0.0, 0.0, 111.32, 0.0, 0, 0});
        s.last_sample = 0;
        auto [next, sample] = generate_sample(s, AppId::Gps, 1000000);
        CHECK(next.latitude == doctest::Approx(0.001));
        CHECK(next.longitude == doctest::Approx(0.0));
    }
}

TEST_CASE("property: consecutive samples stay within the generator's true rates")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        GeneratorParams p{45.0 * u(rng), 170.0 * u(rng), 150.0 + 50.0 * u(rng), 180.0 + 179.0 * u(rng),
                          3.0 * u(rng), 6.0 * u(rng)};
        auto state = AppGeneratorState::from(p);
        Microseconds t = 0;
        std::optional<AppGeneratorState> prev;
        for (int k = 0; k < 300; ++k) {
            t += 1000 * (1 + rng() % 400);
            auto [next, sample] = generate_sample(state, AppId::Gps, t);
            if (prev) {
                const double dt = static_cast<double>(t - *prev->last_sample) / 1e6;
                CHECK(std::abs(next.speed - prev->speed) <= std::abs(p.acceleration) * dt + 1e-9);
                CHECK(std::abs(angular_diff(prev->heading, next.heading)) <= std::abs(p.turn_rate) * dt + 1e-9);
                CHECK(std::abs(next.latitude - prev->latitude) <=
                      std::abs(prev->speed) * dt / kMetersPerDegree + 1e-9);
            }
            prev = next;
            state = next;
        }
    }
}

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

#include "ima/harness/report.hpp"

#include <json.hpp>

namespace ima::harness {

AnomalyCounts Report::counts() const
{
    AnomalyCounts c;
    for (const auto& a : anomalies) {
        switch (a.kind) {
        case monitor::AnomalyKind::MissingData: ++c.missing; break;
        case monitor::AnomalyKind::UnexpectedComm: ++c.unexpected; break;
        case monitor::AnomalyKind::IncoherentData: ++c.incoherent; break;
        case monitor::AnomalyKind::SequenceError: ++c.sequence; break;
        }
    }
    return c;
}

std::string emit_report(const Report& report)
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& a : report.anomalies)
        list.push_back({{"kind", monitor::to_string(a.kind)},
                        {"cause", monitor::to_string(a.cause)},
                        {"vl", a.vl},
                        {"t", a.detected_at},
                        {"detail", a.detail}});
    const auto c = report.counts();
    const nlohmann::json doc{
        {"config_digest", report.config_digest},
        {"frames_emitted", report.frames_emitted},
        {"frames_received", report.frames_received},
        {"anomalies", list},
        {"counts",
         {{"missing", c.missing}, {"unexpected", c.unexpected}, {"incoherent", c.incoherent}, {"sequence", c.sequence}}},
        {"verdict", report.pass() ? "PASS" : "FAIL"},
    };
    return doc.dump(2) + "\n";
}

} // namespace ima::harness

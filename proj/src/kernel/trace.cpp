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

#include "ima/kernel/trace.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>

namespace ima::kernel {

void SignalTrace::write_jsonl(std::ostream& out) const
{
    for (const auto& record : records) {
        nlohmann::ordered_json line;
        line["cycle"] = record.cycle;
        line["port"] = ports.at(record.port);
        line["value"] = record.value;
        out << line.dump() << '\n';
    }
}

std::string SignalTrace::to_jsonl() const
{
    std::ostringstream out;
    write_jsonl(out);
    return out.str();
}

} // namespace ima::kernel

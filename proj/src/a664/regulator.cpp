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

#include "ima/a664/regulator.hpp"

namespace ima::a664 {

std::vector<Emission> regulate(VlRegulatorState& state, const VirtualLinkConfig& vl, Microseconds now)
{
    if (state.backlog.empty())
        return {};
    if (state.last_emission && now - *state.last_emission < vl.bag_us())
        return {};

    Emission emission;
    emission.emit_time = now;
    emission.vl_seq = state.next_seq;
    emission.raw = encode_frame(state.backlog.front(), vl, state.next_seq);
    state.backlog.pop_front();
    state.last_emission = now;
    state.next_seq = next_sequence(state.next_seq);
    return {std::move(emission)};
}

} // namespace ima::a664

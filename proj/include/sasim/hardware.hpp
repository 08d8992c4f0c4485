/*******************************************************************************
* Copyright 2026 The sasim Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sasim/types.hpp"

namespace sasim {

// Cycles per ALU for each SIMD arithmetic op.
struct OpLatency {
    count_t add = 1;
    count_t sub = 1;
    count_t mul = 1;
    count_t div = 1;
    count_t max = 1;

    // Mac has no SIMD latency; asking for it is a logic error.
    count_t of(OpKind kind) const;

    bool operator==(const OpLatency &) const = default;
};

// Systolic array + SIMD platform. Capacities in bytes, bandwidths in
// bits/cycle, bit-widths in bits per element.
struct HardwareConfig {
    std::string name;

    count_t pe_rows = 1; // J
    count_t pe_cols = 1; // K, also the SIMD ALU count

    count_t wbuf_bytes = 1;
    count_t bbuf_bytes = 1;
    count_t ibuf_bytes = 1;
    count_t obuf_bytes = 1;
    count_t vmem_bytes = 1;
    count_t imem_bytes = 1; // stored, never modeled

    count_t bw_w = 1; // shared by WBuf and BBuf
    count_t bw_i = 1;
    count_t bw_o = 1;
    count_t bw_v = 1;

    count_t bits_weight = 16;
    count_t bits_bias = 32;
    count_t bits_ifmap = 16;
    count_t bits_psum = 32;
    count_t bits_simd_in = 32;
    count_t bits_simd_out = 32;

    OpLatency op_latency;

    count_t simd_alus() const { return pe_cols; }

    // Throws SpecError naming the first non-positive field.
    void validate() const;

    bool operator==(const HardwareConfig &) const = default;
};

HardwareConfig hardware_from_json(const nlohmann::json &doc, const std::string &origin);
nlohmann::json to_json(const HardwareConfig &hw);

HardwareConfig load_hardware_spec(const std::filesystem::path &path);
void write_hardware_spec(const HardwareConfig &hw, const std::filesystem::path &path);

} // namespace sasim

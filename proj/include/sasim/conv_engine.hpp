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

#include <array>

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/stats.hpp"

namespace sasim {

enum class ModelVariant : std::uint8_t { Full, NoStall, Simplified };

std::string_view to_string(ModelVariant v);
std::optional<ModelVariant> parse_model_variant(std::string_view text);

// Conventions shared by the analytical engines and the oracle.
struct ScheduleConventions {
    // Charge the first tile's loads before any compute and the last tile's
    // store after it.
    bool include_prologue_epilogue = false;

    bool operator==(const ScheduleConventions &) const = default;
};

struct ConvMultipliers {
    ConvTile m; // outer: ceil(dim / T)
    ConvTile r; // inner: ceil(T / t)
    count_t m_w_tile = 0;  // m_kh m_kw m_ic m_oc
    count_t m_outer = 0;   // all seven m
    count_t m_store = 0;   // m_oh m_ow m_n m_oc, distinct ofmap tiles
    count_t m_reduce = 0;  // m_kh m_kw m_ic
    count_t m_p_tile = 0;  // m_store (2 m_reduce - 1)
    count_t m_inner = 0;   // all seven r

    static ConvMultipliers of(const ConvShape &shape, const ConvTiling &tiling);
};

// Outer/inner tile volumes in elements.
struct ConvVolumes {
    count_t weight = 0, ifmap = 0, psum = 0, bias = 0;
    count_t inner_weight = 0, inner_ifmap = 0, inner_psum = 0;

    static ConvVolumes of(const ConvShape &shape, const ConvTiling &tiling);
};

DramBits conv_dram_accesses(const ConvShape &shape, const ConvTiling &tiling, const HardwareConfig &hw);
SramBits conv_sram_accesses(const ConvShape &shape, const ConvTiling &tiling, const HardwareConfig &hw);

struct ConvComputeCycles {
    count_t c_tile = 0;
    count_t pso = 0;
    count_t m_outer = 0;
    count_t total = 0;
};

ConvComputeCycles conv_compute_cycles(
        const ConvShape &shape, const ConvTiling &tiling, const HardwareConfig &hw);

// Per-tile DRAM transfer cycles on each interface.
struct ConvTransferCycles {
    count_t weight = 0;          // weight only, WBuf/BBuf interface
    count_t weight_bias = 0;     // weight + bias on the same interface
    count_t ifmap = 0;
    count_t psum_store = 0;
    count_t psum_store_load = 0; // store then load on the OBuf interface

    static ConvTransferCycles of(
            const ConvShape &shape, const ConvTiling &tiling, const HardwareConfig &hw);
};

struct StallCase {
    int label = 0; // 1, 2, 4 or 5
    count_t occurrences = 0;
    count_t busy_per_tile = 0;
    count_t stall_per_tile = 0;
    count_t subtotal = 0;
};

struct StallCaseBreakdown {
    std::array<StallCase, 4> cases; // labels 1, 2, 4, 5 in that order
    count_t prologue_epilogue = 0;
    count_t total = 0;

    const StallCase &by_label(int label) const;
    count_t occurrence_sum() const;
};

// Occurrence counts per case, as signed values so that a broken derivation
// shows up as a negative count instead of wrapping.
std::array<std::int64_t, 4> conv_case_occurrences(const ConvMultipliers &m);

StallCaseBreakdown conv_stall_cycles(const ConvShape &shape, const ConvTiling &tiling,
        const HardwareConfig &hw, const ScheduleConventions &conv = {});

LayerStats conv_eval(const ConvShape &shape, const ConvTiling &tiling, const HardwareConfig &hw,
        ModelVariant variant = ModelVariant::Full, const ScheduleConventions &conv = {});

} // namespace sasim

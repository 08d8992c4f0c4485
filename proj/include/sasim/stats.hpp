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

#include <string>
#include <vector>

#include "sasim/layer.hpp"
#include "sasim/types.hpp"

namespace sasim {

struct LayerStats {
    count_t compute_cycles = 0;
    count_t stall_cycles = 0;
    count_t total_cycles = 0;
    DramBits dram_bits;
    SramBits sram_bits;
    OpCounts op_counts;
    Unit executed_on = Unit::SA;

    count_t dram_total() const { return dram_bits.sum(); }

    // Accumulates counts; total is kept as compute + stall.
    LayerStats &operator+=(const LayerStats &o) {
        compute_cycles += o.compute_cycles;
        stall_cycles += o.stall_cycles;
        total_cycles += o.total_cycles;
        dram_bits += o.dram_bits;
        sram_bits += o.sram_bits;
        op_counts += o.op_counts;
        return *this;
    }

    bool operator==(const LayerStats &) const = default;
};

// One evaluated layer: its spec, the tiling used, and the stats.
struct LayerResult {
    LayerSpec layer;
    Tiling tiling;
    LayerStats stats;
};

struct NetworkStats {
    std::vector<LayerResult> layers;

    count_t c_sa = 0;    // SA compute cycles
    count_t c_simd = 0;  // SIMD compute cycles
    count_t l_total = 0; // end-to-end cycles, layers run back to back
    count_t sa_total_cycles = 0;
    count_t simd_total_cycles = 0;
    count_t a_d_total = 0; // DRAM bits
    DramBits dram_bits;
    SramBits sram_bits;
    OpCounts op_counts;

    // Recomputes every aggregate from `layers`.
    void aggregate();

    // Share of l_total spent in SIMD layers.
    double non_conv_share() const {
        return l_total == 0 ? 0.0 : static_cast<double>(simd_total_cycles) / l_total;
    }
};

inline void NetworkStats::aggregate() {
    c_sa = c_simd = l_total = sa_total_cycles = simd_total_cycles = a_d_total = 0;
    dram_bits = {};
    sram_bits = {};
    op_counts = {};
    for (const auto &r : layers) {
        const auto &s = r.stats;
        if (s.executed_on == Unit::SA) {
            c_sa += s.compute_cycles;
            sa_total_cycles += s.total_cycles;
        } else {
            c_simd += s.compute_cycles;
            simd_total_cycles += s.total_cycles;
        }
        l_total += s.total_cycles;
        dram_bits += s.dram_bits;
        sram_bits += s.sram_bits;
        op_counts += s.op_counts;
    }
    a_d_total = dram_bits.sum();
}

} // namespace sasim

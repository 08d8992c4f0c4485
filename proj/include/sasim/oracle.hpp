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

#include <iosfwd>
#include <vector>

#include "sasim/conv_engine.hpp"
#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"

namespace sasim {

enum class Interface : std::uint8_t { WeightBias, Ifmap, Psum, Vector };

std::string_view to_string(Interface i);

struct Span {
    count_t start = 0;
    count_t end = 0;
};

struct TransferSpan {
    Interface iface = Interface::WeightBias;
    DramStream stream = DramStream::Weight;
    bool load = true;
    count_t bits = 0;
    Span span;
};

struct TileEvent {
    count_t index = 0;
    int case_label = 0; // conv tiles: 1..8; SIMD segments: 0
    std::size_t pass = 0;
    Span segment;
    Span compute;
    std::vector<TransferSpan> transfers;
};

struct TileEventTrace {
    std::vector<TileEvent> events;
    count_t total_cycles = 0;
    count_t compute_cycles = 0; // sum of compute spans, setup overhead included
    DramBits bits;
    std::array<count_t, 9> case_counts {}; // indexed by label

    count_t stall_cycles() const { return total_cycles - compute_cycles; }
};

// Replays the weight-stationary loop nest tile by tile. Time is kept per
// interface in bit units: consecutive transfers on one interface in a
// segment stream back to back and the segment ends at the slowest of
// compute and the three interfaces.
TileEventTrace simulate_conv(const ConvShape &shape, const ConvTiling &tiling,
        const HardwareConfig &hw, const ScheduleConventions &conv = {});

// Single-buffered SIMD schedule: per segment load, compute, store in series.
TileEventTrace simulate_simd(LayerKind kind, const SimdShape &shape, const SimdTiling &tiling,
        const HardwareConfig &hw);

// Per-pass totals of a SIMD trace (e.g. the two batch-norm backward parts).
struct PassTotals {
    count_t compute_cycles = 0;
    count_t total_cycles = 0;
    DramBits bits;
};
std::vector<PassTotals> pass_totals(const TileEventTrace &trace);

// One line per event: index, case, segment and compute spans, transfers.
void dump_trace(const TileEventTrace &trace, std::ostream &os);

} // namespace sasim

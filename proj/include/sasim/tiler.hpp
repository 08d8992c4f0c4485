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

#include <vector>

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/simd_profile.hpp"

namespace sasim {

// Required vs usable bits per buffer for one tiling.
struct TilingConstraintReport {
    SramBits required;
    SramBits usable;
    EnumArray<Buffer, 5, bool> fits;
    EnumArray<Buffer, 5, bool> checked; // buffers this layer kind uses

    bool all_fit() const;
    // First checked buffer that overflows, in WBuf, IBuf, OBuf, BBuf, VMem order.
    std::optional<Buffer> first_overflow() const;
};

// Inner tile for the array: t_ic = min(J, T_ic), t_oc = min(K, T_oc), rest 1.
ConvTile conv_inner_tile(const ConvTile &outer, const HardwareConfig &hw);
SimdTile simd_inner_tile(const SimdTile &outer, const HardwareConfig &hw);

ConvTiling make_conv_tiling(const ConvTile &outer, const HardwareConfig &hw);
SimdTiling make_simd_tiling(const SimdTile &outer, const HardwareConfig &hw);

// Greedy over (oc, ic, kh, kw, oh, ow, n): each T is the largest divisor of
// its dimension that still fits, given the values already chosen and 1 for
// the rest. Throws InfeasibleTilingError if the all-ones tile overflows.
ConvTiling generate_conv_tiling(const ConvShape &shape, const HardwareConfig &hw);

// Greedy over (c, w, h, n) of the iteration space; every resident tensor of
// the profile must fit VMem together.
SimdTiling generate_simd_tiling(
        const SimdShape &shape, const SimdOpProfile &profile, const HardwareConfig &hw);

// Uniform variant: `operand_count` Full4D tensors, half loads at b_in and the
// rest stores at b_out.
SimdTiling generate_simd_tiling(
        const SimdShape &shape, count_t operand_count, const HardwareConfig &hw);

TilingConstraintReport check_conv_tiling(
        const ConvShape &shape, const ConvTile &outer, const HardwareConfig &hw);
TilingConstraintReport check_simd_tiling(const SimdShape &shape, const SimdOpProfile &profile,
        const SimdTile &outer, const HardwareConfig &hw);

// Report for any layer; hw should already carry the layer's bit overrides.
TilingConstraintReport validate_tiling(
        const LayerSpec &layer, const Tiling &tiling, const HardwareConfig &hw);

// Throws SpecError unless 1 <= T <= dim for every dimension.
void check_tile_bounds(const ConvShape &shape, const ConvTile &outer, const std::string &where);
void check_tile_bounds(const SimdTile &space, const SimdTile &outer, const std::string &where);

// Uses the layer's own tiling if present (bounds-checked), generates one
// otherwise. Infeasibility errors carry the layer name.
Tiling tiling_for_layer(const LayerSpec &layer, const HardwareConfig &hw);

// Divisors of n in decreasing order.
std::vector<count_t> divisors_desc(count_t n);

} // namespace sasim

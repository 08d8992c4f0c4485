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

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/types.hpp"

namespace sasim {

// How large one outer tile of a tensor is, given the outer tile T of the
// layer's iteration space.
enum class TensorExtent : std::uint8_t {
    Full4D,        // T_h*T_w*T_n*T_c
    Channel1D,     // T_c
    PoolHalo,      // (s(T_h-1)+R_h)*(s(T_w-1)+R_w)*T_n*T_c, forward pool input
    PoolFootprint, // min(OH, ceil(T_h/s))*min(OW, ceil(T_w/s))*T_n*T_c, pool backward dY/mask
};

enum class TensorDir : std::uint8_t { Load, Store };
enum class BitClass : std::uint8_t { In, Out };

struct ProfileTensor {
    std::string name;
    TensorDir dir = TensorDir::Load;
    TensorExtent extent = TensorExtent::Full4D;
    BitClass bits = BitClass::In;
};

// One sweep over the iteration space. Per c-tile: the channel loads and
// channel_ops_pre run first (one segment), then every spatial tile loads /
// computes / stores its tile_tensors, then channel_ops_post and the channel
// stores (one segment).
struct SimdPass {
    std::string name;
    std::vector<ProfileTensor> channel_loads;
    OpCounts channel_ops_pre; // per channel element
    std::vector<ProfileTensor> tile_tensors;
    OpCounts element_ops; // per iteration-space element
    OpCounts channel_ops_post;
    std::vector<ProfileTensor> channel_stores;
};

enum class VmemModel : std::uint8_t {
    PerOp,           // every op reads two operands and writes one result
    OperandVolume,   // every operand tile is written/read once in VMem
};

struct SimdOpProfile {
    LayerKind kind = LayerKind::ReLU;
    std::vector<SimdPass> passes;
    VmemModel vmem = VmemModel::OperandVolume;
    bool single_bitwidth = false; // every tensor uses bits_simd_in

    // Distinct tensors (by name) that are resident in VMem at once.
    std::vector<ProfileTensor> resident_tensors() const;

    count_t bits_of(BitClass c, const HardwareConfig &hw) const {
        return single_bitwidth || c == BitClass::In ? hw.bits_simd_in : hw.bits_simd_out;
    }
};

// Profile table for each SIMD layer kind; throws std::logic_error for the
// conv family.
SimdOpProfile simd_profile(LayerKind kind, const SimdShape &shape);

// The dims the profile iterates over: the pooled output for forward pools,
// the layer shape otherwise.
SimdTile iteration_space(LayerKind kind, const SimdShape &shape);

// Elements of one outer tile of `t` for iteration-space tile `tile`.
count_t tensor_tile_volume(const ProfileTensor &t, const SimdTile &tile, const SimdShape &shape);

// Resident VMem bits for an outer tile of this profile.
count_t resident_bits(const SimdOpProfile &p, const SimdTile &tile, const SimdShape &shape,
        const HardwareConfig &hw);

// Sum of count * latency over the op map.
count_t weighted_latency(const OpCounts &ops, const OpLatency &lat);

} // namespace sasim

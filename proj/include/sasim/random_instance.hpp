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

#include <cstdint>
#include <random>

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"

namespace sasim {

struct ConvInstance {
    ConvShape shape;
    ConvTiling tiling;
    HardwareConfig hw;
};

struct SimdInstance {
    LayerKind kind = LayerKind::ReLU;
    SimdShape shape;
    SimdTiling tiling;
    HardwareConfig hw;
};

// Random small conv layer with every dimension <= max_dim, a random outer
// tiling (not necessarily dividing the dims, unless `divisor_tiles`), random
// J/K, bit-widths and interface bandwidths in [8, 512]. Buffers are sized so
// the tiling fits. Tilings with more than `max_tiles` outer tiles are redrawn.
ConvInstance random_conv_instance(std::mt19937_64 &rng, count_t max_dim, bool divisor_tiles = false,
        count_t max_tiles = 4096);

// Random forward conv shape (no tiling), dims <= max_dim.
ConvShape random_conv_shape(std::mt19937_64 &rng, count_t max_dim);

// Random SIMD layer of any SIMD kind with a random fitting tiling.
SimdInstance random_simd_instance(std::mt19937_64 &rng, count_t max_dim, count_t max_tiles = 4096);

} // namespace sasim

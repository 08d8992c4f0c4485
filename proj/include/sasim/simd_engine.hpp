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
#include "sasim/stats.hpp"

namespace sasim {

// Pipeline setup overhead of the 6-stage SIMD pipeline feeding K ALUs.
inline count_t simd_pso(const HardwareConfig &hw) {
    return 5 + (hw.simd_alus() - 1);
}

struct SimdMultipliers {
    SimdTile m; // ceil(space / T) per dimension
    count_t m_hwn = 0;
    count_t m_c = 0;
    count_t m_total = 0;

    static SimdMultipliers of(const SimdTile &space, const SimdTile &outer);
};

// Closed form for element-wise addition of two tensors.
LayerStats tensor_add_eval(const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw);

// Stats of every pass of a profile, in pass order.
std::vector<LayerStats> simd_pass_eval(const SimdOpProfile &profile, const SimdShape &shape,
        const SimdTiling &tiling, const HardwareConfig &hw);

// Sum of simd_pass_eval.
LayerStats simd_generic_eval(const SimdOpProfile &profile, const SimdShape &shape,
        const SimdTiling &tiling, const HardwareConfig &hw);

struct BnBackwardStats {
    LayerStats part1; // X-hat and the dgamma/dbeta reductions
    LayerStats part2; // input gradient
    LayerStats total;
};

// Closed form for both parts of the batch-norm backward schedule.
BnBackwardStats bn_backward_eval(const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw);

// Dispatch by layer kind: closed forms for TensorAdd and BnBackward, the
// profile table otherwise.
LayerStats simd_layer_eval(
        LayerKind kind, const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw);

} // namespace sasim

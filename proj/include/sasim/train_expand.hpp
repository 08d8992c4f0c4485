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

#include <utility>
#include <vector>

#include "sasim/layer.hpp"

namespace sasim {

struct BackwardConvShapes {
    ConvShape grad_ifmap;  // dL/dX as a stride-1 conv over the dilated, padded dY
    ConvShape grad_weight; // dL/dW as a stride-1 conv with the dilated dY as kernel
};

// Dilation and padding are folded into the ifmap extents; the forward
// padding is accounted for through the effective extent S(OH-1)+K.
BackwardConvShapes backward_conv_shapes(const ConvShape &fwd);

struct TrainingGraph {
    std::vector<LayerSpec> forward;
    std::vector<LayerSpec> backward;
    std::vector<LayerSpec> updates;

    // forward, then backward, then updates.
    std::vector<LayerSpec> all() const;
};

TrainingGraph expand_training(const std::vector<LayerSpec> &network);

// Forward graph for inference: batch-norm layers are folded away.
std::vector<LayerSpec> inference_workload(const std::vector<LayerSpec> &network);
std::vector<LayerSpec> training_workload(const std::vector<LayerSpec> &network);

// Sets the batch dimension of every layer; user tilings are dropped when
// their n no longer fits.
std::vector<LayerSpec> with_batch(std::vector<LayerSpec> network, count_t batch);

} // namespace sasim

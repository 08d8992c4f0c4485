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

#include "sasim/conv_engine.hpp"
#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/stats.hpp"

namespace sasim {

struct SimulationOptions {
    ModelVariant variant = ModelVariant::Full;
    ScheduleConventions conventions;
};

// Applies the layer's bit overrides, picks its tiling and runs the engine
// for its kind.
LayerResult evaluate_layer(
        const LayerSpec &layer, const HardwareConfig &hw, const SimulationOptions &opts = {});

NetworkStats simulate_network(const std::vector<LayerSpec> &layers, const HardwareConfig &hw,
        const SimulationOptions &opts = {});

} // namespace sasim

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

#include "sasim/simulator.hpp"

#include "sasim/simd_engine.hpp"
#include "sasim/tiler.hpp"

namespace sasim {

LayerResult evaluate_layer(
        const LayerSpec &layer, const HardwareConfig &base, const SimulationOptions &opts) {
    const HardwareConfig hw = layer.bits.apply(base);
    LayerResult r {layer, tiling_for_layer(layer, hw), {}};
    if (is_conv_family(layer.kind))
        r.stats = conv_eval(layer.conv(), std::get<ConvTiling>(r.tiling), hw, opts.variant,
                opts.conventions);
    else
        r.stats = simd_layer_eval(layer.kind, layer.simd(), std::get<SimdTiling>(r.tiling), hw);
    return r;
}

NetworkStats simulate_network(
        const std::vector<LayerSpec> &layers, const HardwareConfig &hw, const SimulationOptions &opts) {
    NetworkStats ns;
    ns.layers.reserve(layers.size());
    for (const auto &l : layers)
        ns.layers.push_back(evaluate_layer(l, hw, opts));
    ns.aggregate();
    return ns;
}

} // namespace sasim

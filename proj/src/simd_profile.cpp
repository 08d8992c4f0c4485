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

#include "sasim/simd_profile.hpp"

#include <algorithm>
#include <stdexcept>

namespace sasim {

namespace {

ProfileTensor load4d(const char *name, BitClass bits = BitClass::In) {
    return {name, TensorDir::Load, TensorExtent::Full4D, bits};
}

ProfileTensor store4d(const char *name, BitClass bits = BitClass::Out) {
    return {name, TensorDir::Store, TensorExtent::Full4D, bits};
}

ProfileTensor load1d(const char *name, BitClass bits = BitClass::In) {
    return {name, TensorDir::Load, TensorExtent::Channel1D, bits};
}

ProfileTensor store1d(const char *name, BitClass bits = BitClass::Out) {
    return {name, TensorDir::Store, TensorExtent::Channel1D, bits};
}

OpCounts ops(std::initializer_list<std::pair<OpKind, count_t>> entries) {
    OpCounts o;
    for (const auto &[k, v] : entries)
        o[k] = v;
    return o;
}

SimdOpProfile single_pass(LayerKind kind, std::vector<ProfileTensor> tensors, OpCounts element_ops) {
    SimdOpProfile p;
    p.kind = kind;
    SimdPass pass;
    pass.name = "main";
    pass.tile_tensors = std::move(tensors);
    pass.element_ops = element_ops;
    p.passes.push_back(std::move(pass));
    return p;
}

} // namespace

std::vector<ProfileTensor> SimdOpProfile::resident_tensors() const {
    std::vector<ProfileTensor> out;
    auto add = [&](const ProfileTensor &t) {
        for (const auto &seen : out)
            if (seen.name == t.name) return;
        out.push_back(t);
    };
    for (const auto &pass : passes) {
        for (const auto &t : pass.channel_loads) add(t);
        for (const auto &t : pass.tile_tensors) add(t);
        for (const auto &t : pass.channel_stores) add(t);
    }
    return out;
}

SimdOpProfile simd_profile(LayerKind kind, const SimdShape &shape) {
    const count_t window = shape.window.r_h * shape.window.r_w;
    switch (kind) {
        case LayerKind::ReLU:
            return single_pass(kind, {load4d("X"), store4d("Y")}, ops({{OpKind::Max, 1}}));
        case LayerKind::ReluBackward:
            return single_pass(kind, {load4d("X"), load4d("dY"), store4d("dX")},
                    ops({{OpKind::Max, 1}, {OpKind::Mul, 1}}));
        case LayerKind::TensorAdd: {
            auto p = single_pass(
                    kind, {load4d("A"), load4d("B"), store4d("Y")}, ops({{OpKind::Add, 1}}));
            p.vmem = VmemModel::PerOp;
            return p;
        }
        case LayerKind::TensorAddBackward:
            return single_pass(kind, {load4d("dY"), store4d("dA"), store4d("dB")}, {});
        case LayerKind::MaxPool:
            return single_pass(kind,
                    {{"X", TensorDir::Load, TensorExtent::PoolHalo, BitClass::In}, store4d("Y"),
                            store4d("mask")},
                    ops({{OpKind::Max, window - 1}}));
        case LayerKind::AvgPool:
        case LayerKind::GlobalAvgPool:
            return single_pass(kind,
                    {{"X", TensorDir::Load, TensorExtent::PoolHalo, BitClass::In}, store4d("Y")},
                    ops({{OpKind::Add, window - 1}, {OpKind::Mul, 1}}));
        case LayerKind::PoolBackward: {
            const ProfileTensor dy {"dY", TensorDir::Load, TensorExtent::PoolFootprint, BitClass::In};
            if (shape.pool == PoolMode::Max)
                return single_pass(kind,
                        {dy, {"mask", TensorDir::Load, TensorExtent::PoolFootprint, BitClass::In},
                                store4d("dX")},
                        ops({{OpKind::Max, 1}, {OpKind::Mul, 1}}));
            return single_pass(kind, {dy, store4d("dX")}, ops({{OpKind::Mul, 1}}));
        }
        case LayerKind::BatchNorm: {
            SimdOpProfile p;
            p.kind = kind;
            SimdPass mean;
            mean.name = "mean";
            mean.tile_tensors = {load4d("X")};
            mean.element_ops = ops({{OpKind::Add, 1}});
            mean.channel_ops_post = ops({{OpKind::Div, 1}});
            SimdPass norm;
            norm.name = "normalize";
            norm.channel_loads = {load1d("gamma"), load1d("beta")};
            norm.channel_ops_pre = ops({{OpKind::Div, 1}});
            norm.tile_tensors = {load4d("X"), store4d("Y")};
            norm.element_ops = ops({{OpKind::Sub, 2}, {OpKind::Mul, 2}, {OpKind::Add, 1}});
            norm.channel_stores = {store1d("mu"), store1d("psi")};
            p.passes = {mean, norm};
            return p;
        }
        case LayerKind::BnBackward: {
            SimdOpProfile p;
            p.kind = kind;
            p.vmem = VmemModel::PerOp;
            p.single_bitwidth = true;
            SimdPass part1;
            part1.name = "part1";
            part1.channel_loads = {load1d("mu"), load1d("psi")};
            part1.tile_tensors = {load4d("X"), load4d("dY"), store4d("Xhat")};
            part1.element_ops = ops({{OpKind::Sub, 1}, {OpKind::Mul, 2}, {OpKind::Add, 2}});
            part1.channel_stores = {store1d("dgamma"), store1d("dbeta")};
            SimdPass part2;
            part2.name = "part2";
            part2.channel_loads = {load1d("gamma")};
            part2.channel_ops_pre = ops({{OpKind::Mul, 1}, {OpKind::Div, 1}});
            part2.tile_tensors = {load4d("Xhat"), load4d("dY"), store4d("dX")};
            part2.element_ops = ops({{OpKind::Mul, 3}, {OpKind::Sub, 2}});
            p.passes = {part1, part2};
            return p;
        }
        case LayerKind::ParamUpdate:
            return single_pass(kind, {load4d("P"), load4d("G"), store4d("P")},
                    ops({{OpKind::Mul, 1}, {OpKind::Sub, 1}}));
        case LayerKind::Conv:
        case LayerKind::FC:
        case LayerKind::ConvGradIfmap:
        case LayerKind::ConvGradWeight: break;
    }
    throw std::logic_error("no SIMD profile for " + std::string(to_string(kind)));
}

SimdTile iteration_space(LayerKind kind, const SimdShape &shape) {
    if (is_pool(kind)) return {shape.pooled_h(), shape.pooled_w(), shape.n, shape.c};
    return {shape.h, shape.w, shape.n, shape.c};
}

count_t tensor_tile_volume(const ProfileTensor &t, const SimdTile &tile, const SimdShape &shape) {
    const auto &win = shape.window;
    switch (t.extent) {
        case TensorExtent::Full4D: return tile.h * tile.w * tile.n * tile.c;
        case TensorExtent::Channel1D: return tile.c;
        case TensorExtent::PoolHalo:
            return (win.stride * (tile.h - 1) + win.r_h) * (win.stride * (tile.w - 1) + win.r_w)
                    * tile.n * tile.c;
        case TensorExtent::PoolFootprint:
            return std::min(shape.pooled_h(), ceil_div(tile.h, win.stride))
                    * std::min(shape.pooled_w(), ceil_div(tile.w, win.stride)) * tile.n * tile.c;
    }
    return 0;
}

count_t resident_bits(const SimdOpProfile &p, const SimdTile &tile, const SimdShape &shape,
        const HardwareConfig &hw) {
    count_t bits = 0;
    for (const auto &t : p.resident_tensors())
        bits += tensor_tile_volume(t, tile, shape) * p.bits_of(t.bits, hw);
    return bits;
}

count_t weighted_latency(const OpCounts &ops, const OpLatency &lat) {
    count_t total = 0;
    for (OpKind k : kAllOpKinds) {
        if (k == OpKind::Mac || ops[k] == 0) continue;
        total += ops[k] * lat.of(k);
    }
    return total;
}

} // namespace sasim

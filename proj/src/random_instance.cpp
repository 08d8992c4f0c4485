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

#include "sasim/random_instance.hpp"

#include <algorithm>
#include <array>

#include "sasim/simd_profile.hpp"
#include "sasim/tiler.hpp"

namespace sasim {

namespace {

count_t uniform(std::mt19937_64 &rng, count_t lo, count_t hi) {
    return std::uniform_int_distribution<count_t>(lo, hi)(rng);
}

template <typename T, std::size_t N>
T pick(std::mt19937_64 &rng, const std::array<T, N> &from) {
    return from[uniform(rng, 0, N - 1)];
}

count_t random_tile(std::mt19937_64 &rng, count_t dim, bool divisor) {
    if (!divisor) return uniform(rng, 1, dim);
    const auto ds = divisors_desc(dim);
    return ds[uniform(rng, 0, ds.size() - 1)];
}

HardwareConfig random_platform(std::mt19937_64 &rng) {
    HardwareConfig hw;
    hw.name = "random";
    hw.pe_rows = pick(rng, std::array<count_t, 4> {1, 2, 4, 8});
    hw.pe_cols = pick(rng, std::array<count_t, 4> {1, 2, 4, 8});
    hw.bw_w = uniform(rng, 8, 512);
    hw.bw_i = uniform(rng, 8, 512);
    hw.bw_o = uniform(rng, 8, 512);
    hw.bw_v = uniform(rng, 8, 512);
    hw.bits_weight = pick(rng, std::array<count_t, 2> {8, 16});
    hw.bits_ifmap = pick(rng, std::array<count_t, 2> {8, 16});
    hw.bits_psum = pick(rng, std::array<count_t, 2> {16, 32});
    hw.bits_bias = pick(rng, std::array<count_t, 2> {16, 32});
    hw.bits_simd_in = pick(rng, std::array<count_t, 2> {16, 32});
    hw.bits_simd_out = pick(rng, std::array<count_t, 2> {16, 32});
    hw.op_latency = {uniform(rng, 1, 3), uniform(rng, 1, 3), uniform(rng, 1, 3), uniform(rng, 1, 8),
            uniform(rng, 1, 3)};
    hw.imem_bytes = 1024;
    return hw;
}

// Smallest byte capacity whose usable share holds `bits`, plus random slack.
count_t capacity_for(std::mt19937_64 &rng, count_t bits, count_t share) {
    return ceil_div(bits * share, 8) + uniform(rng, 0, 64);
}

} // namespace

ConvShape random_conv_shape(std::mt19937_64 &rng, count_t max_dim) {
    ConvShape s;
    s.n = uniform(rng, 1, std::min<count_t>(4, max_dim));
    s.ic = uniform(rng, 1, max_dim);
    s.oc = uniform(rng, 1, max_dim);
    s.stride = uniform(rng, 1, 3);
    s.pad_h = uniform(rng, 0, 2);
    s.pad_w = uniform(rng, 0, 2);
    s.ih = uniform(rng, 1, max_dim);
    s.iw = uniform(rng, 1, max_dim);
    s.kh = uniform(rng, 1, std::min(max_dim, s.ih + 2 * s.pad_h));
    s.kw = uniform(rng, 1, std::min(max_dim, s.iw + 2 * s.pad_w));
    s.oh = ConvShape::out_extent(s.ih, s.pad_h, s.kh, s.stride);
    s.ow = ConvShape::out_extent(s.iw, s.pad_w, s.kw, s.stride);
    s.has_bias = uniform(rng, 0, 1) == 1;
    return s;
}

ConvInstance random_conv_instance(
        std::mt19937_64 &rng, count_t max_dim, bool divisor_tiles, count_t max_tiles) {
    ConvInstance inst;
    inst.shape = random_conv_shape(rng, max_dim);
    inst.hw = random_platform(rng);
    const auto &s = inst.shape;
    ConvTile T;
    count_t tiles = 0;
    do {
        T.oh = random_tile(rng, s.oh, divisor_tiles);
        T.ow = random_tile(rng, s.ow, divisor_tiles);
        T.n = random_tile(rng, s.n, divisor_tiles);
        T.kh = random_tile(rng, s.kh, divisor_tiles);
        T.kw = random_tile(rng, s.kw, divisor_tiles);
        T.ic = random_tile(rng, s.ic, divisor_tiles);
        T.oc = random_tile(rng, s.oc, divisor_tiles);
        tiles = ceil_div(s.oh, T.oh) * ceil_div(s.ow, T.ow) * ceil_div(s.n, T.n)
                * ceil_div(s.kh, T.kh) * ceil_div(s.kw, T.kw) * ceil_div(s.ic, T.ic)
                * ceil_div(s.oc, T.oc);
    } while (tiles > max_tiles);

    auto &hw = inst.hw;
    hw.wbuf_bytes = capacity_for(rng, T.kh * T.kw * T.ic * T.oc * hw.bits_weight, 2);
    hw.ibuf_bytes = capacity_for(rng, T.ih(s.stride) * T.iw(s.stride) * T.n * T.ic * hw.bits_ifmap, 2);
    hw.obuf_bytes = capacity_for(rng, T.oh * T.ow * T.n * T.oc * hw.bits_psum, 2);
    hw.bbuf_bytes = capacity_for(rng, T.oc * hw.bits_bias, 2);
    hw.vmem_bytes = 1024;
    inst.tiling = make_conv_tiling(T, hw);
    return inst;
}

SimdInstance random_simd_instance(std::mt19937_64 &rng, count_t max_dim, count_t max_tiles) {
    constexpr std::array<LayerKind, 11> kinds = {LayerKind::ReLU, LayerKind::TensorAdd,
            LayerKind::MaxPool, LayerKind::AvgPool, LayerKind::GlobalAvgPool, LayerKind::BatchNorm,
            LayerKind::ReluBackward, LayerKind::TensorAddBackward, LayerKind::PoolBackward,
            LayerKind::BnBackward, LayerKind::ParamUpdate};
    SimdInstance inst;
    inst.kind = pick(rng, kinds);
    inst.hw = random_platform(rng);
    auto &s = inst.shape;
    s.h = uniform(rng, 1, max_dim);
    s.w = uniform(rng, 1, max_dim);
    s.n = uniform(rng, 1, std::min<count_t>(4, max_dim));
    s.c = uniform(rng, 1, max_dim);
    if (inst.kind == LayerKind::GlobalAvgPool) {
        s.pool = PoolMode::Avg;
        s.window = {s.h, s.w, 1, 0, 0};
    } else if (is_pool(inst.kind) || inst.kind == LayerKind::PoolBackward) {
        s.pool = inst.kind == LayerKind::AvgPool ? PoolMode::Avg
                : inst.kind == LayerKind::MaxPool ? PoolMode::Max
                : (uniform(rng, 0, 1) ? PoolMode::Max : PoolMode::Avg);
        s.window.pad_h = uniform(rng, 0, 1);
        s.window.pad_w = uniform(rng, 0, 1);
        s.window.r_h = uniform(rng, 1, std::min<count_t>(3, s.h + 2 * s.window.pad_h));
        s.window.r_w = uniform(rng, 1, std::min<count_t>(3, s.w + 2 * s.window.pad_w));
        s.window.stride = uniform(rng, 1, 2);
    }

    const SimdTile space = iteration_space(inst.kind, s);
    SimdTile T;
    count_t tiles = 0;
    do {
        T = {uniform(rng, 1, space.h), uniform(rng, 1, space.w), uniform(rng, 1, space.n),
                uniform(rng, 1, space.c)};
        tiles = ceil_div(space.h, T.h) * ceil_div(space.w, T.w) * ceil_div(space.n, T.n)
                * ceil_div(space.c, T.c);
    } while (tiles > max_tiles);

    auto &hw = inst.hw;
    hw.wbuf_bytes = hw.ibuf_bytes = hw.obuf_bytes = hw.bbuf_bytes = 1024;
    hw.vmem_bytes = capacity_for(rng, resident_bits(simd_profile(inst.kind, s), T, s, hw), 1);
    inst.tiling = make_simd_tiling(T, hw);
    return inst;
}

} // namespace sasim

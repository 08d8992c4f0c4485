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

#include "sasim/simd_engine.hpp"

namespace sasim {

SimdMultipliers SimdMultipliers::of(const SimdTile &space, const SimdTile &T) {
    SimdMultipliers m;
    m.m = {ceil_div(space.h, T.h), ceil_div(space.w, T.w), ceil_div(space.n, T.n),
            ceil_div(space.c, T.c)};
    m.m_hwn = m.m.h * m.m.w * m.m.n;
    m.m_c = m.m.c;
    m.m_total = m.m_hwn * m.m_c;
    return m;
}

LayerStats tensor_add_eval(const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw) {
    const SimdTile &T = tiling.outer;
    const auto M = SimdMultipliers::of({shape.h, shape.w, shape.n, shape.c}, T).m_total;
    const count_t v_tile = T.h * T.w * T.n * T.c;
    const count_t bits_per_elem = 2 * hw.bits_simd_in + hw.bits_simd_out;

    LayerStats st;
    st.executed_on = Unit::SIMD;
    st.dram_bits[DramStream::SimdIn] = v_tile * M * 2 * hw.bits_simd_in;
    st.dram_bits[DramStream::SimdOut] = v_tile * M * hw.bits_simd_out;
    st.sram_bits[Buffer::VMem] = v_tile * M * bits_per_elem;
    st.op_counts[OpKind::Add] = v_tile * M;

    const count_t c_tile = T.h * T.w * T.n * ceil_div(T.c, hw.simd_alus()) * hw.op_latency.add;
    st.compute_cycles = (c_tile + simd_pso(hw)) * M;
    st.stall_cycles = ceil_div(v_tile * bits_per_elem, hw.bw_v) * M;
    st.total_cycles = st.compute_cycles + st.stall_cycles;
    return st;
}

namespace {

struct SegmentBits {
    count_t load = 0;
    count_t store = 0;
};

SegmentBits tensor_bits(const std::vector<ProfileTensor> &tensors, const SimdOpProfile &p,
        const SimdTile &tile, const SimdShape &shape, const HardwareConfig &hw) {
    SegmentBits b;
    for (const auto &t : tensors) {
        const count_t bits = tensor_tile_volume(t, tile, shape) * p.bits_of(t.bits, hw);
        (t.dir == TensorDir::Load ? b.load : b.store) += bits;
    }
    return b;
}

bool any_ops(const OpCounts &ops) {
    return ops.sum() != 0;
}

} // namespace

std::vector<LayerStats> simd_pass_eval(const SimdOpProfile &p, const SimdShape &shape,
        const SimdTiling &tiling, const HardwareConfig &hw) {
    const SimdTile &T = tiling.outer;
    const auto mult = SimdMultipliers::of(iteration_space(p.kind, shape), T);
    const count_t c_steps = ceil_div(T.c, hw.simd_alus());
    const count_t spatial = T.h * T.w * T.n;
    const auto &lat = hw.op_latency;

    std::vector<LayerStats> out;
    for (const auto &pass : p.passes) {
        LayerStats st;
        st.executed_on = Unit::SIMD;

        // Per c-tile: channel prologue, m_hwn spatial tiles, channel epilogue.
        const auto pre = tensor_bits(pass.channel_loads, p, T, shape, hw);
        const auto tile = tensor_bits(pass.tile_tensors, p, T, shape, hw);
        const auto post = tensor_bits(pass.channel_stores, p, T, shape, hw);

        const count_t pre_compute = any_ops(pass.channel_ops_pre)
                ? c_steps * weighted_latency(pass.channel_ops_pre, lat)
                : 0;
        const count_t post_compute = any_ops(pass.channel_ops_post)
                ? c_steps * weighted_latency(pass.channel_ops_post, lat)
                : 0;
        const count_t tile_compute
                = spatial * c_steps * weighted_latency(pass.element_ops, lat) + simd_pso(hw);

        const count_t per_c_compute = pre_compute + tile_compute * mult.m_hwn + post_compute;
        const count_t per_c_stall = ceil_div(pre.load + pre.store, hw.bw_v)
                + ceil_div(tile.load + tile.store, hw.bw_v) * mult.m_hwn
                + ceil_div(post.load + post.store, hw.bw_v);
        st.compute_cycles = per_c_compute * mult.m_c;
        st.stall_cycles = per_c_stall * mult.m_c;
        st.total_cycles = st.compute_cycles + st.stall_cycles;

        st.dram_bits[DramStream::SimdIn]
                = (pre.load + tile.load * mult.m_hwn + post.load) * mult.m_c;
        st.dram_bits[DramStream::SimdOut]
                = (pre.store + tile.store * mult.m_hwn + post.store) * mult.m_c;

        for (OpKind k : kAllOpKinds) {
            st.op_counts[k] = pass.element_ops[k] * spatial * T.c * mult.m_hwn * mult.m_c
                    + (pass.channel_ops_pre[k] + pass.channel_ops_post[k]) * T.c * mult.m_c;
        }
        if (p.vmem == VmemModel::PerOp)
            st.sram_bits[Buffer::VMem] = st.op_counts.sum()
                    * (2 * p.bits_of(BitClass::In, hw) + p.bits_of(BitClass::Out, hw));
        else
            st.sram_bits[Buffer::VMem] = st.dram_total();
        out.push_back(st);
    }
    return out;
}

LayerStats simd_generic_eval(const SimdOpProfile &p, const SimdShape &shape,
        const SimdTiling &tiling, const HardwareConfig &hw) {
    LayerStats total;
    total.executed_on = Unit::SIMD;
    for (const auto &s : simd_pass_eval(p, shape, tiling, hw))
        total += s;
    return total;
}

BnBackwardStats bn_backward_eval(
        const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw) {
    const SimdTile &T = tiling.outer;
    const auto mult = SimdMultipliers::of({shape.h, shape.w, shape.n, shape.c}, T);
    const count_t b = hw.bits_simd_in;
    const count_t v1d = T.c;
    const count_t v4d = T.h * T.w * T.n * T.c;
    const count_t m_hwn = mult.m_hwn;
    const count_t m_c = mult.m_c;
    const count_t steps = ceil_div(T.c, hw.simd_alus());
    const count_t pso = simd_pso(hw);
    const auto &lat = hw.op_latency;

    BnBackwardStats r;

    // Part 1: load mu, psi; per 4D tile load X, dY, store X-hat with
    // sub + 2 mul + 2 add per element; store dgamma, dbeta.
    LayerStats &p1 = r.part1;
    p1.executed_on = Unit::SIMD;
    p1.dram_bits[DramStream::SimdIn] = (2 * v1d + 2 * v4d * m_hwn) * m_c * b;
    p1.dram_bits[DramStream::SimdOut] = (v4d * m_hwn + 2 * v1d) * m_c * b;
    p1.op_counts[OpKind::Sub] = v4d * m_hwn * m_c;
    p1.op_counts[OpKind::Mul] = 2 * v4d * m_hwn * m_c;
    p1.op_counts[OpKind::Add] = 2 * v4d * m_hwn * m_c;
    p1.sram_bits[Buffer::VMem] = p1.op_counts.sum() * 3 * b;
    const count_t c4d_1 = T.h * T.w * T.n * steps * (lat.sub + 2 * lat.mul + 2 * lat.add);
    p1.compute_cycles = (c4d_1 + pso) * m_hwn * m_c;
    p1.stall_cycles = (2 * ceil_div(2 * v1d * b, hw.bw_v) + ceil_div(3 * v4d * b, hw.bw_v) * m_hwn)
            * m_c;
    p1.total_cycles = p1.compute_cycles + p1.stall_cycles;

    // Part 2: one 1D load with mul + div per channel; per 4D tile two loads,
    // one store and 3 mul + 2 sub per element.
    LayerStats &p2 = r.part2;
    p2.executed_on = Unit::SIMD;
    p2.dram_bits[DramStream::SimdIn] = (v1d + 2 * v4d * m_hwn) * m_c * b;
    p2.dram_bits[DramStream::SimdOut] = v4d * m_hwn * m_c * b;
    p2.op_counts[OpKind::Mul] = (v1d + 3 * v4d * m_hwn) * m_c;
    p2.op_counts[OpKind::Div] = v1d * m_c;
    p2.op_counts[OpKind::Sub] = 2 * v4d * m_hwn * m_c;
    p2.sram_bits[Buffer::VMem] = p2.op_counts.sum() * 3 * b;
    const count_t c1d = steps * (lat.mul + lat.div);
    const count_t c4d = T.h * T.w * T.n * steps * (3 * lat.mul + 2 * lat.sub);
    p2.compute_cycles = ((c4d + pso) * m_hwn + c1d) * m_c;
    p2.stall_cycles = (ceil_div(v1d * b, hw.bw_v) + ceil_div(3 * v4d * b, hw.bw_v) * m_hwn) * m_c;
    p2.total_cycles = p2.compute_cycles + p2.stall_cycles;

    r.total.executed_on = Unit::SIMD;
    r.total += p1;
    r.total += p2;
    return r;
}

LayerStats simd_layer_eval(
        LayerKind kind, const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw) {
    if (kind == LayerKind::TensorAdd) return tensor_add_eval(shape, tiling, hw);
    if (kind == LayerKind::BnBackward) return bn_backward_eval(shape, tiling, hw).total;
    return simd_generic_eval(simd_profile(kind, shape), shape, tiling, hw);
}

} // namespace sasim

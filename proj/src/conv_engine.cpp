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

#include "sasim/conv_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace sasim {

std::string_view to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::Full: return "full";
        case ModelVariant::NoStall: return "nostall";
        case ModelVariant::Simplified: return "simplified";
    }
    return "?";
}

std::optional<ModelVariant> parse_model_variant(std::string_view text) {
    if (text == "full") return ModelVariant::Full;
    if (text == "nostall") return ModelVariant::NoStall;
    if (text == "simplified") return ModelVariant::Simplified;
    return std::nullopt;
}

ConvMultipliers ConvMultipliers::of(const ConvShape &s, const ConvTiling &tiling) {
    const ConvTile &T = tiling.outer;
    const ConvTile &t = tiling.inner;
    ConvMultipliers m;
    m.m = {ceil_div(s.oh, T.oh), ceil_div(s.ow, T.ow), ceil_div(s.n, T.n), ceil_div(s.kh, T.kh),
            ceil_div(s.kw, T.kw), ceil_div(s.ic, T.ic), ceil_div(s.oc, T.oc)};
    m.r = {ceil_div(T.oh, t.oh), ceil_div(T.ow, t.ow), ceil_div(T.n, t.n), ceil_div(T.kh, t.kh),
            ceil_div(T.kw, t.kw), ceil_div(T.ic, t.ic), ceil_div(T.oc, t.oc)};
    m.m_reduce = m.m.kh * m.m.kw * m.m.ic;
    m.m_w_tile = m.m_reduce * m.m.oc;
    m.m_store = m.m.oh * m.m.ow * m.m.n * m.m.oc;
    m.m_outer = m.m_store * m.m_reduce;
    m.m_p_tile = m.m_store * (2 * m.m_reduce - 1);
    m.m_inner = m.r.oh * m.r.ow * m.r.n * m.r.kh * m.r.kw * m.r.ic * m.r.oc;
    return m;
}

ConvVolumes ConvVolumes::of(const ConvShape &s, const ConvTiling &tiling) {
    const ConvTile &T = tiling.outer;
    const ConvTile &t = tiling.inner;
    ConvVolumes v;
    v.weight = T.kh * T.kw * T.ic * T.oc;
    v.ifmap = T.ih(s.stride) * T.iw(s.stride) * T.n * T.ic;
    v.psum = T.oh * T.ow * T.n * T.oc;
    v.bias = s.has_bias ? T.oc : 0;
    v.inner_weight = t.kh * t.kw * t.ic * t.oc;
    v.inner_ifmap = t.ih(s.stride) * t.iw(s.stride) * t.n * t.ic;
    v.inner_psum = t.oh * t.ow * t.n * t.oc;
    return v;
}

DramBits conv_dram_accesses(const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw) {
    const auto m = ConvMultipliers::of(s, tiling);
    const auto v = ConvVolumes::of(s, tiling);
    DramBits bits;
    bits[DramStream::Weight] = v.weight * m.m_w_tile * hw.bits_weight;
    bits[DramStream::Ifmap] = v.ifmap * m.m_outer * hw.bits_ifmap;
    bits[DramStream::PsumOfmap] = v.psum * m.m_p_tile * hw.bits_psum;
    bits[DramStream::Bias] = v.bias * m.m.oc * hw.bits_bias;
    return bits;
}

SramBits conv_sram_accesses(const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw) {
    const auto m = ConvMultipliers::of(s, tiling);
    const auto v = ConvVolumes::of(s, tiling);
    const count_t iters = m.m_inner * m.m_outer;
    const count_t ofmap = s.oh * s.ow * s.n * s.oc;
    SramBits bits;
    bits[Buffer::WBuf] = v.inner_weight * iters * hw.bits_weight;
    bits[Buffer::IBuf] = v.inner_ifmap * iters * hw.bits_ifmap;
    bits[Buffer::OBuf] = (v.inner_psum * 2 * iters - ofmap) * hw.bits_psum;
    bits[Buffer::BBuf] = s.has_bias ? ofmap * hw.bits_bias : 0;
    return bits;
}

ConvComputeCycles conv_compute_cycles(
        const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw) {
    const ConvTile &T = tiling.outer;
    ConvComputeCycles c;
    c.c_tile = T.oh * T.ow * T.n * T.kh * T.kw * ceil_div(T.ic, hw.pe_rows)
            * ceil_div(T.oc, hw.pe_cols);
    c.pso = (hw.pe_rows - 1) + (hw.pe_cols - 1);
    c.m_outer = ConvMultipliers::of(s, tiling).m_outer;
    c.total = (c.c_tile + c.pso) * c.m_outer;
    return c;
}

ConvTransferCycles ConvTransferCycles::of(
        const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw) {
    const auto v = ConvVolumes::of(s, tiling);
    const count_t wbits = v.weight * hw.bits_weight;
    const count_t pbits = v.psum * hw.bits_psum;
    ConvTransferCycles t;
    t.weight = ceil_div(wbits, hw.bw_w);
    t.weight_bias = ceil_div(wbits + v.bias * hw.bits_bias, hw.bw_w);
    t.ifmap = ceil_div(v.ifmap * hw.bits_ifmap, hw.bw_i);
    t.psum_store = ceil_div(pbits, hw.bw_o);
    t.psum_store_load = ceil_div(2 * pbits, hw.bw_o);
    return t;
}

const StallCase &StallCaseBreakdown::by_label(int label) const {
    for (const auto &c : cases)
        if (c.label == label) return c;
    throw std::out_of_range("no stall case " + std::to_string(label));
}

count_t StallCaseBreakdown::occurrence_sum() const {
    count_t n = 0;
    for (const auto &c : cases)
        n += c.occurrences;
    return n;
}

std::array<std::int64_t, 4> conv_case_occurrences(const ConvMultipliers &m) {
    const auto outer = static_cast<std::int64_t>(m.m_outer);
    const auto o5 = static_cast<std::int64_t>(m.m.oc);
    const auto o4 = static_cast<std::int64_t>(m.m_w_tile) - o5;
    const auto psum_loads = outer - static_cast<std::int64_t>(m.m_store);
    const auto o2 = psum_loads - o4;
    const auto o1 = outer - o2 - o4 - o5;
    return {o1, o2, o4, o5};
}

StallCaseBreakdown conv_stall_cycles(const ConvShape &s, const ConvTiling &tiling,
        const HardwareConfig &hw, const ScheduleConventions &conv) {
    const auto m = ConvMultipliers::of(s, tiling);
    const auto c = conv_compute_cycles(s, tiling, hw);
    const auto x = ConvTransferCycles::of(s, tiling, hw);
    const auto occ = conv_case_occurrences(m);

    const std::array<count_t, 4> busy = {
            std::max({c.c_tile, x.ifmap, x.psum_store}),
            std::max({c.c_tile, x.ifmap, x.psum_store_load}),
            std::max({c.c_tile, x.weight, x.ifmap, x.psum_store_load}),
            std::max({c.c_tile, x.weight_bias, x.ifmap, x.psum_store}),
    };
    constexpr std::array<int, 4> labels = {1, 2, 4, 5};

    StallCaseBreakdown out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (occ[i] < 0) throw std::logic_error("negative stall-case occurrence count");
        StallCase &sc = out.cases[i];
        sc.label = labels[i];
        sc.occurrences = static_cast<count_t>(occ[i]);
        sc.busy_per_tile = busy[i];
        sc.stall_per_tile = busy[i] - c.c_tile;
        sc.subtotal = sc.occurrences * sc.stall_per_tile;
        out.total += sc.subtotal;
    }
    if (conv.include_prologue_epilogue) {
        out.prologue_epilogue = std::max(x.weight_bias, x.ifmap) + x.psum_store;
        out.total += out.prologue_epilogue;
    }
    return out;
}

LayerStats conv_eval(const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw,
        ModelVariant variant, const ScheduleConventions &conv) {
    LayerStats st;
    st.executed_on = Unit::SA;
    st.dram_bits = conv_dram_accesses(s, tiling, hw);
    st.sram_bits = conv_sram_accesses(s, tiling, hw);
    st.op_counts[OpKind::Mac] = s.macs();
    if (s.has_bias) st.op_counts[OpKind::Add] = s.oh * s.ow * s.n * s.oc;
    st.compute_cycles = conv_compute_cycles(s, tiling, hw).total;

    switch (variant) {
        case ModelVariant::Full:
            st.stall_cycles = conv_stall_cycles(s, tiling, hw, conv).total;
            break;
        case ModelVariant::NoStall: st.stall_cycles = 0; break;
        case ModelVariant::Simplified: {
            const auto &d = st.dram_bits;
            const count_t bound = std::max({st.compute_cycles,
                    ceil_div(d[DramStream::Weight] + d[DramStream::Bias], hw.bw_w),
                    ceil_div(d[DramStream::Ifmap], hw.bw_i),
                    ceil_div(d[DramStream::PsumOfmap], hw.bw_o)});
            st.stall_cycles = bound - st.compute_cycles;
            break;
        }
    }
    st.total_cycles = st.compute_cycles + st.stall_cycles;
    return st;
}

} // namespace sasim

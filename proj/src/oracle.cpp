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

#include "sasim/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <tuple>

#include "sasim/simd_engine.hpp"
#include "sasim/simd_profile.hpp"

namespace sasim {

std::string_view to_string(Interface i) {
    switch (i) {
        case Interface::WeightBias: return "wb";
        case Interface::Ifmap: return "i";
        case Interface::Psum: return "o";
        case Interface::Vector: return "v";
    }
    return "?";
}

namespace {

// One DRAM channel. Transfers queued in a segment stream back to back; the
// channel's busy time is rounded up to whole cycles only when it goes idle.
class Channel {
public:
    Channel(Interface iface, count_t bw) : iface_(iface), bw_(bw) {}

    void begin(count_t cycle) {
        start_ = cycle;
        queued_bits_ = 0;
    }

    TransferSpan push(DramStream stream, bool load, count_t bits) {
        TransferSpan t;
        t.iface = iface_;
        t.stream = stream;
        t.load = load;
        t.bits = bits;
        t.span.start = start_ + queued_bits_ / bw_;
        queued_bits_ += bits;
        t.span.end = start_ + ceil_div(queued_bits_, bw_);
        return t;
    }

    count_t idle_at() const { return start_ + ceil_div(queued_bits_, bw_); }

private:
    Interface iface_;
    count_t bw_;
    count_t start_ = 0;
    count_t queued_bits_ = 0;
};

} // namespace

TileEventTrace simulate_conv(const ConvShape &s, const ConvTiling &tiling, const HardwareConfig &hw,
        const ScheduleConventions &conv) {
    const ConvTile &T = tiling.outer;
    const count_t m_oh = ceil_div(s.oh, T.oh), m_ow = ceil_div(s.ow, T.ow), m_n = ceil_div(s.n, T.n);
    const count_t m_kh = ceil_div(s.kh, T.kh), m_kw = ceil_div(s.kw, T.kw);
    const count_t m_ic = ceil_div(s.ic, T.ic), m_oc = ceil_div(s.oc, T.oc);

    const count_t weight_bits = T.kh * T.kw * T.ic * T.oc * hw.bits_weight;
    const count_t bias_bits = s.has_bias ? T.oc * hw.bits_bias : 0;
    const count_t ifmap_bits = T.ih(s.stride) * T.iw(s.stride) * T.n * T.ic * hw.bits_ifmap;
    const count_t psum_bits = T.oh * T.ow * T.n * T.oc * hw.bits_psum;
    const count_t c_tile = T.oh * T.ow * T.n * T.kh * T.kw * ceil_div(T.ic, hw.pe_rows)
            * ceil_div(T.oc, hw.pe_cols);
    const count_t pso = (hw.pe_rows - 1) + (hw.pe_cols - 1);

    Channel wb(Interface::WeightBias, hw.bw_w), in(Interface::Ifmap, hw.bw_i),
            out(Interface::Psum, hw.bw_o);

    TileEventTrace tr;
    count_t now = 0;
    std::optional<std::tuple<count_t, count_t, count_t, count_t>> resident_weight;
    std::optional<count_t> resident_oc;
    std::vector<bool> psum_written(m_oh * m_ow * m_n * m_oc, false);

    auto close_segment = [&](TileEvent &ev, count_t busy_until) {
        const count_t end = std::max({busy_until, wb.idle_at(), in.idle_at(), out.idle_at()});
        ev.segment = {now, end};
        now = end;
    };

    if (conv.include_prologue_epilogue) {
        TileEvent ev;
        wb.begin(now);
        in.begin(now);
        out.begin(now);
        ev.transfers.push_back(wb.push(DramStream::Weight, true, weight_bits));
        if (bias_bits) ev.transfers.push_back(wb.push(DramStream::Bias, true, bias_bits));
        ev.transfers.push_back(in.push(DramStream::Ifmap, true, ifmap_bits));
        ev.compute = {now, now};
        close_segment(ev, now);
        tr.events.push_back(ev);
    }

    count_t index = 0;
    for (count_t oc = 0; oc < m_oc; ++oc)
        for (count_t ic = 0; ic < m_ic; ++ic)
            for (count_t kh = 0; kh < m_kh; ++kh)
                for (count_t kw = 0; kw < m_kw; ++kw)
                    for (count_t oh = 0; oh < m_oh; ++oh)
                        for (count_t ow = 0; ow < m_ow; ++ow)
                            for (count_t n = 0; n < m_n; ++n) {
                                TileEvent ev;
                                ev.index = index++;
                                wb.begin(now + pso);
                                in.begin(now + pso);
                                out.begin(now + pso);

                                const auto wkey = std::make_tuple(oc, ic, kh, kw);
                                const bool new_oc = resident_oc != oc;
                                const bool new_weight = resident_weight != wkey;
                                resident_oc = oc;
                                resident_weight = wkey;
                                const count_t p_idx = ((oc * m_oh + oh) * m_ow + ow) * m_n + n;
                                const bool psum_load = psum_written[p_idx];
                                psum_written[p_idx] = true;

                                if (new_weight)
                                    ev.transfers.push_back(wb.push(DramStream::Weight, true, weight_bits));
                                if (new_oc && bias_bits)
                                    ev.transfers.push_back(wb.push(DramStream::Bias, true, bias_bits));
                                ev.transfers.push_back(in.push(DramStream::Ifmap, true, ifmap_bits));
                                // The psum store of this tile's result precedes the load of
                                // the partial it continues from on the shared interface.
                                ev.transfers.push_back(out.push(DramStream::PsumOfmap, false, psum_bits));
                                if (psum_load)
                                    ev.transfers.push_back(out.push(DramStream::PsumOfmap, true, psum_bits));

                                ev.case_label = (new_oc ? 4 : 0) + (new_weight && !new_oc ? 2 : 0)
                                        + (psum_load ? 1 : 0) + 1;
                                ev.compute = {now + pso, now + pso + c_tile};
                                close_segment(ev, ev.compute.end);
                                tr.compute_cycles += pso + c_tile;
                                ++tr.case_counts[ev.case_label];
                                for (const auto &t : ev.transfers)
                                    tr.bits[t.stream] += t.bits;
                                tr.events.push_back(std::move(ev));
                            }

    if (conv.include_prologue_epilogue) {
        TileEvent ev;
        ev.index = index;
        out.begin(now);
        wb.begin(now);
        in.begin(now);
        ev.transfers.push_back(out.push(DramStream::PsumOfmap, false, psum_bits));
        ev.compute = {now, now};
        close_segment(ev, now);
        tr.events.push_back(ev);
    }
    tr.total_cycles = now;
    return tr;
}

TileEventTrace simulate_simd(
        LayerKind kind, const SimdShape &shape, const SimdTiling &tiling, const HardwareConfig &hw) {
    const SimdOpProfile p = simd_profile(kind, shape);
    const SimdTile space = iteration_space(kind, shape);
    const SimdTile &T = tiling.outer;
    const count_t bw = hw.bw_v;
    const count_t steps = ceil_div(T.c, hw.simd_alus());
    const count_t pso = simd_pso(hw);

    TileEventTrace tr;
    count_t tick = 0; // 1 cycle = bw ticks
    count_t index = 0;

    // Loads stream in, compute runs, stores stream out; the segment ends on
    // the next cycle boundary.
    auto segment = [&](std::size_t pass, const std::vector<ProfileTensor> &tensors, count_t compute) {
        if (tensors.empty() && compute == 0) return;
        TileEvent ev;
        ev.index = index++;
        ev.pass = pass;
        const count_t start = tick;
        for (const auto &t : tensors) {
            if (t.dir != TensorDir::Load) continue;
            const count_t bits = tensor_tile_volume(t, T, shape) * p.bits_of(t.bits, hw);
            ev.transfers.push_back({Interface::Vector, DramStream::SimdIn, true, bits,
                    {tick / bw, ceil_div(tick + bits, bw)}});
            tick += bits;
            tr.bits[DramStream::SimdIn] += bits;
        }
        ev.compute = {ceil_div(tick, bw), ceil_div(tick, bw) + compute};
        tick += compute * bw;
        for (const auto &t : tensors) {
            if (t.dir != TensorDir::Store) continue;
            const count_t bits = tensor_tile_volume(t, T, shape) * p.bits_of(t.bits, hw);
            ev.transfers.push_back({Interface::Vector, DramStream::SimdOut, false, bits,
                    {tick / bw, ceil_div(tick + bits, bw)}});
            tick += bits;
            tr.bits[DramStream::SimdOut] += bits;
        }
        tick = ceil_div(tick, bw) * bw;
        ev.segment = {start / bw, tick / bw};
        tr.compute_cycles += compute;
        tr.events.push_back(std::move(ev));
    };

    const count_t m_h = ceil_div(space.h, T.h), m_w = ceil_div(space.w, T.w);
    const count_t m_n = ceil_div(space.n, T.n), m_c = ceil_div(space.c, T.c);
    for (std::size_t pi = 0; pi < p.passes.size(); ++pi) {
        const SimdPass &pass = p.passes[pi];
        const count_t pre = steps * weighted_latency(pass.channel_ops_pre, hw.op_latency);
        const count_t post = steps * weighted_latency(pass.channel_ops_post, hw.op_latency);
        const count_t tile
                = T.h * T.w * T.n * steps * weighted_latency(pass.element_ops, hw.op_latency) + pso;
        for (count_t c = 0; c < m_c; ++c) {
            segment(pi, pass.channel_loads, pre);
            for (count_t n = 0; n < m_n; ++n)
                for (count_t h = 0; h < m_h; ++h)
                    for (count_t w = 0; w < m_w; ++w)
                        segment(pi, pass.tile_tensors, tile);
            segment(pi, pass.channel_stores, post);
        }
    }
    tr.total_cycles = tick / bw;
    return tr;
}

std::vector<PassTotals> pass_totals(const TileEventTrace &trace) {
    std::vector<PassTotals> out;
    for (const auto &ev : trace.events) {
        if (out.size() <= ev.pass) out.resize(ev.pass + 1);
        auto &p = out[ev.pass];
        p.compute_cycles += ev.compute.end - ev.compute.start;
        p.total_cycles += ev.segment.end - ev.segment.start;
        for (const auto &t : ev.transfers)
            p.bits[t.stream] += t.bits;
    }
    return out;
}

void dump_trace(const TileEventTrace &trace, std::ostream &os) {
    for (const auto &ev : trace.events) {
        os << "tile " << ev.index << " case " << ev.case_label << " pass " << ev.pass << " seg ["
           << ev.segment.start << "," << ev.segment.end << ") compute [" << ev.compute.start << ","
           << ev.compute.end << ")";
        for (const auto &t : ev.transfers)
            os << ' ' << to_string(t.iface) << ':' << to_string(t.stream) << (t.load ? "<" : ">")
               << t.bits << "@[" << t.span.start << "," << t.span.end << ")";
        os << '\n';
    }
    os << "total " << trace.total_cycles << '\n';
}

} // namespace sasim

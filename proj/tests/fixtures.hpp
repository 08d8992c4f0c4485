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

#include <random>

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/tiler.hpp"

namespace sasim::test {

// 8x8x4 -> 6x6x8, 3x3 kernel, stride 1, with bias, on a 4x4 array.
inline ConvShape worked_conv_shape() {
    ConvShape s;
    s.n = 1;
    s.ih = s.iw = 8;
    s.ic = 4;
    s.oh = s.ow = 6;
    s.oc = 8;
    s.kh = s.kw = 3;
    s.stride = 1;
    s.has_bias = true;
    return s;
}

inline HardwareConfig worked_hw() {
    HardwareConfig hw;
    hw.name = "worked";
    hw.pe_rows = hw.pe_cols = 4;
    hw.wbuf_bytes = hw.ibuf_bytes = hw.obuf_bytes = hw.bbuf_bytes = hw.vmem_bytes = 64 * 1024;
    hw.imem_bytes = 64 * 1024;
    hw.bw_w = hw.bw_i = hw.bw_o = hw.bw_v = 128;
    hw.bits_weight = hw.bits_ifmap = 16;
    hw.bits_psum = hw.bits_bias = 32;
    hw.bits_simd_in = hw.bits_simd_out = 32;
    hw.op_latency = {1, 1, 1, 4, 1};
    return hw;
}

inline ConvTiling worked_conv_tiling(const HardwareConfig &hw) {
    return make_conv_tiling({6, 6, 1, 3, 3, 4, 4}, hw);
}

inline SimdShape simd_shape(count_t h, count_t w, count_t n, count_t c) {
    SimdShape s;
    s.h = h;
    s.w = w;
    s.n = n;
    s.c = c;
    return s;
}

inline SimdTiling full_simd_tiling(const SimdShape &s, const HardwareConfig &hw) {
    return make_simd_tiling({s.h, s.w, s.n, s.c}, hw);
}

} // namespace sasim::test

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

// Scalar reference walks for SIMD layers. They share no code with the
// library's closed forms or its profile table.
namespace sasim::test {

struct Counted {
    count_t in_bits = 0;
    count_t out_bits = 0;
    OpCounts ops;
    count_t compute = 0;
    count_t stall = 0;
};

inline count_t tiles_along(count_t dim, count_t t) {
    return (dim + t - 1) / t;
}

// Walks the tile loops of a single-pass element-wise layer element by
// element. Every element loads `loads` values, stores `stores` values and
// issues `ops` in order; lanes of K channels run in lockstep.
inline Counted walk_elementwise(const SimdShape &s, const SimdTile &T, const HardwareConfig &hw,
        int loads, int stores, const std::vector<OpKind> &ops) {
    Counted r;
    const count_t K = hw.pe_cols;
    const count_t pso = 5 + (K - 1);
    count_t lane_cycles = 0;
    for (OpKind k : ops)
        lane_cycles += hw.op_latency.of(k);
    const count_t ntiles = tiles_along(s.h, T.h) * tiles_along(s.w, T.w) * tiles_along(s.n, T.n)
            * tiles_along(s.c, T.c);
    for (count_t tile = 0; tile < ntiles; ++tile) {
        count_t seg_bits = 0;
        for (count_t h = 0; h < T.h; ++h)
            for (count_t w = 0; w < T.w; ++w)
                for (count_t n = 0; n < T.n; ++n) {
                    for (count_t c = 0; c < T.c; ++c) {
                        r.in_bits += loads * hw.bits_simd_in;
                        r.out_bits += stores * hw.bits_simd_out;
                        seg_bits += loads * hw.bits_simd_in + stores * hw.bits_simd_out;
                        for (OpKind k : ops)
                            r.ops[k] += 1;
                    }
                    for (count_t c0 = 0; c0 < T.c; c0 += K)
                        r.compute += lane_cycles;
                }
        r.compute += pso;
        r.stall += (seg_bits + hw.bw_v - 1) / hw.bw_v;
    }
    return r;
}

// Scalar walk of the first part of the BN backward schedule: per channel
// tile load mu and psi, per 4D tile load X and dY, form X-hat (sub, mul),
// accumulate dgamma (mul, add) and dbeta (add), store X-hat; finally store
// dgamma and dbeta.
inline Counted walk_bn_part1(const SimdShape &s, const SimdTile &T, const HardwareConfig &hw) {
    Counted r;
    const count_t b = hw.bits_simd_in;
    const count_t K = hw.pe_cols;
    const count_t pso = 5 + (K - 1);
    const auto &lat = hw.op_latency;
    const count_t hwn_tiles = tiles_along(s.h, T.h) * tiles_along(s.w, T.w) * tiles_along(s.n, T.n);
    const count_t c_tiles = tiles_along(s.c, T.c);
    for (count_t ct = 0; ct < c_tiles; ++ct) {
        count_t seg = 0;
        for (count_t c = 0; c < T.c; ++c) {
            r.in_bits += 2 * b;
            seg += 2 * b;
        }
        r.stall += (seg + hw.bw_v - 1) / hw.bw_v;
        for (count_t t = 0; t < hwn_tiles; ++t) {
            seg = 0;
            for (count_t e = 0; e < T.h * T.w * T.n; ++e) {
                for (count_t c = 0; c < T.c; ++c) {
                    r.in_bits += 2 * b; // X, dY
                    r.ops[OpKind::Sub] += 1;
                    r.ops[OpKind::Mul] += 1;
                    r.ops[OpKind::Mul] += 1;
                    r.ops[OpKind::Add] += 1;
                    r.ops[OpKind::Add] += 1;
                    r.out_bits += b; // X-hat
                    seg += 3 * b;
                }
                for (count_t c0 = 0; c0 < T.c; c0 += K)
                    r.compute += lat.sub + lat.mul + lat.mul + lat.add + lat.add;
            }
            r.compute += pso;
            r.stall += (seg + hw.bw_v - 1) / hw.bw_v;
        }
        seg = 0;
        for (count_t c = 0; c < T.c; ++c) {
            r.out_bits += 2 * b;
            seg += 2 * b;
        }
        r.stall += (seg + hw.bw_v - 1) / hw.bw_v;
    }
    return r;
}

} // namespace sasim::test

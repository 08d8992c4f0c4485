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

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sasim/hardware.hpp"
#include "sasim/types.hpp"

namespace sasim {

// Convolution (and FC) tensor geometry. Padding is explicit so that the
// ofmap extents can be checked against ifmap/kernel/stride.
struct ConvShape {
    count_t n = 1;
    count_t ih = 1, iw = 1, ic = 1;
    count_t oh = 1, ow = 1, oc = 1;
    count_t kh = 1, kw = 1;
    count_t stride = 1;
    count_t pad_h = 0, pad_w = 0;
    bool has_bias = false;

    // Rows/cols of the padded ifmap actually swept by the kernel window.
    count_t effective_ih() const { return stride * (oh - 1) + kh; }
    count_t effective_iw() const { return stride * (ow - 1) + kw; }

    count_t macs() const { return n * oh * ow * oc * kh * kw * ic; }

    // oh/ow derived from ih/iw/k/stride/pad.
    static count_t out_extent(count_t in, count_t pad, count_t k, count_t stride);

    // FC as a 1x1 convolution over a 1x1 feature map.
    static ConvShape fully_connected(count_t n, count_t in_features, count_t out_features, bool bias);

    void validate(const std::string &where) const;

    bool operator==(const ConvShape &) const = default;
};

enum class PoolMode : std::uint8_t { None, Max, Avg };

struct PoolWindow {
    count_t r_h = 1, r_w = 1;
    count_t stride = 1;
    count_t pad_h = 0, pad_w = 0;

    bool operator==(const PoolWindow &) const = default;
};

// SIMD-side tensor geometry: h, w, n, c of the (input) activation tensor.
// Pool layers also carry the window; the pooled extents follow from it.
struct SimdShape {
    count_t h = 1, w = 1, n = 1, c = 1;
    PoolMode pool = PoolMode::None;
    PoolWindow window;

    count_t pooled_h() const;
    count_t pooled_w() const;
    count_t volume() const { return h * w * n * c; }

    void validate(const std::string &where) const;

    bool operator==(const SimdShape &) const = default;
};

enum class LayerKind : std::uint8_t {
    Conv,
    FC,
    ReLU,
    TensorAdd,
    MaxPool,
    AvgPool,
    GlobalAvgPool,
    BatchNorm,
    ConvGradIfmap,
    ConvGradWeight,
    ReluBackward,
    TensorAddBackward,
    PoolBackward,
    BnBackward,
    ParamUpdate,
};

std::string_view to_string(LayerKind kind);
std::optional<LayerKind> parse_layer_kind(std::string_view text);

constexpr bool is_conv_family(LayerKind k) {
    return k == LayerKind::Conv || k == LayerKind::FC || k == LayerKind::ConvGradIfmap
            || k == LayerKind::ConvGradWeight;
}

constexpr bool is_pool(LayerKind k) {
    return k == LayerKind::MaxPool || k == LayerKind::AvgPool || k == LayerKind::GlobalAvgPool;
}

// Outer (T) or inner (t) tile sizes of the seven convolution loops. The
// ifmap extents are derived: T_ih = S*(T_oh-1) + T_kh.
struct ConvTile {
    count_t oh = 1, ow = 1, n = 1, kh = 1, kw = 1, ic = 1, oc = 1;

    count_t ih(count_t stride) const { return stride * (oh - 1) + kh; }
    count_t iw(count_t stride) const { return stride * (ow - 1) + kw; }

    bool operator==(const ConvTile &) const = default;
};

struct SimdTile {
    count_t h = 1, w = 1, n = 1, c = 1;

    bool operator==(const SimdTile &) const = default;
};

struct ConvTiling {
    ConvTile outer;
    ConvTile inner;

    bool operator==(const ConvTiling &) const = default;
};

struct SimdTiling {
    SimdTile outer;
    SimdTile inner;

    bool operator==(const SimdTiling &) const = default;
};

using Tiling = std::variant<ConvTiling, SimdTiling>;
using OuterTile = std::variant<ConvTile, SimdTile>;

// Per-layer bit-width overrides of the hardware defaults.
struct BitOverrides {
    std::optional<count_t> weight, bias, ifmap, psum, simd_in, simd_out;

    bool empty() const {
        return !weight && !bias && !ifmap && !psum && !simd_in && !simd_out;
    }
    HardwareConfig apply(HardwareConfig hw) const;

    bool operator==(const BitOverrides &) const = default;
};

enum class Phase : std::uint8_t { Forward, Backward, Update };

std::string_view to_string(Phase phase);

struct LayerSpec {
    std::string name;
    LayerKind kind = LayerKind::Conv;
    std::variant<ConvShape, SimdShape> shape;
    std::optional<OuterTile> tiling;
    BitOverrides bits;
    Phase phase = Phase::Forward;
    std::string source; // forward layer a backward/update layer derives from

    const ConvShape &conv() const { return std::get<ConvShape>(shape); }
    const SimdShape &simd() const { return std::get<SimdShape>(shape); }

    // Kind/shape agreement plus the shape's own invariants.
    void validate() const;

    bool operator==(const LayerSpec &) const = default;
};

} // namespace sasim

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

#include "sasim/layer.hpp"

#include <array>
#include <utility>

#include "sasim/error.hpp"

namespace sasim {

namespace {

constexpr std::array<std::pair<LayerKind, std::string_view>, 15> kKindNames = {{
        {LayerKind::Conv, "Conv"},
        {LayerKind::FC, "FC"},
        {LayerKind::ReLU, "ReLU"},
        {LayerKind::TensorAdd, "TensorAdd"},
        {LayerKind::MaxPool, "MaxPool"},
        {LayerKind::AvgPool, "AvgPool"},
        {LayerKind::GlobalAvgPool, "GlobalAvgPool"},
        {LayerKind::BatchNorm, "BatchNorm"},
        {LayerKind::ConvGradIfmap, "ConvGradIfmap"},
        {LayerKind::ConvGradWeight, "ConvGradWeight"},
        {LayerKind::ReluBackward, "ReluBackward"},
        {LayerKind::TensorAddBackward, "TensorAddBackward"},
        {LayerKind::PoolBackward, "PoolBackward"},
        {LayerKind::BnBackward, "BnBackward"},
        {LayerKind::ParamUpdate, "ParamUpdate"},
}};

void require_positive(count_t v, const char *field, const std::string &where) {
    if (v == 0) throw SpecError(where, std::string(field) + " must be >= 1");
}

} // namespace

std::string_view to_string(LayerKind kind) {
    for (const auto &[k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<LayerKind> parse_layer_kind(std::string_view text) {
    for (const auto &[k, name] : kKindNames)
        if (name == text) return k;
    return std::nullopt;
}

std::string_view to_string(Phase phase) {
    switch (phase) {
        case Phase::Forward: return "forward";
        case Phase::Backward: return "backward";
        case Phase::Update: return "update";
    }
    return "?";
}

count_t ConvShape::out_extent(count_t in, count_t pad, count_t k, count_t stride) {
    if (in + 2 * pad < k || stride == 0) return 0;
    return (in + 2 * pad - k) / stride + 1;
}

ConvShape ConvShape::fully_connected(
        count_t n, count_t in_features, count_t out_features, bool bias) {
    ConvShape s;
    s.n = n;
    s.ic = in_features;
    s.oc = out_features;
    s.has_bias = bias;
    return s;
}

void ConvShape::validate(const std::string &where) const {
    require_positive(n, "n", where);
    require_positive(ih, "ih", where);
    require_positive(iw, "iw", where);
    require_positive(ic, "ic", where);
    require_positive(oh, "oh", where);
    require_positive(ow, "ow", where);
    require_positive(oc, "oc", where);
    require_positive(kh, "kh", where);
    require_positive(kw, "kw", where);
    require_positive(stride, "s", where);
    if (kh > ih + 2 * pad_h || kw > iw + 2 * pad_w)
        throw SpecError(where, "kernel larger than padded ifmap");
    const count_t want_oh = out_extent(ih, pad_h, kh, stride);
    const count_t want_ow = out_extent(iw, pad_w, kw, stride);
    if (oh != want_oh || ow != want_ow)
        throw SpecError(where,
                "ofmap dims " + std::to_string(oh) + "x" + std::to_string(ow)
                        + " inconsistent with ifmap/kernel/stride/pad (expected "
                        + std::to_string(want_oh) + "x" + std::to_string(want_ow) + ")");
}

count_t SimdShape::pooled_h() const {
    if (pool == PoolMode::None) return h;
    return ConvShape::out_extent(h, window.pad_h, window.r_h, window.stride);
}

count_t SimdShape::pooled_w() const {
    if (pool == PoolMode::None) return w;
    return ConvShape::out_extent(w, window.pad_w, window.r_w, window.stride);
}

void SimdShape::validate(const std::string &where) const {
    require_positive(h, "h", where);
    require_positive(w, "w", where);
    require_positive(n, "n", where);
    require_positive(c, "c", where);
    if (pool == PoolMode::None) return;
    require_positive(window.r_h, "r_h", where);
    require_positive(window.r_w, "r_w", where);
    require_positive(window.stride, "s", where);
    if (window.r_h > h + 2 * window.pad_h || window.r_w > w + 2 * window.pad_w)
        throw SpecError(where, "pool window larger than padded input");
}

HardwareConfig BitOverrides::apply(HardwareConfig hw) const {
    if (weight) hw.bits_weight = *weight;
    if (bias) hw.bits_bias = *bias;
    if (ifmap) hw.bits_ifmap = *ifmap;
    if (psum) hw.bits_psum = *psum;
    if (simd_in) hw.bits_simd_in = *simd_in;
    if (simd_out) hw.bits_simd_out = *simd_out;
    return hw;
}

void LayerSpec::validate() const {
    const std::string where = "layer '" + name + "'";
    if (is_conv_family(kind)) {
        if (!std::holds_alternative<ConvShape>(shape))
            throw SpecError(where, std::string(to_string(kind)) + " requires convolution dims");
        const auto &s = conv();
        s.validate(where);
        if (kind == LayerKind::FC
                && (s.kh != 1 || s.kw != 1 || s.ih != 1 || s.iw != 1 || s.oh != 1 || s.ow != 1))
            throw SpecError(where, "FC layers must have 1x1 kernel and 1x1 feature maps");
        if (tiling && !std::holds_alternative<ConvTile>(*tiling))
            throw SpecError(where, "convolution layer given a SIMD tiling");
        return;
    }
    if (!std::holds_alternative<SimdShape>(shape))
        throw SpecError(where, std::string(to_string(kind)) + " requires SIMD dims (h, w, n, c)");
    const auto &s = simd();
    s.validate(where);
    if ((is_pool(kind) || kind == LayerKind::PoolBackward) && s.pool == PoolMode::None)
        throw SpecError(where, "pool layer without a pool window");
    if (!is_pool(kind) && kind != LayerKind::PoolBackward && s.pool != PoolMode::None)
        throw SpecError(where, "pool window given to a non-pool layer");
    if (kind == LayerKind::MaxPool && s.pool != PoolMode::Max)
        throw SpecError(where, "MaxPool must use max mode");
    if ((kind == LayerKind::AvgPool || kind == LayerKind::GlobalAvgPool) && s.pool != PoolMode::Avg)
        throw SpecError(where, "average pools must use avg mode");
    if (tiling && !std::holds_alternative<SimdTile>(*tiling))
        throw SpecError(where, "SIMD layer given a convolution tiling");
}

} // namespace sasim

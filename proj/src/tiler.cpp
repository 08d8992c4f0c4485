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

#include "sasim/tiler.hpp"

#include <algorithm>
#include <array>

#include "sasim/error.hpp"

namespace sasim {

bool TilingConstraintReport::all_fit() const {
    for (Buffer b : kAllBuffers)
        if (checked[b] && !fits[b]) return false;
    return true;
}

std::optional<Buffer> TilingConstraintReport::first_overflow() const {
    for (Buffer b : kAllBuffers)
        if (checked[b] && !fits[b]) return b;
    return std::nullopt;
}

std::vector<count_t> divisors_desc(count_t n) {
    std::vector<count_t> small, large;
    for (count_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    std::vector<count_t> out(large.begin(), large.end());
    out.insert(out.end(), small.rbegin(), small.rend());
    return out;
}

ConvTile conv_inner_tile(const ConvTile &outer, const HardwareConfig &hw) {
    ConvTile t;
    t.ic = std::min(hw.pe_rows, outer.ic);
    t.oc = std::min(hw.pe_cols, outer.oc);
    return t;
}

SimdTile simd_inner_tile(const SimdTile &outer, const HardwareConfig &hw) {
    SimdTile t;
    t.c = std::min(hw.simd_alus(), outer.c);
    return t;
}

ConvTiling make_conv_tiling(const ConvTile &outer, const HardwareConfig &hw) {
    return {outer, conv_inner_tile(outer, hw)};
}

SimdTiling make_simd_tiling(const SimdTile &outer, const HardwareConfig &hw) {
    return {outer, simd_inner_tile(outer, hw)};
}

TilingConstraintReport check_conv_tiling(
        const ConvShape &shape, const ConvTile &t, const HardwareConfig &hw) {
    TilingConstraintReport r;
    r.required[Buffer::WBuf] = t.kh * t.kw * t.ic * t.oc * hw.bits_weight;
    r.required[Buffer::IBuf] = t.ih(shape.stride) * t.iw(shape.stride) * t.n * t.ic * hw.bits_ifmap;
    r.required[Buffer::OBuf] = t.oh * t.ow * t.n * t.oc * hw.bits_psum;
    r.required[Buffer::BBuf] = shape.has_bias ? t.oc * hw.bits_bias : 0;
    r.usable[Buffer::WBuf] = hw.wbuf_bytes * 8 / 2;
    r.usable[Buffer::IBuf] = hw.ibuf_bytes * 8 / 2;
    r.usable[Buffer::OBuf] = hw.obuf_bytes * 8 / 2;
    r.usable[Buffer::BBuf] = hw.bbuf_bytes * 8 / 2;
    r.usable[Buffer::VMem] = hw.vmem_bytes * 8;
    for (Buffer b : {Buffer::WBuf, Buffer::IBuf, Buffer::OBuf, Buffer::BBuf}) {
        r.checked[b] = true;
        r.fits[b] = r.required[b] <= r.usable[b];
    }
    r.fits[Buffer::VMem] = true;
    return r;
}

TilingConstraintReport check_simd_tiling(const SimdShape &shape, const SimdOpProfile &profile,
        const SimdTile &outer, const HardwareConfig &hw) {
    TilingConstraintReport r;
    r.usable[Buffer::WBuf] = hw.wbuf_bytes * 8 / 2;
    r.usable[Buffer::IBuf] = hw.ibuf_bytes * 8 / 2;
    r.usable[Buffer::OBuf] = hw.obuf_bytes * 8 / 2;
    r.usable[Buffer::BBuf] = hw.bbuf_bytes * 8 / 2;
    r.usable[Buffer::VMem] = hw.vmem_bytes * 8;
    r.required[Buffer::VMem] = resident_bits(profile, outer, shape, hw);
    for (Buffer b : kAllBuffers)
        r.fits[b] = true;
    r.checked[Buffer::VMem] = true;
    r.fits[Buffer::VMem] = r.required[Buffer::VMem] <= r.usable[Buffer::VMem];
    return r;
}

namespace {

std::string describe(const TilingConstraintReport &r, Buffer b) {
    return "needs " + std::to_string(r.required[b]) + " bits, usable "
            + std::to_string(r.usable[b]) + " bits";
}

} // namespace

ConvTiling generate_conv_tiling(const ConvShape &shape, const HardwareConfig &hw) {
    ConvTile t; // all ones
    {
        auto r = check_conv_tiling(shape, t, hw);
        if (auto b = r.first_overflow())
            throw InfeasibleTilingError("", std::string(to_string(*b)), describe(r, *b));
    }
    const std::array<std::pair<count_t ConvTile::*, count_t>, 7> order = {{
            {&ConvTile::oc, shape.oc},
            {&ConvTile::ic, shape.ic},
            {&ConvTile::kh, shape.kh},
            {&ConvTile::kw, shape.kw},
            {&ConvTile::oh, shape.oh},
            {&ConvTile::ow, shape.ow},
            {&ConvTile::n, shape.n},
    }};
    for (const auto &[member, dim] : order) {
        for (count_t d : divisors_desc(dim)) {
            t.*member = d;
            if (check_conv_tiling(shape, t, hw).all_fit()) break;
        }
    }
    return make_conv_tiling(t, hw);
}

SimdTiling generate_simd_tiling(
        const SimdShape &shape, const SimdOpProfile &profile, const HardwareConfig &hw) {
    const SimdTile space = iteration_space(profile.kind, shape);
    SimdTile t;
    {
        auto r = check_simd_tiling(shape, profile, t, hw);
        if (!r.all_fit())
            throw InfeasibleTilingError("", "VMem", describe(r, Buffer::VMem));
    }
    const std::array<std::pair<count_t SimdTile::*, count_t>, 4> order = {{
            {&SimdTile::c, space.c},
            {&SimdTile::w, space.w},
            {&SimdTile::h, space.h},
            {&SimdTile::n, space.n},
    }};
    for (const auto &[member, dim] : order) {
        for (count_t d : divisors_desc(dim)) {
            t.*member = d;
            if (check_simd_tiling(shape, profile, t, hw).all_fit()) break;
        }
    }
    return make_simd_tiling(t, hw);
}

SimdTiling generate_simd_tiling(
        const SimdShape &shape, count_t operand_count, const HardwareConfig &hw) {
    SimdOpProfile p;
    p.kind = LayerKind::TensorAdd;
    SimdPass pass;
    for (count_t i = 0; i < operand_count; ++i) {
        const bool load = i + 1 < operand_count || operand_count == 1;
        pass.tile_tensors.push_back({"t" + std::to_string(i),
                load ? TensorDir::Load : TensorDir::Store, TensorExtent::Full4D,
                load ? BitClass::In : BitClass::Out});
    }
    p.passes.push_back(pass);
    SimdShape plain = shape;
    plain.pool = PoolMode::None;
    return generate_simd_tiling(plain, p, hw);
}

TilingConstraintReport validate_tiling(
        const LayerSpec &layer, const Tiling &tiling, const HardwareConfig &hw) {
    if (is_conv_family(layer.kind)) {
        const auto &t = std::get<ConvTiling>(tiling);
        return check_conv_tiling(layer.conv(), t.outer, hw);
    }
    const auto &t = std::get<SimdTiling>(tiling);
    return check_simd_tiling(layer.simd(), simd_profile(layer.kind, layer.simd()), t.outer, hw);
}

void check_tile_bounds(const ConvShape &shape, const ConvTile &t, const std::string &where) {
    auto check = [&](const char *name, count_t tile, count_t dim) {
        if (tile < 1 || tile > dim)
            throw SpecError(where,
                    std::string("tile ") + name + "=" + std::to_string(tile) + " outside [1, "
                            + std::to_string(dim) + "]");
    };
    check("oh", t.oh, shape.oh);
    check("ow", t.ow, shape.ow);
    check("n", t.n, shape.n);
    check("kh", t.kh, shape.kh);
    check("kw", t.kw, shape.kw);
    check("ic", t.ic, shape.ic);
    check("oc", t.oc, shape.oc);
}

void check_tile_bounds(const SimdTile &space, const SimdTile &t, const std::string &where) {
    auto check = [&](const char *name, count_t tile, count_t dim) {
        if (tile < 1 || tile > dim)
            throw SpecError(where,
                    std::string("tile ") + name + "=" + std::to_string(tile) + " outside [1, "
                            + std::to_string(dim) + "]");
    };
    check("h", t.h, space.h);
    check("w", t.w, space.w);
    check("n", t.n, space.n);
    check("c", t.c, space.c);
}

Tiling tiling_for_layer(const LayerSpec &layer, const HardwareConfig &hw) {
    const std::string where = "layer '" + layer.name + "'";
    Tiling tiling;
    if (layer.tiling && std::holds_alternative<ConvTile>(*layer.tiling) != is_conv_family(layer.kind))
        throw SpecError(where, "tiling fields do not match layer kind " + std::string(to_string(layer.kind)));
    try {
        if (is_conv_family(layer.kind)) {
            if (layer.tiling) {
                const auto &outer = std::get<ConvTile>(*layer.tiling);
                check_tile_bounds(layer.conv(), outer, where);
                tiling = make_conv_tiling(outer, hw);
            } else {
                tiling = generate_conv_tiling(layer.conv(), hw);
            }
        } else {
            const auto profile = simd_profile(layer.kind, layer.simd());
            if (layer.tiling) {
                const auto &outer = std::get<SimdTile>(*layer.tiling);
                check_tile_bounds(iteration_space(layer.kind, layer.simd()), outer, where);
                tiling = make_simd_tiling(outer, hw);
            } else {
                tiling = generate_simd_tiling(layer.simd(), profile, hw);
            }
        }
    } catch (const InfeasibleTilingError &e) {
        throw e.for_layer(layer.name);
    }
    if (layer.tiling) {
        auto r = validate_tiling(layer, tiling, hw);
        if (auto b = r.first_overflow())
            throw InfeasibleTilingError(layer.name, std::string(to_string(*b)),
                    "supplied tiling " + describe(r, *b));
    }
    return tiling;
}

} // namespace sasim

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

#include "sasim/network.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "json_util.hpp"
#include "sasim/error.hpp"

namespace sasim {

namespace {

using nlohmann::json;

void reject_unknown(const json &obj, std::initializer_list<const char *> allowed,
        const std::string &where) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, _] : obj.items())
        if (!ok.count(key)) throw SpecError(where, "unknown key '" + key + "'");
}

count_t get_or(const json &obj, const char *key, count_t fallback, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return json_count(*it, key, where);
}

// `pad` sets both sides; `pad_h`/`pad_w` override individually.
std::pair<count_t, count_t> read_pad(const json &dims, const std::string &where) {
    const count_t both = get_or(dims, "pad", 0, where);
    return {get_or(dims, "pad_h", both, where), get_or(dims, "pad_w", both, where)};
}

ConvShape read_conv_dims(const json &dims, LayerKind kind, const std::string &where) {
    reject_unknown(dims,
            {"n", "ih", "iw", "ic", "oh", "ow", "oc", "kh", "kw", "s", "pad", "pad_h", "pad_w",
                    "bias"},
            where);
    ConvShape s;
    if (kind == LayerKind::FC) {
        s = ConvShape::fully_connected(get_or(dims, "n", 1, where),
                json_positive(dims, "ic", where), json_positive(dims, "oc", where), false);
    } else {
        s.n = get_or(dims, "n", 1, where);
        s.ih = json_positive(dims, "ih", where);
        s.iw = get_or(dims, "iw", s.ih, where);
        s.ic = json_positive(dims, "ic", where);
        s.oc = json_positive(dims, "oc", where);
        s.kh = json_positive(dims, "kh", where);
        s.kw = get_or(dims, "kw", s.kh, where);
        s.stride = get_or(dims, "s", 1, where);
        std::tie(s.pad_h, s.pad_w) = read_pad(dims, where);
        if (s.stride == 0) throw SpecError(where, "s must be >= 1");
        s.oh = get_or(dims, "oh", ConvShape::out_extent(s.ih, s.pad_h, s.kh, s.stride), where);
        s.ow = get_or(dims, "ow", ConvShape::out_extent(s.iw, s.pad_w, s.kw, s.stride), where);
    }
    if (auto it = dims.find("bias"); it != dims.end()) {
        if (!it->is_boolean()) throw SpecError(where, "'bias' must be a boolean");
        s.has_bias = it->get<bool>();
    }
    return s;
}

SimdShape read_simd_dims(const json &dims, LayerKind kind, const std::string &where) {
    reject_unknown(dims,
            {"h", "w", "n", "c", "r", "r_h", "r_w", "s", "pad", "pad_h", "pad_w", "mode", "oh",
                    "ow"},
            where);
    SimdShape s;
    s.h = json_positive(dims, "h", where);
    s.w = get_or(dims, "w", s.h, where);
    s.n = get_or(dims, "n", 1, where);
    s.c = json_positive(dims, "c", where);

    const bool pooled = is_pool(kind) || kind == LayerKind::PoolBackward;
    if (!pooled) {
        for (const char *k : {"r", "r_h", "r_w", "s", "pad", "pad_h", "pad_w", "mode", "oh", "ow"})
            if (dims.contains(k))
                throw SpecError(where, std::string("'") + k + "' only applies to pool layers");
        return s;
    }

    if (kind == LayerKind::MaxPool) {
        s.pool = PoolMode::Max;
    } else if (kind == LayerKind::AvgPool || kind == LayerKind::GlobalAvgPool) {
        s.pool = PoolMode::Avg;
    } else {
        const std::string mode = json_string(dims, "mode", where);
        if (mode == "max")
            s.pool = PoolMode::Max;
        else if (mode == "avg")
            s.pool = PoolMode::Avg;
        else
            throw SpecError(where, "mode must be 'max' or 'avg'");
    }
    if (dims.contains("mode") && kind != LayerKind::PoolBackward) {
        const std::string mode = json_string(dims, "mode", where);
        if ((mode == "max") != (s.pool == PoolMode::Max))
            throw SpecError(where, "mode contradicts the layer kind");
    }

    if (kind == LayerKind::GlobalAvgPool) {
        s.window = {s.h, s.w, 1, 0, 0};
    } else {
        const count_t r = get_or(dims, "r", 0, where);
        s.window.r_h = get_or(dims, "r_h", r, where);
        s.window.r_w = get_or(dims, "r_w", r == 0 ? s.window.r_h : r, where);
        s.window.stride = get_or(dims, "s", 1, where);
        std::tie(s.window.pad_h, s.window.pad_w) = read_pad(dims, where);
    }
    s.validate(where);
    if (dims.contains("oh") && json_count(dims.at("oh"), "oh", where) != s.pooled_h())
        throw SpecError(where, "pooled oh inconsistent with window/stride");
    if (dims.contains("ow") && json_count(dims.at("ow"), "ow", where) != s.pooled_w())
        throw SpecError(where, "pooled ow inconsistent with window/stride");
    return s;
}

BitOverrides read_bits(const json &bits, const std::string &where) {
    reject_unknown(bits, {"weight", "bias", "ifmap", "psum", "simd_in", "simd_out"}, where);
    BitOverrides o;
    auto opt = [&](const char *key, std::optional<count_t> &slot) {
        if (bits.contains(key)) slot = json_positive(bits, key, where);
    };
    opt("weight", o.weight);
    opt("bias", o.bias);
    opt("ifmap", o.ifmap);
    opt("psum", o.psum);
    opt("simd_in", o.simd_in);
    opt("simd_out", o.simd_out);
    return o;
}

OuterTile read_tiling(const json &tiling, bool conv, const std::string &where) {
    reject_unknown(tiling, {"outer"}, where);
    const json &outer = json_field(tiling, "outer", where);
    if (conv) {
        reject_unknown(outer, {"oh", "ow", "n", "kh", "kw", "ic", "oc", "ih", "iw"}, where);
        ConvTile t;
        t.oh = json_positive(outer, "oh", where);
        t.ow = json_positive(outer, "ow", where);
        t.n = json_positive(outer, "n", where);
        t.kh = json_positive(outer, "kh", where);
        t.kw = json_positive(outer, "kw", where);
        t.ic = json_positive(outer, "ic", where);
        t.oc = json_positive(outer, "oc", where);
        return t;
    }
    reject_unknown(outer, {"h", "w", "n", "c"}, where);
    SimdTile t;
    t.h = json_positive(outer, "h", where);
    t.w = json_positive(outer, "w", where);
    t.n = json_positive(outer, "n", where);
    t.c = json_positive(outer, "c", where);
    return t;
}

Phase read_phase(const json &layer, const std::string &where) {
    if (!layer.contains("phase")) return Phase::Forward;
    const std::string p = json_string(layer, "phase", where);
    if (p == "forward") return Phase::Forward;
    if (p == "backward") return Phase::Backward;
    if (p == "update") return Phase::Update;
    throw SpecError(where, "phase must be forward, backward or update");
}

} // namespace

std::vector<LayerSpec> network_from_json(const json &doc, const std::string &origin) {
    if (!doc.is_array()) throw SpecError(origin, "network spec must be a JSON array of layers");
    std::vector<LayerSpec> layers;
    layers.reserve(doc.size());
    std::set<std::string> names;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json &entry = doc[i];
        std::string where = origin + ": layer #" + std::to_string(i);
        if (!entry.is_object()) throw SpecError(where, "layer entry must be an object");
        reject_unknown(entry, {"name", "kind", "dims", "bits", "tiling", "phase", "source"}, where);

        LayerSpec layer;
        layer.name = json_string(entry, "name", where);
        where = origin + ": layer '" + layer.name + "'";
        if (!names.insert(layer.name).second) throw SpecError(where, "duplicate layer name");

        const std::string kind = json_string(entry, "kind", where);
        auto parsed = parse_layer_kind(kind);
        if (!parsed) throw SpecError(where, "unknown layer kind '" + kind + "'");
        layer.kind = *parsed;

        const json &dims = json_field(entry, "dims", where);
        if (!dims.is_object()) throw SpecError(where, "'dims' must be an object");
        const bool conv = is_conv_family(layer.kind);
        if (conv)
            layer.shape = read_conv_dims(dims, layer.kind, where);
        else
            layer.shape = read_simd_dims(dims, layer.kind, where);

        if (entry.contains("bits")) layer.bits = read_bits(entry.at("bits"), where);
        if (entry.contains("tiling")) layer.tiling = read_tiling(entry.at("tiling"), conv, where);
        layer.phase = read_phase(entry, where);
        if (entry.contains("source")) layer.source = json_string(entry, "source", where);

        try {
            layer.validate();
        } catch (const SpecError &e) {
            throw SpecError(origin, e.what());
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

json to_json(const LayerSpec &layer) {
    json out;
    out["name"] = layer.name;
    out["kind"] = std::string(to_string(layer.kind));
    json dims;
    if (is_conv_family(layer.kind)) {
        const auto &s = layer.conv();
        dims = {{"n", s.n}, {"ih", s.ih}, {"iw", s.iw}, {"ic", s.ic}, {"oh", s.oh}, {"ow", s.ow},
                {"oc", s.oc}, {"kh", s.kh}, {"kw", s.kw}, {"s", s.stride}, {"pad_h", s.pad_h},
                {"pad_w", s.pad_w}, {"bias", s.has_bias}};
        if (layer.kind == LayerKind::FC)
            dims = {{"n", s.n}, {"ic", s.ic}, {"oc", s.oc}, {"bias", s.has_bias}};
    } else {
        const auto &s = layer.simd();
        dims = {{"h", s.h}, {"w", s.w}, {"n", s.n}, {"c", s.c}};
        if (s.pool != PoolMode::None && layer.kind != LayerKind::GlobalAvgPool) {
            dims["r_h"] = s.window.r_h;
            dims["r_w"] = s.window.r_w;
            dims["s"] = s.window.stride;
            dims["pad_h"] = s.window.pad_h;
            dims["pad_w"] = s.window.pad_w;
        }
        if (layer.kind == LayerKind::PoolBackward)
            dims["mode"] = s.pool == PoolMode::Max ? "max" : "avg";
    }
    out["dims"] = dims;

    if (!layer.bits.empty()) {
        json bits = json::object();
        auto put = [&](const char *key, const std::optional<count_t> &v) {
            if (v) bits[key] = *v;
        };
        put("weight", layer.bits.weight);
        put("bias", layer.bits.bias);
        put("ifmap", layer.bits.ifmap);
        put("psum", layer.bits.psum);
        put("simd_in", layer.bits.simd_in);
        put("simd_out", layer.bits.simd_out);
        out["bits"] = bits;
    }
    if (layer.tiling) {
        json outer;
        if (const auto *t = std::get_if<ConvTile>(&*layer.tiling))
            outer = {{"oh", t->oh}, {"ow", t->ow}, {"n", t->n}, {"kh", t->kh}, {"kw", t->kw},
                    {"ic", t->ic}, {"oc", t->oc}};
        else {
            const auto &s = std::get<SimdTile>(*layer.tiling);
            outer = {{"h", s.h}, {"w", s.w}, {"n", s.n}, {"c", s.c}};
        }
        out["tiling"] = {{"outer", outer}};
    }
    if (layer.phase != Phase::Forward) out["phase"] = std::string(to_string(layer.phase));
    if (!layer.source.empty()) out["source"] = layer.source;
    return out;
}

json to_json(const std::vector<LayerSpec> &layers) {
    json arr = json::array();
    for (const auto &l : layers)
        arr.push_back(to_json(l));
    return arr;
}

std::vector<LayerSpec> load_network_spec(const std::filesystem::path &path) {
    return network_from_json(read_json_file(path), path.string());
}

void write_network_spec(const std::vector<LayerSpec> &layers, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    out << to_json(layers).dump(2) << '\n';
}

} // namespace sasim

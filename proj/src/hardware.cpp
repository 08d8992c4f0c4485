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

#include "sasim/hardware.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "sasim/error.hpp"
#include "json_util.hpp"

namespace sasim {

count_t OpLatency::of(OpKind kind) const {
    switch (kind) {
        case OpKind::Add: return add;
        case OpKind::Sub: return sub;
        case OpKind::Mul: return mul;
        case OpKind::Div: return div;
        case OpKind::Max: return max;
        case OpKind::Mac: break;
    }
    throw std::logic_error("op latency requested for MAC, which runs on the systolic array");
}

namespace {

struct Field {
    const char *key;
    count_t HardwareConfig::*member;
};

constexpr Field kFields[] = {
        {"pe_rows", &HardwareConfig::pe_rows},
        {"pe_cols", &HardwareConfig::pe_cols},
        {"wbuf_bytes", &HardwareConfig::wbuf_bytes},
        {"bbuf_bytes", &HardwareConfig::bbuf_bytes},
        {"ibuf_bytes", &HardwareConfig::ibuf_bytes},
        {"obuf_bytes", &HardwareConfig::obuf_bytes},
        {"vmem_bytes", &HardwareConfig::vmem_bytes},
        {"imem_bytes", &HardwareConfig::imem_bytes},
        {"bw_w", &HardwareConfig::bw_w},
        {"bw_i", &HardwareConfig::bw_i},
        {"bw_o", &HardwareConfig::bw_o},
        {"bw_v", &HardwareConfig::bw_v},
        {"bits_weight", &HardwareConfig::bits_weight},
        {"bits_bias", &HardwareConfig::bits_bias},
        {"bits_ifmap", &HardwareConfig::bits_ifmap},
        {"bits_psum", &HardwareConfig::bits_psum},
        {"bits_simd_in", &HardwareConfig::bits_simd_in},
        {"bits_simd_out", &HardwareConfig::bits_simd_out},
};

struct LatencyField {
    const char *key;
    count_t OpLatency::*member;
};

constexpr LatencyField kLatencyFields[] = {
        {"add", &OpLatency::add},
        {"sub", &OpLatency::sub},
        {"mul", &OpLatency::mul},
        {"div", &OpLatency::div},
        {"max", &OpLatency::max},
};

} // namespace

void HardwareConfig::validate() const {
    for (const auto &f : kFields) {
        if (this->*(f.member) == 0)
            throw SpecError(name.empty() ? "hardware" : name,
                    std::string(f.key) + " must be positive");
    }
    for (const auto &f : kLatencyFields) {
        if (op_latency.*(f.member) == 0)
            throw SpecError(name.empty() ? "hardware" : name,
                    std::string("op_latency.") + f.key + " must be positive");
    }
}

HardwareConfig hardware_from_json(const nlohmann::json &doc, const std::string &origin) {
    if (!doc.is_object()) throw SpecError(origin, "hardware spec must be a JSON object");

    std::set<std::string> known = {"name", "op_latency"};
    for (const auto &f : kFields)
        known.insert(f.key);
    for (const auto &[key, _] : doc.items()) {
        if (!known.count(key)) throw SpecError(origin, "unknown key '" + key + "'");
    }

    HardwareConfig hw;
    if (doc.contains("name")) hw.name = json_string(doc, "name", origin);
    for (const auto &f : kFields)
        hw.*(f.member) = json_positive(doc, f.key, origin);

    if (!doc.contains("op_latency")) throw SpecError(origin, "missing field 'op_latency'");
    const auto &lat = doc.at("op_latency");
    if (!lat.is_object()) throw SpecError(origin, "op_latency must be an object");
    for (const auto &[key, _] : lat.items()) {
        bool ok = false;
        for (const auto &f : kLatencyFields)
            ok = ok || key == f.key;
        if (!ok) throw SpecError(origin + ": op_latency", "unknown op '" + key + "'");
    }
    for (const auto &f : kLatencyFields)
        hw.op_latency.*(f.member) = json_positive(lat, f.key, origin + ": op_latency");

    hw.validate();
    return hw;
}

nlohmann::json to_json(const HardwareConfig &hw) {
    nlohmann::json doc;
    if (!hw.name.empty()) doc["name"] = hw.name;
    for (const auto &f : kFields)
        doc[f.key] = hw.*(f.member);
    nlohmann::json lat;
    for (const auto &f : kLatencyFields)
        lat[f.key] = hw.op_latency.*(f.member);
    doc["op_latency"] = lat;
    return doc;
}

HardwareConfig load_hardware_spec(const std::filesystem::path &path) {
    return hardware_from_json(read_json_file(path), path.string());
}

void write_hardware_spec(const HardwareConfig &hw, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    out << to_json(hw).dump(2) << '\n';
}

} // namespace sasim

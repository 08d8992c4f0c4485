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

#include "sasim/energy.hpp"

#include <cmath>
#include <set>

#include "json_util.hpp"

namespace sasim {

namespace {

struct Scalar {
    const char *key;
    double BackendCharacterization::*member;
};

constexpr Scalar kScalars[] = {
        {"p_sa_dyn", &BackendCharacterization::p_sa_dyn},
        {"p_sa_leak", &BackendCharacterization::p_sa_leak},
        {"p_simd_dyn", &BackendCharacterization::p_simd_dyn},
        {"p_simd_leak", &BackendCharacterization::p_simd_leak},
        {"e_dram", &BackendCharacterization::e_dram},
        {"t_clk", &BackendCharacterization::t_clk},
};

double json_real(const nlohmann::json &obj, const std::string &key, const std::string &where) {
    const auto &v = json_field(obj, key, where);
    if (!v.is_number()) throw SpecError(where, "'" + key + "' must be a number");
    return v.get<double>();
}

} // namespace

void BackendCharacterization::validate() const {
    const std::string where = name.empty() ? "backend" : name;
    for (const auto &s : kScalars) {
        const double v = this->*(s.member);
        if (!std::isfinite(v) || v < 0)
            throw SpecError(where, std::string(s.key) + " must be a non-negative number");
    }
    if (!(t_clk > 0)) throw SpecError(where, "t_clk must be positive");
    for (Buffer b : kAllBuffers)
        if (!std::isfinite(e_buff[b]) || e_buff[b] < 0)
            throw SpecError(where, "e_buff." + std::string(to_string(b)) + " must be non-negative");
}

BackendCharacterization backend_from_json(const nlohmann::json &doc, const std::string &origin) {
    if (!doc.is_object()) throw SpecError(origin, "backend spec must be a JSON object");
    std::set<std::string> known = {"name", "note", "e_buff"};
    for (const auto &s : kScalars)
        known.insert(s.key);
    for (const auto &[key, _] : doc.items())
        if (!known.count(key)) throw SpecError(origin, "unknown key '" + key + "'");

    BackendCharacterization bc;
    if (doc.contains("name")) bc.name = json_string(doc, "name", origin);
    for (const auto &s : kScalars)
        bc.*(s.member) = json_real(doc, s.key, origin);
    const auto &eb = json_field(doc, "e_buff", origin);
    if (!eb.is_object()) throw SpecError(origin, "e_buff must be an object keyed by buffer");
    for (const auto &[key, _] : eb.items()) {
        bool ok = false;
        for (Buffer b : kAllBuffers)
            ok = ok || key == to_string(b);
        if (!ok) throw SpecError(origin + ": e_buff", "unknown buffer '" + key + "'");
    }
    for (Buffer b : kAllBuffers)
        bc.e_buff[b] = json_real(eb, std::string(to_string(b)), origin + ": e_buff");
    bc.validate();
    return bc;
}

nlohmann::json to_json(const BackendCharacterization &bc) {
    nlohmann::json doc;
    if (!bc.name.empty()) doc["name"] = bc.name;
    for (const auto &s : kScalars)
        doc[s.key] = bc.*(s.member);
    for (Buffer b : kAllBuffers)
        doc["e_buff"][std::string(to_string(b))] = bc.e_buff[b];
    return doc;
}

BackendCharacterization load_backend_spec(const std::filesystem::path &path) {
    return backend_from_json(read_json_file(path), path.string());
}

EnergyActivity EnergyActivity::of(const NetworkStats &s) {
    return {s.c_sa, s.c_simd, s.l_total, s.sram_bits, s.a_d_total};
}

EnergyReport compute_energy(const EnergyActivity &a, const BackendCharacterization &bc) {
    EnergyReport r;
    const double L = static_cast<double>(a.l_total);
    r.e_sa = (static_cast<double>(a.c_sa) * bc.p_sa_dyn + L * bc.p_sa_leak) * bc.t_clk;
    r.e_simd = (static_cast<double>(a.c_simd) * bc.p_simd_dyn + L * bc.p_simd_leak) * bc.t_clk;
    for (Buffer b : kAllBuffers) {
        r.e_sram_per_buffer[b] = static_cast<double>(a.sram_bits[b]) * bc.e_buff[b];
        r.e_sram += r.e_sram_per_buffer[b];
    }
    r.e_dram = static_cast<double>(a.a_d_total) * bc.e_dram;
    r.e_total = r.e_sa + r.e_simd + r.e_sram + r.e_dram;
    r.runtime = L * bc.t_clk;
    r.p_avg = r.runtime > 0 ? r.e_total / r.runtime : 0.0;
    return r;
}

EnergyReport compute_energy(const NetworkStats &stats, const BackendCharacterization &bc) {
    return compute_energy(EnergyActivity::of(stats), bc);
}

nlohmann::json to_json(const EnergyReport &r) {
    nlohmann::json sram;
    for (Buffer b : kAllBuffers)
        sram[std::string(to_string(b))] = r.e_sram_per_buffer[b];
    return {{"e_sa", r.e_sa}, {"e_simd", r.e_simd}, {"e_sram", r.e_sram},
            {"e_sram_per_buffer", sram}, {"e_dram", r.e_dram}, {"e_total", r.e_total},
            {"p_avg", r.p_avg}, {"runtime", r.runtime}};
}

} // namespace sasim

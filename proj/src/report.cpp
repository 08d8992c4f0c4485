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

#include "sasim/report.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "sasim/error.hpp"

namespace sasim {

std::string fnv1a_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path.string(), "cannot open file");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

nlohmann::ordered_json layer_stats_json(const LayerStats &s) {
    nlohmann::ordered_json j;
    j["executed_on"] = std::string(to_string(s.executed_on));
    j["compute_cycles"] = s.compute_cycles;
    j["stall_cycles"] = s.stall_cycles;
    j["total_cycles"] = s.total_cycles;
    for (DramStream d : kAllDramStreams)
        j["dram_bits"][std::string(to_string(d))] = s.dram_bits[d];
    for (Buffer b : kAllBuffers)
        j["sram_bits"][std::string(to_string(b))] = s.sram_bits[b];
    for (OpKind k : kAllOpKinds)
        j["op_counts"][std::string(to_string(k))] = s.op_counts[k];
    return j;
}

nlohmann::ordered_json tiling_json(const Tiling &t) {
    nlohmann::ordered_json j;
    if (const auto *c = std::get_if<ConvTiling>(&t)) {
        auto tile = [](const ConvTile &x) {
            return nlohmann::ordered_json {{"oh", x.oh}, {"ow", x.ow}, {"n", x.n}, {"kh", x.kh},
                    {"kw", x.kw}, {"ic", x.ic}, {"oc", x.oc}};
        };
        j["outer"] = tile(c->outer);
        j["inner"] = tile(c->inner);
    } else {
        const auto &s = std::get<SimdTiling>(t);
        auto tile = [](const SimdTile &x) {
            return nlohmann::ordered_json {{"h", x.h}, {"w", x.w}, {"n", x.n}, {"c", x.c}};
        };
        j["outer"] = tile(s.outer);
        j["inner"] = tile(s.inner);
    }
    return j;
}

nlohmann::ordered_json report_json(const RunReport &r) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto &[k, v] : r.metadata)
        meta[k] = v;
    j["metadata"] = meta;

    const auto &s = r.stats;
    nlohmann::ordered_json agg;
    agg["layers"] = s.layers.size();
    agg["c_sa"] = s.c_sa;
    agg["c_simd"] = s.c_simd;
    agg["l_total"] = s.l_total;
    agg["sa_total_cycles"] = s.sa_total_cycles;
    agg["simd_total_cycles"] = s.simd_total_cycles;
    agg["non_conv_share"] = s.non_conv_share();
    agg["a_d_total"] = s.a_d_total;
    for (DramStream d : kAllDramStreams)
        agg["dram_bits"][std::string(to_string(d))] = s.dram_bits[d];
    for (Buffer b : kAllBuffers)
        agg["sram_bits"][std::string(to_string(b))] = s.sram_bits[b];
    for (OpKind k : kAllOpKinds)
        agg["op_counts"][std::string(to_string(k))] = s.op_counts[k];
    j["aggregate"] = agg;

    if (r.energy) {
        const auto &e = *r.energy;
        nlohmann::ordered_json ej;
        ej["e_sa"] = e.e_sa;
        ej["e_simd"] = e.e_simd;
        ej["e_sram"] = e.e_sram;
        for (Buffer b : kAllBuffers)
            ej["e_sram_per_buffer"][std::string(to_string(b))] = e.e_sram_per_buffer[b];
        ej["e_dram"] = e.e_dram;
        ej["e_total"] = e.e_total;
        ej["p_avg"] = e.p_avg;
        ej["runtime"] = e.runtime;
        j["energy"] = ej;
    }

    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const auto &lr : s.layers) {
        nlohmann::ordered_json l;
        l["name"] = lr.layer.name;
        l["kind"] = std::string(to_string(lr.layer.kind));
        l["phase"] = std::string(to_string(lr.layer.phase));
        if (!lr.layer.source.empty()) l["source"] = lr.layer.source;
        l["tiling"] = tiling_json(lr.tiling);
        l["stats"] = layer_stats_json(lr.stats);
        layers.push_back(l);
    }
    j["layers"] = layers;
    return j;
}

void write_layers_csv(const NetworkStats &stats, std::ostream &os) {
    os << "layer,kind,phase,executed_on,compute_cycles,stall_cycles,total_cycles";
    for (DramStream d : kAllDramStreams)
        os << ",dram_" << to_string(d);
    for (Buffer b : kAllBuffers)
        os << ",sram_" << to_string(b);
    for (OpKind k : kAllOpKinds)
        os << ",ops_" << to_string(k);
    os << '\n';
    for (const auto &lr : stats.layers) {
        const auto &s = lr.stats;
        os << lr.layer.name << ',' << to_string(lr.layer.kind) << ',' << to_string(lr.layer.phase)
           << ',' << to_string(s.executed_on) << ',' << s.compute_cycles << ',' << s.stall_cycles
           << ',' << s.total_cycles;
        for (count_t v : s.dram_bits)
            os << ',' << v;
        for (count_t v : s.sram_bits)
            os << ',' << v;
        for (count_t v : s.op_counts)
            os << ',' << v;
        os << '\n';
    }
}

void write_layers_csv(const NetworkStats &stats, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    write_layers_csv(stats, out);
}

void write_report_json(const RunReport &r, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    out << report_json(r).dump(2) << '\n';
}

} // namespace sasim

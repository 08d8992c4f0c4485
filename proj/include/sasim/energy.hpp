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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sasim/stats.hpp"

namespace sasim {

// Backend power/energy coefficients in SI units.
struct BackendCharacterization {
    std::string name;
    double p_sa_dyn = 0;   // W
    double p_sa_leak = 0;  // W
    double p_simd_dyn = 0; // W
    double p_simd_leak = 0;
    EnumArray<Buffer, 5, double> e_buff; // J/bit
    double e_dram = 0;                   // J/bit
    double t_clk = 1e-9;                 // s

    void validate() const;
};

BackendCharacterization backend_from_json(const nlohmann::json &doc, const std::string &origin);
nlohmann::json to_json(const BackendCharacterization &bc);
BackendCharacterization load_backend_spec(const std::filesystem::path &path);

struct EnergyReport {
    double e_sa = 0;
    double e_simd = 0;
    EnumArray<Buffer, 5, double> e_sram_per_buffer;
    double e_sram = 0;
    double e_dram = 0;
    double e_total = 0;
    double p_avg = 0;
    double runtime = 0;
};

// Activity counts the energy model needs; NetworkStats provides them.
struct EnergyActivity {
    count_t c_sa = 0;
    count_t c_simd = 0;
    count_t l_total = 0;
    SramBits sram_bits;
    count_t a_d_total = 0;

    static EnergyActivity of(const NetworkStats &stats);
};

EnergyReport compute_energy(const EnergyActivity &activity, const BackendCharacterization &bc);
EnergyReport compute_energy(const NetworkStats &stats, const BackendCharacterization &bc);

nlohmann::json to_json(const EnergyReport &r);

} // namespace sasim

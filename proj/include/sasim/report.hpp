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
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sasim/energy.hpp"
#include "sasim/stats.hpp"

namespace sasim {

inline constexpr std::string_view kToolVersion = "0.1.0";

// 64-bit FNV-1a of the file's bytes, as 16 hex digits.
std::string fnv1a_file(const std::filesystem::path &path);

struct RunReport {
    NetworkStats stats;
    std::optional<EnergyReport> energy;
    // Ordered key/value metadata: input hashes, mode, variant, conventions.
    std::vector<std::pair<std::string, std::string>> metadata;
};

nlohmann::ordered_json layer_stats_json(const LayerStats &s);
nlohmann::ordered_json tiling_json(const Tiling &t);
nlohmann::ordered_json report_json(const RunReport &r);

// Fixed column order, one row per layer in network order.
void write_layers_csv(const NetworkStats &stats, std::ostream &os);
void write_layers_csv(const NetworkStats &stats, const std::filesystem::path &path);
void write_report_json(const RunReport &r, const std::filesystem::path &path);

} // namespace sasim

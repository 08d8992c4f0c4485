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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sasim/hardware.hpp"
#include "sasim/layer.hpp"
#include "sasim/simulator.hpp"

namespace sasim {

// The eight explored parameters, in tuple order.
enum class DseParam : std::uint8_t { Wbuf, Ibuf, Obuf, Vmem, BwW, BwI, BwO, BwV };

inline constexpr std::array<DseParam, 8> kAllDseParams = {DseParam::Wbuf, DseParam::Ibuf,
        DseParam::Obuf, DseParam::Vmem, DseParam::BwW, DseParam::BwI, DseParam::BwO, DseParam::BwV};

std::string_view to_string(DseParam p);
std::optional<DseParam> parse_dse_param(std::string_view text);
constexpr bool is_size_param(DseParam p) {
    return p == DseParam::Wbuf || p == DseParam::Ibuf || p == DseParam::Obuf || p == DseParam::Vmem;
}

using DseTuple = std::array<count_t, 8>; // sizes in bytes, bandwidths in bits/cycle

count_t get_param(const HardwareConfig &hw, DseParam p);
void set_param(HardwareConfig &hw, DseParam p, count_t value);
DseTuple tuple_of(const HardwareConfig &hw);
HardwareConfig with_tuple(HardwareConfig hw, const DseTuple &t);

struct DseConfig {
    count_t sram_budget_bytes = 2048 * 1024;
    count_t bw_budget = 2048; // bits/cycle
    double deviation = 0.15;
    std::array<std::vector<count_t>, 8> grids = default_grids();
    unsigned threads = 0; // 0: hardware concurrency
    SimulationOptions sim;

    static std::array<std::vector<count_t>, 8> default_grids();
    void validate() const;
};

struct DsePoint {
    DseTuple params {};
    count_t metric = 0;
    bool feasible = false;

    count_t sram_sum() const { return params[0] + params[1] + params[2] + params[3]; }
    count_t bw_sum() const { return params[4] + params[5] + params[6] + params[7]; }
};

struct DseResult {
    DsePoint optimal;
    DsePoint worst;
    std::vector<DsePoint> all; // every point inside both budget windows, grid order
    count_t skipped_out_of_budget = 0;
    count_t feasible_count = 0;

    double improvement_ratio() const {
        return optimal.metric == 0 ? 0.0 : static_cast<double>(worst.metric) / optimal.metric;
    }
};

// Total network cycles on `hw`, or nullopt if some layer cannot be tiled.
std::optional<count_t> network_metric(
        const std::vector<LayerSpec> &network, const HardwareConfig &hw, const SimulationOptions &opts);

// Exhaustive sweep. Cycles of the SA layers depend only on
// (Wbuf, Ibuf, Obuf, BW_w, BW_i, BW_o) and of the SIMD layers only on
// (Vmem, BW_v), so the two halves are evaluated once per distinct key.
DseResult run_dse(const std::vector<LayerSpec> &network, const HardwareConfig &base_hw,
        const DseConfig &cfg);

// Feasible points within (1 + within) of the optimum, by total SRAM, then
// total bandwidth, then tuple.
std::vector<DsePoint> extract_landscape(
        const std::vector<DsePoint> &all, const DsePoint &optimal, double within);

// Landscape picks: smallest total SRAM / smallest total bandwidth.
std::optional<DsePoint> min_sram_pick(const std::vector<DsePoint> &landscape);
std::optional<DsePoint> min_bw_pick(const std::vector<DsePoint> &landscape);

struct SensitivityPoint {
    count_t value = 0;
    count_t metric = 0;
    double normalized = 0;
};

// Sweeps one parameter over `grid`, holding the others at `optimal_hw`.
// Values with no feasible tiling are omitted. Normalized against the metric
// at `optimal_hw` itself.
std::vector<SensitivityPoint> sensitivity_sweep(const std::vector<LayerSpec> &network,
        const HardwareConfig &optimal_hw, DseParam param, const std::vector<count_t> &grid,
        const SimulationOptions &opts = {});

void write_dse_csv(const DseResult &r, const std::filesystem::path &path);
nlohmann::json dse_summary(const DseResult &r, const DseConfig &cfg, double landscape_within);
void write_sensitivity_csv(
        DseParam param, const std::vector<SensitivityPoint> &points, const std::filesystem::path &path);

} // namespace sasim

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

#include "sasim/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include <fmt/format.h>

#include "sasim/error.hpp"
#include "sasim/simd_engine.hpp"
#include "sasim/tiler.hpp"

namespace sasim {

namespace {

constexpr std::array<std::string_view, 8> kParamNames
        = {"wbuf", "ibuf", "obuf", "vmem", "bw_w", "bw_i", "bw_o", "bw_v"};

constexpr std::array<count_t HardwareConfig::*, 8> kParamMembers = {&HardwareConfig::wbuf_bytes,
        &HardwareConfig::ibuf_bytes, &HardwareConfig::obuf_bytes, &HardwareConfig::vmem_bytes,
        &HardwareConfig::bw_w, &HardwareConfig::bw_i, &HardwareConfig::bw_o, &HardwareConfig::bw_v};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
// only its own slot, so the result does not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next {0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
    for (auto &th : pool)
        th.join();
}

bool in_window(count_t sum, count_t budget, double dev) {
    const double s = static_cast<double>(sum), b = static_cast<double>(budget);
    return s >= (1.0 - dev) * b && s <= (1.0 + dev) * b;
}

// All 4-tuples (one value per grid) whose sum lies in the budget window,
// in lexicographic order.
std::vector<std::array<count_t, 4>> window_tuples(
        const std::array<const std::vector<count_t> *, 4> &grids, count_t budget, double dev) {
    std::vector<std::array<count_t, 4>> out;
    for (count_t a : *grids[0])
        for (count_t b : *grids[1])
            for (count_t c : *grids[2])
                for (count_t d : *grids[3])
                    if (in_window(a + b + c + d, budget, dev)) out.push_back({a, b, c, d});
    return out;
}

template <typename Key>
std::vector<Key> distinct(std::vector<Key> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

template <typename Key>
std::size_t index_of(const std::vector<Key> &sorted, const Key &k) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin());
}

bool tuple_less(const DsePoint &a, const DsePoint &b) {
    return a.params < b.params;
}

} // namespace

std::string_view to_string(DseParam p) {
    return kParamNames[static_cast<std::size_t>(p)];
}

std::optional<DseParam> parse_dse_param(std::string_view text) {
    for (DseParam p : kAllDseParams)
        if (to_string(p) == text) return p;
    return std::nullopt;
}

count_t get_param(const HardwareConfig &hw, DseParam p) {
    return hw.*kParamMembers[static_cast<std::size_t>(p)];
}

void set_param(HardwareConfig &hw, DseParam p, count_t value) {
    hw.*kParamMembers[static_cast<std::size_t>(p)] = value;
}

DseTuple tuple_of(const HardwareConfig &hw) {
    DseTuple t;
    for (std::size_t i = 0; i < 8; ++i)
        t[i] = hw.*kParamMembers[i];
    return t;
}

HardwareConfig with_tuple(HardwareConfig hw, const DseTuple &t) {
    for (std::size_t i = 0; i < 8; ++i)
        hw.*kParamMembers[i] = t[i];
    return hw;
}

std::array<std::vector<count_t>, 8> DseConfig::default_grids() {
    std::vector<count_t> sizes, bws;
    for (count_t v = 32; v <= 2048; v *= 2) {
        sizes.push_back(v * 1024);
        bws.push_back(v);
    }
    return {sizes, sizes, sizes, sizes, bws, bws, bws, bws};
}

void DseConfig::validate() const {
    if (!(deviation >= 0.0 && deviation < 1.0)) throw SpecError("dse", "deviation must be in [0, 1)");
    if (sram_budget_bytes == 0) throw SpecError("dse", "SRAM budget must be positive");
    if (bw_budget == 0) throw SpecError("dse", "bandwidth budget must be positive");
    for (DseParam p : kAllDseParams) {
        const auto &g = grids[static_cast<std::size_t>(p)];
        if (g.empty()) throw SpecError("dse", "empty grid for " + std::string(to_string(p)));
        for (count_t v : g)
            if (v == 0) throw SpecError("dse", "grid values must be positive");
    }
}

std::optional<count_t> network_metric(
        const std::vector<LayerSpec> &network, const HardwareConfig &hw, const SimulationOptions &opts) {
    try {
        return simulate_network(network, hw, opts).l_total;
    } catch (const InfeasibleTilingError &) {
        return std::nullopt;
    }
}

DseResult run_dse(
        const std::vector<LayerSpec> &network, const HardwareConfig &base_hw, const DseConfig &cfg_in) {
    DseConfig cfg = cfg_in;
    cfg.validate();
    for (auto &g : cfg.grids)
        g = distinct(g);

    std::vector<const LayerSpec *> sa_layers, simd_layers;
    for (const auto &l : network)
        (is_conv_family(l.kind) ? sa_layers : simd_layers).push_back(&l);

    const auto sizes = window_tuples(
            {&cfg.grids[0], &cfg.grids[1], &cfg.grids[2], &cfg.grids[3]}, cfg.sram_budget_bytes,
            cfg.deviation);
    const auto bws = window_tuples({&cfg.grids[4], &cfg.grids[5], &cfg.grids[6], &cfg.grids[7]},
            cfg.bw_budget, cfg.deviation);

    count_t grid_points = 1;
    for (const auto &g : cfg.grids)
        grid_points *= g.size();

    DseResult res;
    res.skipped_out_of_budget = grid_points - sizes.size() * bws.size();
    if (sizes.empty())
        throw SpecError("dse",
                fmt::format("no SRAM grid combination sums to within {:.0f}% of {} bytes",
                        cfg.deviation * 100, cfg.sram_budget_bytes));
    if (bws.empty())
        throw SpecError("dse",
                fmt::format("no bandwidth grid combination sums to within {:.0f}% of {} bits/cycle",
                        cfg.deviation * 100, cfg.bw_budget));

    using Key3 = std::array<count_t, 3>;
    std::vector<Key3> wio_keys, bw3_keys;
    std::vector<count_t> v_keys, bwv_keys;
    for (const auto &s : sizes) {
        wio_keys.push_back({s[0], s[1], s[2]});
        v_keys.push_back(s[3]);
    }
    for (const auto &b : bws) {
        bw3_keys.push_back({b[0], b[1], b[2]});
        bwv_keys.push_back(b[3]);
    }
    wio_keys = distinct(wio_keys);
    bw3_keys = distinct(bw3_keys);
    v_keys = distinct(v_keys);
    bwv_keys = distinct(bwv_keys);

    auto hw_for = [&](const Key3 &wio, count_t v, const Key3 &bw3, count_t bwv) {
        return with_tuple(base_hw, {wio[0], wio[1], wio[2], v, bw3[0], bw3[1], bw3[2], bwv});
    };

    // Tilings depend on buffer sizes only.
    std::vector<std::optional<std::vector<ConvTiling>>> sa_tilings(wio_keys.size());
    std::vector<std::string> sa_fail(wio_keys.size());
    parallel_for(wio_keys.size(), cfg.threads, [&](std::size_t i) {
        const auto hw = hw_for(wio_keys[i], base_hw.vmem_bytes, bw3_keys[0], bwv_keys[0]);
        std::vector<ConvTiling> ts;
        try {
            for (const auto *l : sa_layers)
                ts.push_back(std::get<ConvTiling>(tiling_for_layer(*l, l->bits.apply(hw))));
            sa_tilings[i] = std::move(ts);
        } catch (const InfeasibleTilingError &e) {
            sa_fail[i] = e.buffer();
        }
    });
    std::vector<std::optional<std::vector<SimdTiling>>> simd_tilings(v_keys.size());
    std::vector<std::string> simd_fail(v_keys.size());
    parallel_for(v_keys.size(), cfg.threads, [&](std::size_t i) {
        const auto hw = hw_for(wio_keys[0], v_keys[i], bw3_keys[0], bwv_keys[0]);
        std::vector<SimdTiling> ts;
        try {
            for (const auto *l : simd_layers)
                ts.push_back(std::get<SimdTiling>(tiling_for_layer(*l, l->bits.apply(hw))));
            simd_tilings[i] = std::move(ts);
        } catch (const InfeasibleTilingError &e) {
            simd_fail[i] = e.buffer();
        }
    });

    // Cycles per (sizes, bandwidths) half.
    const std::size_t n_bw3 = bw3_keys.size();
    std::vector<std::optional<count_t>> sa_cost(wio_keys.size() * n_bw3);
    parallel_for(sa_cost.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t i = idx / n_bw3, j = idx % n_bw3;
        if (!sa_tilings[i]) return;
        const auto hw = hw_for(wio_keys[i], base_hw.vmem_bytes, bw3_keys[j], bwv_keys[0]);
        count_t total = 0;
        for (std::size_t k = 0; k < sa_layers.size(); ++k) {
            const auto *l = sa_layers[k];
            total += conv_eval(l->conv(), (*sa_tilings[i])[k], l->bits.apply(hw), cfg.sim.variant,
                    cfg.sim.conventions)
                             .total_cycles;
        }
        sa_cost[idx] = total;
    });
    const std::size_t n_bwv = bwv_keys.size();
    std::vector<std::optional<count_t>> simd_cost(v_keys.size() * n_bwv);
    parallel_for(simd_cost.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t i = idx / n_bwv, j = idx % n_bwv;
        if (!simd_tilings[i]) return;
        const auto hw = hw_for(wio_keys[0], v_keys[i], bw3_keys[0], bwv_keys[j]);
        count_t total = 0;
        for (std::size_t k = 0; k < simd_layers.size(); ++k) {
            const auto *l = simd_layers[k];
            total += simd_layer_eval(l->kind, l->simd(), (*simd_tilings[i])[k], l->bits.apply(hw))
                             .total_cycles;
        }
        simd_cost[idx] = total;
    });

    res.all.reserve(sizes.size() * bws.size());
    bool have_best = false;
    for (const auto &s : sizes) {
        const std::size_t wio = index_of(wio_keys, Key3 {s[0], s[1], s[2]});
        const std::size_t v = index_of(v_keys, s[3]);
        for (const auto &b : bws) {
            const std::size_t bw3 = index_of(bw3_keys, Key3 {b[0], b[1], b[2]});
            const std::size_t bwv = index_of(bwv_keys, b[3]);
            DsePoint p;
            p.params = {s[0], s[1], s[2], s[3], b[0], b[1], b[2], b[3]};
            const auto &sa = sa_cost[wio * n_bw3 + bw3];
            const auto &si = simd_cost[v * n_bwv + bwv];
            p.feasible = sa.has_value() && si.has_value();
            if (p.feasible) {
                p.metric = *sa + *si;
                ++res.feasible_count;
                // Points arrive in lexicographic order, so strict comparisons
                // keep the smallest tuple on ties.
                if (!have_best || p.metric < res.optimal.metric) res.optimal = p;
                if (!have_best || p.metric > res.worst.metric) res.worst = p;
                have_best = true;
            }
            res.all.push_back(p);
        }
    }

    if (!have_best) {
        std::map<std::string, count_t> reasons;
        for (const auto &f : sa_fail)
            if (!f.empty()) ++reasons[f];
        for (const auto &f : simd_fail)
            if (!f.empty()) ++reasons[f];
        std::string buffer = "unknown";
        count_t most = 0;
        for (const auto &[b, n] : reasons)
            if (n > most) {
                most = n;
                buffer = b;
            }
        throw InfeasibleTilingError("dse", buffer,
                "no grid point inside the budget windows admits a tiling for every layer");
    }
    return res;
}

std::vector<DsePoint> extract_landscape(
        const std::vector<DsePoint> &all, const DsePoint &optimal, double within) {
    const double limit = (1.0 + within) * static_cast<double>(optimal.metric);
    std::vector<DsePoint> out;
    for (const auto &p : all)
        if (p.feasible && static_cast<double>(p.metric) <= limit) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const DsePoint &a, const DsePoint &b) {
        if (a.sram_sum() != b.sram_sum()) return a.sram_sum() < b.sram_sum();
        if (a.bw_sum() != b.bw_sum()) return a.bw_sum() < b.bw_sum();
        return tuple_less(a, b);
    });
    return out;
}

std::optional<DsePoint> min_sram_pick(const std::vector<DsePoint> &landscape) {
    if (landscape.empty()) return std::nullopt;
    return *std::min_element(landscape.begin(), landscape.end(), [](const auto &a, const auto &b) {
        return std::make_tuple(a.sram_sum(), a.metric, a.params)
                < std::make_tuple(b.sram_sum(), b.metric, b.params);
    });
}

std::optional<DsePoint> min_bw_pick(const std::vector<DsePoint> &landscape) {
    if (landscape.empty()) return std::nullopt;
    return *std::min_element(landscape.begin(), landscape.end(), [](const auto &a, const auto &b) {
        return std::make_tuple(a.bw_sum(), a.metric, a.params)
                < std::make_tuple(b.bw_sum(), b.metric, b.params);
    });
}

std::vector<SensitivityPoint> sensitivity_sweep(const std::vector<LayerSpec> &network,
        const HardwareConfig &optimal_hw, DseParam param, const std::vector<count_t> &grid,
        const SimulationOptions &opts) {
    const auto base = network_metric(network, optimal_hw, opts);
    if (!base)
        throw InfeasibleTilingError("sensitivity", "reference point",
                "the reference hardware has no feasible tiling");
    std::vector<SensitivityPoint> out;
    for (count_t v : grid) {
        HardwareConfig hw = optimal_hw;
        set_param(hw, param, v);
        const auto m = network_metric(network, hw, opts);
        if (!m) continue;
        out.push_back({v, *m, static_cast<double>(*m) / static_cast<double>(*base)});
    }
    return out;
}

void write_dse_csv(const DseResult &r, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    for (DseParam p : kAllDseParams)
        out << to_string(p) << ',';
    out << "metric,feasible\n";
    for (const auto &p : r.all) {
        for (count_t v : p.params)
            out << v << ',';
        out << (p.feasible ? std::to_string(p.metric) : "") << ',' << (p.feasible ? 1 : 0) << '\n';
    }
}

namespace {

nlohmann::json point_json(const DsePoint &p) {
    nlohmann::json j;
    for (DseParam q : kAllDseParams)
        j[std::string(to_string(q))] = p.params[static_cast<std::size_t>(q)];
    j["metric"] = p.metric;
    j["sram_bytes"] = p.sram_sum();
    j["bw_bits_per_cycle"] = p.bw_sum();
    return j;
}

} // namespace

nlohmann::json dse_summary(const DseResult &r, const DseConfig &cfg, double landscape_within) {
    nlohmann::json j;
    j["sram_budget_bytes"] = cfg.sram_budget_bytes;
    j["bw_budget_bits_per_cycle"] = cfg.bw_budget;
    j["deviation"] = cfg.deviation;
    j["points_in_budget"] = r.all.size();
    j["skipped_out_of_budget"] = r.skipped_out_of_budget;
    j["feasible_points"] = r.feasible_count;
    j["optimal"] = point_json(r.optimal);
    j["worst"] = point_json(r.worst);
    j["improvement_ratio"] = r.improvement_ratio();
    const auto land = extract_landscape(r.all, r.optimal, landscape_within);
    j["landscape_within"] = landscape_within;
    j["landscape_size"] = land.size();
    if (auto p = min_sram_pick(land)) j["min_sram_pick"] = point_json(*p);
    if (auto p = min_bw_pick(land)) j["min_bw_pick"] = point_json(*p);
    return j;
}

void write_sensitivity_csv(
        DseParam param, const std::vector<SensitivityPoint> &points, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string(), "cannot open for writing");
    out << to_string(param) << ",metric,normalized\n";
    for (const auto &p : points)
        out << p.value << ',' << p.metric << ',' << fmt::format("{:.6f}", p.normalized) << '\n';
}

} // namespace sasim

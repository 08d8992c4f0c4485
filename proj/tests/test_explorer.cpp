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

#include <catch_amalgamated.hpp>

#include "sasim/error.hpp"
#include "sasim/explorer.hpp"
#include "sasim/hardware.hpp"
#include "sasim/network.hpp"
#include "sasim/simulator.hpp"

using namespace sasim;

namespace {

const std::string data_dir = SASIM_DATA_DIR;

DseConfig toy_config() {
    DseConfig cfg;
    cfg.sram_budget_bytes = 384 * 1024;
    cfg.bw_budget = 384;
    cfg.deviation = 0.4;
    for (std::size_t i = 0; i < 4; ++i)
        cfg.grids[i] = {64 * 1024, 128 * 1024};
    for (std::size_t i = 4; i < 8; ++i)
        cfg.grids[i] = {64, 128};
    cfg.threads = 1;
    return cfg;
}

struct Toy {
    std::vector<LayerSpec> net = load_network_spec(data_dir + "/networks/toy4.json");
    HardwareConfig hw = load_hardware_spec(data_dir + "/hw/small4x4.json");
};

bool same(const DsePoint &a, const DsePoint &b) {
    return a.params == b.params && a.metric == b.metric && a.feasible == b.feasible;
}

} // namespace

TEST_CASE("parameter names and accessors", "[dse]") {
    HardwareConfig hw;
    for (DseParam p : kAllDseParams) {
        CHECK(parse_dse_param(to_string(p)) == p);
        set_param(hw, p, 100 + static_cast<count_t>(p));
        CHECK(get_param(hw, p) == 100 + static_cast<count_t>(p));
    }
    CHECK(with_tuple(HardwareConfig {}, tuple_of(hw)) == hw);
    CHECK_FALSE(parse_dse_param("bbuf"));
}

TEST_CASE("toy exploration matches brute force", "[dse]") {
    const Toy toy;
    const auto r = run_dse(toy.net, toy.hw, toy_config());
    REQUIRE(r.all.size() == 256);
    CHECK(r.skipped_out_of_budget == 0);

    DsePoint best, worst;
    bool any = false;
    for (count_t bits = 0; bits < 256; ++bits) {
        DseTuple t;
        for (std::size_t i = 0; i < 8; ++i) {
            const bool hi = (bits >> (7 - i)) & 1;
            t[i] = i < 4 ? (hi ? 128 : 64) * 1024 : (hi ? 128 : 64);
        }
        const auto hw = with_tuple(toy.hw, t);
        count_t metric = 0;
        try {
            metric = simulate_network(toy.net, hw).l_total;
        } catch (const InfeasibleTilingError &) {
            continue;
        }
        REQUIRE(r.all[bits].params == t);
        REQUIRE(r.all[bits].metric == metric);
        if (!any || metric < best.metric) best = {t, metric, true};
        if (!any || metric > worst.metric) worst = {t, metric, true};
        any = true;
    }
    REQUIRE(any);
    CHECK(same(r.optimal, best));
    CHECK(same(r.worst, worst));
    CHECK(r.improvement_ratio() > 1.0);
}

TEST_CASE("parallel and sequential exploration agree", "[dse]") {
    const Toy toy;
    auto cfg = toy_config();
    const auto seq = run_dse(toy.net, toy.hw, cfg);
    cfg.threads = 4;
    const auto par = run_dse(toy.net, toy.hw, cfg);
    REQUIRE(seq.all.size() == par.all.size());
    for (std::size_t i = 0; i < seq.all.size(); ++i)
        REQUIRE(same(seq.all[i], par.all[i]));
    CHECK(same(seq.optimal, par.optimal));
    CHECK(same(seq.worst, par.worst));
}

TEST_CASE("budget window filters the grid", "[dse]") {
    const Toy toy;
    auto cfg = toy_config();
    cfg.deviation = 0.1;
    const auto r = run_dse(toy.net, toy.hw, cfg);
    CHECK(r.all.size() + r.skipped_out_of_budget == 256);
    for (const auto &p : r.all) {
        CHECK(p.sram_sum() >= 0.9 * cfg.sram_budget_bytes);
        CHECK(p.sram_sum() <= 1.1 * cfg.sram_budget_bytes);
        CHECK(p.bw_sum() >= 0.9 * cfg.bw_budget);
        CHECK(p.bw_sum() <= 1.1 * cfg.bw_budget);
    }

    cfg.sram_budget_bytes = 64 * 1024 * 1024;
    CHECK_THROWS_AS(run_dse(toy.net, toy.hw, cfg), SpecError);
    cfg = toy_config();
    cfg.deviation = 1.5;
    CHECK_THROWS_AS(run_dse(toy.net, toy.hw, cfg), SpecError);
}

TEST_CASE("landscape filter and picks", "[dse]") {
    const Toy toy;
    const auto r = run_dse(toy.net, toy.hw, toy_config());
    const auto exact = extract_landscape(r.all, r.optimal, 0.0);
    REQUIRE_FALSE(exact.empty());
    for (const auto &p : exact)
        CHECK(p.metric == r.optimal.metric);

    const auto narrow = extract_landscape(r.all, r.optimal, 0.10);
    const auto wide = extract_landscape(r.all, r.optimal, 0.15);
    CHECK(wide.size() >= narrow.size());
    for (const auto &p : narrow)
        CHECK(std::any_of(wide.begin(), wide.end(), [&](const DsePoint &q) { return same(p, q); }));

    const auto pick = min_sram_pick(wide);
    REQUIRE(pick);
    for (const auto &p : wide)
        CHECK(pick->sram_sum() <= p.sram_sum());
    const auto bw_pick = min_bw_pick(wide);
    REQUIRE(bw_pick);
    for (const auto &p : wide)
        CHECK(bw_pick->bw_sum() <= p.bw_sum());
}

TEST_CASE("bandwidth sweeps are monotone", "[dse][sensitivity]") {
    const Toy toy;
    const std::vector<count_t> grid {2048, 1024, 512, 256, 128, 64, 32, 16, 8};
    for (DseParam p : {DseParam::BwW, DseParam::BwI, DseParam::BwO, DseParam::BwV}) {
        const auto pts = sensitivity_sweep(toy.net, toy.hw, p, grid);
        REQUIRE(pts.size() == grid.size());
        for (std::size_t i = 1; i < pts.size(); ++i)
            REQUIRE(pts[i].metric >= pts[i - 1].metric);
        for (const auto &pt : pts)
            if (pt.value == get_param(toy.hw, p)) CHECK(pt.normalized == 1.0);
    }
}

TEST_CASE("infeasible sweep values are dropped", "[dse][sensitivity]") {
    const Toy toy;
    const std::vector<count_t> grid {1, 3, 1024, 65536};
    const auto pts = sensitivity_sweep(toy.net, toy.hw, DseParam::Wbuf, grid);
    CHECK(pts.size() == 2);
    CHECK(pts.front().value == 1024);
}

TEST_CASE("ifmap bandwidth matters more than ifmap buffer size", "[dse][sensitivity]") {
    // The 4x4 array is compute-bound on this network; use the 64x64 platform.
    const Toy toy;
    const auto hw = load_hardware_spec(data_dir + "/hw/HT3.json");
    const count_t bw = hw.bw_i, size = hw.ibuf_bytes;
    const auto by_bw = sensitivity_sweep(toy.net, hw, DseParam::BwI, {bw / 16, bw});
    const auto by_size = sensitivity_sweep(toy.net, hw, DseParam::Ibuf, {size / 16, size});
    REQUIRE(by_bw.size() == 2);
    REQUIRE(by_size.size() == 2);
    CHECK(by_bw[0].normalized > by_size[0].normalized);
}

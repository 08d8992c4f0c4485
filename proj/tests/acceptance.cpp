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

// Acceptance harness: one PASS/FAIL line per criterion. Criterion 10 is a
// trend report and never fails the run.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "counting_oracle.hpp"
#include "fixtures.hpp"
#include "sasim/conv_engine.hpp"
#include "sasim/energy.hpp"
#include "sasim/error.hpp"
#include "sasim/explorer.hpp"
#include "sasim/network.hpp"
#include "sasim/oracle.hpp"
#include "sasim/random_instance.hpp"
#include "sasim/simd_engine.hpp"
#include "sasim/simulator.hpp"
#include "sasim/tiler.hpp"
#include "sasim/train_expand.hpp"

using namespace sasim;
using namespace sasim::test;

namespace {

const std::string data_dir = SASIM_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(std::string why) {
        if (pass) detail = std::move(why);
        pass = false;
    }
};

// ---- 1 -------------------------------------------------------------------

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260101);
    constexpr int n = 250;
    int exact = 0;
    for (int i = 0; i < n; ++i) {
        const auto inst = random_conv_instance(rng, 16);
        const auto a = conv_eval(inst.shape, inst.tiling, inst.hw);
        const auto tr = simulate_conv(inst.shape, inst.tiling, inst.hw);
        if (a.total_cycles != tr.total_cycles)
            o.fail(fmt::format("instance {}: {} vs oracle {} cycles", i, a.total_cycles, tr.total_cycles));
        else if (a.dram_bits != tr.bits)
            o.fail(fmt::format("instance {}: DRAM bits differ", i));
        else
            ++exact;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) o.fail(fmt::format("took {:.1f} s", secs));
    if (o.pass) o.detail = fmt::format("{}/{} exact, {:.2f} s", exact, n, secs);
    return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome worked_conv() {
    Outcome o;
    auto hw = worked_hw();
    const auto s = worked_conv_shape();
    const auto t = worked_conv_tiling(hw);
    auto expect = [&](const char *what, count_t got, count_t want) {
        if (got != want) o.fail(fmt::format("{} = {}, expected {}", what, got, want));
    };
    const auto d = conv_dram_accesses(s, t, hw);
    expect("weight bits", d[DramStream::Weight], 4608);
    expect("ifmap bits", d[DramStream::Ifmap], 8192);
    expect("psum bits", d[DramStream::PsumOfmap], 9216);
    expect("bias bits", d[DramStream::Bias], 256);
    const auto sr = conv_sram_accesses(s, t, hw);
    expect("WBuf bits", sr[Buffer::WBuf], 165888);
    expect("IBuf bits", sr[Buffer::IBuf], 41472);
    expect("OBuf bits", sr[Buffer::OBuf], 156672);
    expect("BBuf bits", sr[Buffer::BBuf], 9216);
    const auto fast = conv_eval(s, t, hw);
    expect("compute", fast.compute_cycles, 660);
    expect("stall at BW=128", fast.stall_cycles, 0);
    hw.bw_i = 8;
    expect("stall at BW_i=8", conv_eval(s, t, hw).stall_cycles, 376);
    if (o.pass) o.detail = "DRAM 4608/8192/9216/256, SRAM 165888/41472/156672/9216, C=660, S=0/376";
    return o;
}

// ---- 3 -------------------------------------------------------------------

Outcome weight_once() {
    Outcome o;
    std::mt19937_64 rng(3);
    int checked = 0, generated = 0;
    auto check = [&](const ConvShape &s, const ConvTiling &t, const HardwareConfig &hw) {
        const count_t want = s.kh * s.kw * s.ic * s.oc * hw.bits_weight;
        const count_t got = conv_dram_accesses(s, t, hw)[DramStream::Weight];
        if (got != want) o.fail(fmt::format("instance {}: {} weight bits, expected {}", checked, got, want));
        ++checked;
    };
    while (generated < 500) {
        const auto s = random_conv_shape(rng, 24);
        auto hw = worked_hw();
        hw.wbuf_bytes = std::uniform_int_distribution<count_t>(32, 4096)(rng);
        hw.ibuf_bytes = std::uniform_int_distribution<count_t>(64, 8192)(rng);
        hw.obuf_bytes = std::uniform_int_distribution<count_t>(64, 8192)(rng);
        try {
            check(s, generate_conv_tiling(s, hw), hw);
            ++generated;
        } catch (const InfeasibleTilingError &) {
        }
    }
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_conv_instance(rng, 16, true);
        check(inst.shape, inst.tiling, inst.hw);
    }
    if (o.pass) o.detail = fmt::format("{} instances (500 generated, 500 random divisor tilings)", checked);
    return o;
}

// ---- 4 -------------------------------------------------------------------

Outcome stall_case_algebra() {
    Outcome o;
    std::mt19937_64 rng(4);
    constexpr int n = 1000;
    for (int i = 0; i < n; ++i) {
        const auto inst = random_conv_instance(rng, 16);
        const auto m = ConvMultipliers::of(inst.shape, inst.tiling);
        std::int64_t sum = 0;
        for (auto v : conv_case_occurrences(m)) {
            if (v < 0) o.fail(fmt::format("instance {}: negative occurrence count", i));
            sum += v;
        }
        if (static_cast<count_t>(sum) != m.m_outer)
            o.fail(fmt::format("instance {}: occurrences sum to {}, M_outer {}", i, sum, m.m_outer));
        if (i < 300) {
            const auto tr = simulate_conv(inst.shape, inst.tiling, inst.hw);
            for (int bad : {3, 6, 7, 8})
                if (tr.case_counts[bad] != 0) o.fail(fmt::format("instance {}: case {} in trace", i, bad));
        }
    }
    if (o.pass) o.detail = fmt::format("{} instances, 300 oracle traces with cases 1/2/4/5 only", n);
    return o;
}

// ---- 5 -------------------------------------------------------------------

Outcome variant_ordering() {
    Outcome o;
    std::mt19937_64 rng(5);
    double max_ratio = 0;
    auto check = [&](const ConvShape &s, const ConvTiling &t, const HardwareConfig &hw) {
        const auto n = conv_eval(s, t, hw, ModelVariant::NoStall).total_cycles;
        const auto sm = conv_eval(s, t, hw, ModelVariant::Simplified).total_cycles;
        const auto f = conv_eval(s, t, hw, ModelVariant::Full).total_cycles;
        if (!(n <= sm && sm <= f)) o.fail(fmt::format("ordering violated: {} {} {}", n, sm, f));
        max_ratio = std::max(max_ratio, static_cast<double>(f) / static_cast<double>(n));
    };
    for (int i = 0; i < 1000; ++i) {
        const auto inst = random_conv_instance(rng, 16);
        check(inst.shape, inst.tiling, inst.hw);
    }
    auto hw = worked_hw();
    hw.bw_i = 8;
    const auto s = worked_conv_shape();
    const auto t = worked_conv_tiling(hw);
    const double starved = static_cast<double>(conv_eval(s, t, hw).total_cycles)
            / static_cast<double>(conv_eval(s, t, hw, ModelVariant::NoStall).total_cycles);
    check(s, t, hw);
    if (starved < 1.5) o.fail(fmt::format("bandwidth-starved Full/NoStall = {:.3f}", starved));
    if (o.pass)
        o.detail = fmt::format("1001 layers ordered; starved layer Full/NoStall = {:.3f}, max {:.2f}",
                starved, max_ratio);
    return o;
}

// ---- 6 -------------------------------------------------------------------

Outcome training_transforms() {
    Outcome o;
    std::mt19937_64 rng(6);
    int exact_windows = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_conv_shape(rng, 32);
        const auto [dx, dw] = backward_conv_shapes(f);
        // dX produces the ifmap extent the forward window actually covers,
        // which is the padded ifmap whenever the window tiles it exactly.
        if (dx.oh != f.effective_ih() || dx.ow != f.effective_iw())
            o.fail(fmt::format("shape {}: dX ofmap {}x{}", i, dx.oh, dx.ow));
        if (f.effective_ih() == f.ih + 2 * f.pad_h && f.effective_iw() == f.iw + 2 * f.pad_w) {
            ++exact_windows;
            if (dx.oh != f.ih + 2 * f.pad_h) o.fail(fmt::format("shape {}: dX ofmap != ifmap", i));
        }
        if (dw.oh != f.kh || dw.ow != f.kw) o.fail(fmt::format("shape {}: dW ofmap {}x{}", i, dw.oh, dw.ow));
        if (dx.stride != 1 || dw.stride != 1) o.fail("backward conv with stride != 1");
        try {
            dx.validate("dX");
            dw.validate("dW");
        } catch (const SpecError &e) {
            o.fail(e.what());
        }
    }

    const auto net = with_batch(load_network_spec(data_dir + "/networks/resnet50.json"), 32);
    const auto g = expand_training(net);
    const auto it = std::find_if(g.backward.begin(), g.backward.end(),
            [](const LayerSpec &l) { return l.name == "conv1.conv.dW"; });
    if (it == g.backward.end()) {
        o.fail("no weight-gradient layer for the stem");
        return o;
    }
    const auto &dw = it->conv();
    if (dw.kh != 223 || dw.kw != 223) o.fail(fmt::format("stem dW kernel {}x{}", dw.kh, dw.kw));
    const auto hw = load_hardware_spec(data_dir + "/hw/HT3.json");
    count_t tkh = 0;
    try {
        const auto t = std::get<ConvTiling>(tiling_for_layer(*it, hw));
        tkh = t.outer.kh;
        if (!validate_tiling(*it, t, hw).all_fit()) o.fail("stem dW tiling does not fit");
        if (tkh >= 223) o.fail(fmt::format("stem dW T_kh = {}", tkh));
    } catch (const InfeasibleTilingError &e) {
        o.fail(e.what());
    }
    if (o.pass)
        o.detail = fmt::format("1000 shapes ({} exact windows); stem dW 223x223, T_kh={} on HT3, batch 32",
                exact_windows, tkh);
    return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome bn_backward() {
    Outcome o;
    const auto hw = worked_hw();
    const auto s = simd_shape(2, 2, 2, 8);
    const auto r = bn_backward_eval(s, full_simd_tiling(s, hw), hw);
    auto expect = [&](const char *what, count_t got, count_t want) {
        if (got != want) o.fail(fmt::format("{} = {}, expected {}", what, got, want));
    };
    expect("Part-2 DRAM", r.part2.dram_total(), 6400);
    expect("Part-2 ops", r.part2.op_counts.sum(), 336);
    expect("Part-2 VMem", r.part2.sram_bits[Buffer::VMem], 32256);
    expect("Part-2 compute", r.part2.compute_cycles, 98);
    expect("Part-2 stall", r.part2.stall_cycles, 50);

    std::mt19937_64 rng(7);
    auto u = [&](count_t lo, count_t hi) { return std::uniform_int_distribution<count_t>(lo, hi)(rng); };
    for (int i = 0; i < 50; ++i) {
        const auto rs = simd_shape(u(1, 6), u(1, 6), u(1, 3), u(1, 12));
        auto rhw = worked_hw();
        rhw.pe_cols = u(1, 8);
        rhw.bw_v = u(8, 512);
        rhw.bits_simd_in = rhw.bits_simd_out = u(0, 1) ? 16 : 32;
        rhw.op_latency = {u(1, 3), u(1, 3), u(1, 3), u(1, 8), u(1, 3)};
        const SimdTile T {u(1, rs.h), u(1, rs.w), u(1, rs.n), u(1, rs.c)};
        const auto p1 = bn_backward_eval(rs, make_simd_tiling(T, rhw), rhw).part1;
        const auto w = walk_bn_part1(rs, T, rhw);
        if (p1.dram_bits[DramStream::SimdIn] != w.in_bits || p1.dram_bits[DramStream::SimdOut] != w.out_bits
                || p1.op_counts != w.ops || p1.compute_cycles != w.compute || p1.stall_cycles != w.stall
                || p1.sram_bits[Buffer::VMem] != w.ops.sum() * 3 * rhw.bits_simd_in)
            o.fail(fmt::format("Part-1 shape {} differs from the scalar walk", i));
    }
    if (o.pass) o.detail = "Part-2 6400/336/32256/98/50; Part-1 = scalar walk on 50 shapes";
    return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome energy_identities() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::uniform_int_distribution<count_t> cyc(1, 4'000'000'000ULL);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        BackendCharacterization bc;
        bc.p_sa_dyn = u(rng);
        bc.p_sa_leak = u(rng) / 10;
        bc.p_simd_dyn = u(rng);
        bc.p_simd_leak = u(rng) / 10;
        for (Buffer b : kAllBuffers)
            bc.e_buff[b] = u(rng) * 1e-13;
        bc.e_dram = u(rng) * 1e-11;
        bc.t_clk = (0.2 + u(rng)) * 1e-9;
        EnergyActivity a;
        a.c_sa = cyc(rng);
        a.c_simd = cyc(rng);
        a.l_total = a.c_sa + a.c_simd + cyc(rng) % 100000;
        for (Buffer b : kAllBuffers)
            a.sram_bits[b] = cyc(rng) * 1000;
        a.a_d_total = cyc(rng) * 100;
        const auto e = compute_energy(a, bc);
        const double sum = e.e_sa + e.e_simd + e.e_sram + e.e_dram;
        const double via_power = e.p_avg * static_cast<double>(a.l_total) * bc.t_clk;
        const double r1 = std::abs(sum - e.e_total) / e.e_total;
        const double r2 = std::abs(via_power - e.e_total) / e.e_total;
        worst = std::max({worst, r1, r2});
        if (r1 > 1e-12 || r2 > 1e-12) o.fail(fmt::format("characterization {}: rel err {:.2e}", i, std::max(r1, r2)));
    }
    if (o.pass) o.detail = fmt::format("1000 characterizations, max rel err {:.2e}", worst);
    return o;
}

// ---- 9 -------------------------------------------------------------------

Outcome dse_sanity() {
    Outcome o;
    const auto net = load_network_spec(data_dir + "/networks/toy4.json");
    const auto hw = load_hardware_spec(data_dir + "/hw/small4x4.json");
    DseConfig cfg;
    cfg.sram_budget_bytes = 384 * 1024;
    cfg.bw_budget = 384;
    cfg.deviation = 0.4;
    for (std::size_t i = 0; i < 4; ++i)
        cfg.grids[i] = {64 * 1024, 128 * 1024};
    for (std::size_t i = 4; i < 8; ++i)
        cfg.grids[i] = {64, 128};
    cfg.threads = 1;
    const auto seq = run_dse(net, hw, cfg);
    cfg.threads = 4;
    const auto par = run_dse(net, hw, cfg);

    if (seq.all.size() != 256) o.fail(fmt::format("{} points evaluated", seq.all.size()));
    bool identical = seq.all.size() == par.all.size();
    for (std::size_t i = 0; identical && i < seq.all.size(); ++i)
        identical = seq.all[i].params == par.all[i].params && seq.all[i].metric == par.all[i].metric
                && seq.all[i].feasible == par.all[i].feasible;
    identical = identical && seq.optimal.params == par.optimal.params && seq.worst.params == par.worst.params;
    if (!identical) o.fail("parallel and sequential runs differ");

    // Independent brute force over the same 2^8 grid.
    count_t best = 0;
    DseTuple best_t {};
    bool any = false;
    for (unsigned bits = 0; bits < 256; ++bits) {
        DseTuple t;
        for (std::size_t i = 0; i < 8; ++i) {
            const bool hi = (bits >> (7 - i)) & 1;
            t[i] = i < 4 ? (hi ? 128 : 64) * 1024 : (hi ? 128 : 64);
        }
        try {
            const auto m = simulate_network(net, with_tuple(hw, t)).l_total;
            if (!any || m < best) {
                best = m;
                best_t = t;
            }
            any = true;
        } catch (const InfeasibleTilingError &) {
        }
    }
    if (!any) o.fail("brute force found no feasible point");
    if (seq.optimal.metric != best || seq.optimal.params != best_t)
        o.fail(fmt::format("optimal {} vs brute force {}", seq.optimal.metric, best));
    if (o.pass)
        o.detail = fmt::format("256 points, optimal {} cycles = brute force, worst/optimal {:.2f}x, "
                               "1 vs 4 threads identical",
                best, seq.improvement_ratio());
    return o;
}

// ---- 10 ------------------------------------------------------------------

std::vector<double> shares(const std::vector<LayerSpec> &work, const std::vector<std::string> &hws) {
    std::vector<double> out;
    for (const auto &h : hws) {
        try {
            const auto hw = load_hardware_spec(data_dir + "/hw/" + h + ".json");
            out.push_back(simulate_network(work, hw).non_conv_share());
        } catch (const std::exception &) {
            out.push_back(-1);
        }
    }
    return out;
}

bool increasing(const std::vector<double> &v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return v.front() >= 0;
}

Outcome trends() {
    Outcome o;
    const auto net = load_network_spec(data_dir + "/networks/resnet50.json");
    const auto train = shares(training_workload(with_batch(net, 32)), {"HT1", "HT2", "HT3"});
    const auto infer = shares(inference_workload(with_batch(net, 1)), {"HI1", "HI2", "HI3"});
    if (!increasing(train)) o.fail("training non-Conv share not increasing with array size");
    if (train.back() <= 0.30) o.fail("training non-Conv share at 64x64 not above 30%");
    if (!increasing(infer)) o.fail("inference non-Conv share not increasing with array size");
    const auto pct = [](const std::vector<double> &v) {
        return fmt::format("{:.1f}% -> {:.1f}% -> {:.1f}%", 100 * v[0], 100 * v[1], 100 * v[2]);
    };
    const auto msg = fmt::format("training {}, inference {}", pct(train), pct(infer));
    o.detail = o.pass ? msg : o.detail + "; " + msg;
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        std::function<Outcome()> run;
        bool gated;
    };
    const std::vector<Criterion> criteria = {
            {1, "oracle equivalence", oracle_equivalence, true},
            {2, "closed-form conv spot values", worked_conv, true},
            {3, "weight-once law", weight_once, true},
            {4, "stall-case algebra", stall_case_algebra, true},
            {5, "model-variant ordering", variant_ordering, true},
            {6, "training transforms", training_transforms, true},
            {7, "BN-backward spot values", bn_backward, true},
            {8, "energy identities", energy_identities, true},
            {9, "DSE sanity", dse_sanity, true},
            {10, "qualitative trends (soft)", trends, false},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const char *tag = o.pass ? "PASS" : (c.gated ? "FAIL" : "SOFT-FAIL");
        fmt::print("[{}] {:>2} {}: {}\n", tag, c.id, c.name, o.detail);
        if (!o.pass && c.gated) ++failed;
    }
    fmt::print("{} of 9 gated criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}

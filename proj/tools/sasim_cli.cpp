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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sasim/conv_engine.hpp"
#include "sasim/energy.hpp"
#include "sasim/error.hpp"
#include "sasim/explorer.hpp"
#include "sasim/network.hpp"
#include "sasim/oracle.hpp"
#include "sasim/random_instance.hpp"
#include "sasim/report.hpp"
#include "sasim/simd_engine.hpp"
#include "sasim/simulator.hpp"
#include "sasim/train_expand.hpp"

namespace fs = std::filesystem;
using namespace sasim;

namespace {

struct WorkloadArgs {
    std::string hw;
    std::string net;
    std::string mode = "inference";
    count_t batch = 0;
};

void add_workload_options(CLI::App *cmd, WorkloadArgs &w, bool need_hw = true) {
    auto *hw = cmd->add_option("--hw", w.hw, "hardware spec (JSON)")->check(CLI::ExistingFile);
    if (need_hw) hw->required();
    cmd->add_option("--net", w.net, "network spec (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--mode", w.mode, "inference or training")
            ->check(CLI::IsMember({"inference", "training"}))
            ->capture_default_str();
    cmd->add_option("--batch", w.batch, "override the batch dimension of every layer");
}

std::vector<LayerSpec> build_workload(const WorkloadArgs &w) {
    auto net = load_network_spec(w.net);
    if (w.batch != 0) net = with_batch(std::move(net), w.batch);
    return w.mode == "training" ? training_workload(net) : inference_workload(net);
}

ModelVariant variant_of(const std::string &text) {
    auto v = parse_model_variant(text);
    if (!v) throw SpecError("--variant", "unknown model variant '" + text + "'");
    return *v;
}

fs::path ensure_dir(const std::string &dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

std::vector<std::pair<std::string, std::string>> metadata_for(const WorkloadArgs &w,
        const SimulationOptions &opts) {
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("tool", "sasim");
    m.emplace_back("version", std::string(kToolVersion));
    if (!w.hw.empty()) {
        m.emplace_back("hw_file", fs::path(w.hw).filename().string());
        m.emplace_back("hw_fnv1a", fnv1a_file(w.hw));
    }
    m.emplace_back("net_file", fs::path(w.net).filename().string());
    m.emplace_back("net_fnv1a", fnv1a_file(w.net));
    m.emplace_back("mode", w.mode);
    m.emplace_back("batch", w.batch == 0 ? "from-spec" : std::to_string(w.batch));
    m.emplace_back("variant", std::string(to_string(opts.variant)));
    m.emplace_back("prologue_epilogue", opts.conventions.include_prologue_epilogue ? "on" : "off");
    return m;
}

void print_summary(const NetworkStats &s) {
    fmt::print("layers            {}\n", s.layers.size());
    fmt::print("total cycles      {}\n", s.l_total);
    fmt::print("  SA layers       {} (compute {})\n", s.sa_total_cycles, s.c_sa);
    fmt::print("  SIMD layers     {} (compute {})\n", s.simd_total_cycles, s.c_simd);
    fmt::print("non-conv share    {:.1f}%\n", 100.0 * s.non_conv_share());
    fmt::print("DRAM bits         {}\n", s.a_d_total);
    for (Buffer b : kAllBuffers)
        fmt::print("  {:<5} SRAM bits {}\n", to_string(b), s.sram_bits[b]);
}

int cmd_simulate(const WorkloadArgs &w, const std::string &variant, bool prologue,
        const std::string &energy_file, const std::string &out_dir) {
    const auto hw = load_hardware_spec(w.hw);
    SimulationOptions opts;
    opts.variant = variant_of(variant);
    opts.conventions.include_prologue_epilogue = prologue;
    RunReport report;
    report.stats = simulate_network(build_workload(w), hw, opts);
    report.metadata = metadata_for(w, opts);
    if (!energy_file.empty()) {
        const auto bc = load_backend_spec(energy_file);
        report.energy = compute_energy(report.stats, bc);
        report.metadata.emplace_back("backend_file", fs::path(energy_file).filename().string());
        report.metadata.emplace_back("backend_fnv1a", fnv1a_file(energy_file));
    }
    const auto dir = ensure_dir(out_dir);
    write_report_json(report, dir / "report.json");
    write_layers_csv(report.stats, dir / "layers.csv");
    print_summary(report.stats);
    if (report.energy) {
        fmt::print("energy            {:.6g} J\n", report.energy->e_total);
        fmt::print("average power     {:.6g} W\n", report.energy->p_avg);
        fmt::print("runtime           {:.6g} s\n", report.energy->runtime);
    }
    fmt::print("wrote {} and {}\n", (dir / "report.json").string(), (dir / "layers.csv").string());
    return 0;
}

int cmd_energy(const WorkloadArgs &w, const std::string &backend, const std::string &out_file) {
    const auto hw = load_hardware_spec(w.hw);
    const auto stats = simulate_network(build_workload(w), hw);
    const auto e = compute_energy(stats, load_backend_spec(backend));
    const auto doc = to_json(e);
    if (out_file.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::ofstream(out_file) << doc.dump(2) << '\n';
        fmt::print("E_total {:.6g} J, P_avg {:.6g} W, runtime {:.6g} s\n", e.e_total, e.p_avg,
                e.runtime);
    }
    return 0;
}

int cmd_train_expand(const WorkloadArgs &w, const std::string &out_file) {
    auto net = load_network_spec(w.net);
    if (w.batch != 0) net = with_batch(std::move(net), w.batch);
    const auto g = expand_training(net);
    write_network_spec(g.all(), out_file);
    fmt::print("forward {}, backward {}, updates {} -> {}\n", g.forward.size(), g.backward.size(),
            g.updates.size(), out_file);
    return 0;
}

int cmd_compare(const WorkloadArgs &w, const std::string &out_file) {
    const auto hw = load_hardware_spec(w.hw);
    const auto layers = build_workload(w);
    std::vector<NetworkStats> runs;
    for (auto v : {ModelVariant::NoStall, ModelVariant::Simplified, ModelVariant::Full}) {
        SimulationOptions o;
        o.variant = v;
        runs.push_back(simulate_network(layers, hw, o));
    }
    std::ostringstream csv;
    csv << "layer,kind,nostall,simplified,full,full_over_nostall\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto a = runs[0].layers[i].stats.total_cycles;
        const auto b = runs[1].layers[i].stats.total_cycles;
        const auto c = runs[2].layers[i].stats.total_cycles;
        csv << layers[i].name << ',' << to_string(layers[i].kind) << ',' << a << ',' << b << ','
            << c << ',' << fmt::format("{:.4f}", a == 0 ? 0.0 : static_cast<double>(c) / a) << '\n';
    }
    fmt::print("{:<12} {:>16}\n", "variant", "total cycles");
    fmt::print("{:<12} {:>16}\n", "nostall", runs[0].l_total);
    fmt::print("{:<12} {:>16}\n", "simplified", runs[1].l_total);
    fmt::print("{:<12} {:>16}\n", "full", runs[2].l_total);
    if (runs[0].sa_total_cycles != 0)
        fmt::print("SA underestimate of nostall vs full: {:.1f}%\n",
                100.0 * (1.0 - static_cast<double>(runs[0].sa_total_cycles) / runs[2].sa_total_cycles));
    if (!out_file.empty()) std::ofstream(out_file) << csv.str();
    return 0;
}

std::vector<count_t> parse_list(const std::string &text, count_t scale) {
    std::vector<count_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v <= 0) throw std::invalid_argument(item);
            out.push_back(static_cast<count_t>(v) * scale);
        } catch (const std::exception &) {
            throw SpecError("grid", "'" + item + "' is not a positive integer");
        }
    }
    if (out.empty()) throw SpecError("grid", "empty value list");
    return out;
}

// "wbuf=32,64" style per-parameter grid; sizes are given in kB.
void apply_grid_override(DseConfig &cfg, const std::string &spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw SpecError("--grid", "expected name=v1,v2,...");
    const auto p = parse_dse_param(spec.substr(0, eq));
    if (!p) throw SpecError("--grid", "unknown parameter '" + spec.substr(0, eq) + "'");
    cfg.grids[static_cast<std::size_t>(*p)]
            = parse_list(spec.substr(eq + 1), is_size_param(*p) ? 1024 : 1);
}

struct DseArgs {
    count_t sram_budget_kb = 2048;
    count_t bw_budget = 2048;
    double deviation = 0.15;
    std::string sizes_kb;
    std::string bws;
    std::vector<std::string> grid;
    unsigned threads = 0;
    double landscape = 0.15;
    std::string variant = "full";
};

DseConfig dse_config(const DseArgs &a) {
    DseConfig cfg;
    cfg.sram_budget_bytes = a.sram_budget_kb * 1024;
    cfg.bw_budget = a.bw_budget;
    cfg.deviation = a.deviation;
    cfg.threads = a.threads;
    cfg.sim.variant = variant_of(a.variant);
    if (!a.sizes_kb.empty()) {
        const auto v = parse_list(a.sizes_kb, 1024);
        for (std::size_t i = 0; i < 4; ++i)
            cfg.grids[i] = v;
    }
    if (!a.bws.empty()) {
        const auto v = parse_list(a.bws, 1);
        for (std::size_t i = 4; i < 8; ++i)
            cfg.grids[i] = v;
    }
    for (const auto &g : a.grid)
        apply_grid_override(cfg, g);
    return cfg;
}

void print_point(const char *label, const DsePoint &p) {
    fmt::print("{:<8} metric {:>14}  [Wbuf Ibuf Obuf Vmem] = [{} {} {} {}] kB  "
               "[BWw BWi BWo BWv] = [{} {} {} {}]\n",
            label, p.metric, p.params[0] / 1024, p.params[1] / 1024, p.params[2] / 1024,
            p.params[3] / 1024, p.params[4], p.params[5], p.params[6], p.params[7]);
}

int cmd_dse(const WorkloadArgs &w, const DseArgs &a, const std::string &out_dir) {
    const auto hw = load_hardware_spec(w.hw);
    const auto cfg = dse_config(a);
    const auto r = run_dse(build_workload(w), hw, cfg);
    const auto dir = ensure_dir(out_dir);
    write_dse_csv(r, dir / "dse.csv");
    auto summary = dse_summary(r, cfg, a.landscape);
    nlohmann::json meta;
    for (const auto &[k, v] : metadata_for(w, cfg.sim))
        meta[k] = v;
    summary["metadata"] = meta;
    std::ofstream(dir / "dse_summary.json") << summary.dump(2) << '\n';

    fmt::print("points in budget {}, feasible {}, skipped {}\n", r.all.size(), r.feasible_count,
            r.skipped_out_of_budget);
    print_point("optimal", r.optimal);
    print_point("worst", r.worst);
    fmt::print("worst/optimal    {:.2f}x\n", r.improvement_ratio());
    const auto land = extract_landscape(r.all, r.optimal, a.landscape);
    if (auto p = min_sram_pick(land)) print_point("min-SRAM", *p);
    if (auto p = min_bw_pick(land)) print_point("min-BW", *p);
    fmt::print("wrote {}\n", (dir / "dse.csv").string());
    return 0;
}

HardwareConfig optimal_from_summary(HardwareConfig hw, const std::string &summary_file) {
    std::ifstream in(summary_file);
    if (!in) throw SpecError(summary_file, "cannot open file");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw SpecError(summary_file, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.contains("optimal")) throw SpecError(summary_file, "missing field 'optimal'");
    for (DseParam p : kAllDseParams) {
        const std::string key(to_string(p));
        if (!doc["optimal"].contains(key)) throw SpecError(summary_file, "missing optimal." + key);
        set_param(hw, p, doc["optimal"][key].get<count_t>());
    }
    return hw;
}

int cmd_sensitivity(const WorkloadArgs &w, const std::string &param, const std::string &grid,
        const std::string &from_dse, const std::string &out_dir) {
    HardwareConfig hw = load_hardware_spec(w.hw);
    if (!from_dse.empty()) hw = optimal_from_summary(hw, from_dse);
    const auto layers = build_workload(w);
    std::vector<DseParam> params;
    if (param == "all") {
        params.assign(kAllDseParams.begin(), kAllDseParams.end());
    } else {
        auto p = parse_dse_param(param);
        if (!p) throw SpecError("--param", "unknown parameter '" + param + "'");
        params.push_back(*p);
    }
    const auto dir = ensure_dir(out_dir);
    const auto defaults = DseConfig::default_grids();
    for (DseParam p : params) {
        const auto idx = static_cast<std::size_t>(p);
        auto values = grid.empty() ? defaults[idx] : parse_list(grid, is_size_param(p) ? 1024 : 1);
        const count_t current = get_param(hw, p);
        if (std::find(values.begin(), values.end(), current) == values.end()) values.push_back(current);
        std::sort(values.begin(), values.end());
        const auto pts = sensitivity_sweep(layers, hw, p, values);
        const auto file = dir / fmt::format("sensitivity_{}.csv", to_string(p));
        write_sensitivity_csv(p, pts, file);
        fmt::print("{:<5}", to_string(p));
        for (const auto &pt : pts)
            fmt::print("  {}:{:.3f}", is_size_param(p) ? pt.value / 1024 : pt.value, pt.normalized);
        fmt::print("\n");
    }
    return 0;
}

std::string describe(const ConvInstance &c) {
    const auto &s = c.shape;
    const auto &t = c.tiling.outer;
    return fmt::format("conv n={} ih={} iw={} ic={} oh={} ow={} oc={} k={}x{} s={} pad={},{} bias={} "
                       "tile[oh={} ow={} n={} kh={} kw={} ic={} oc={}] J={} K={} bw=[{} {} {}] "
                       "bits=[w{} i{} p{} b{}]",
            s.n, s.ih, s.iw, s.ic, s.oh, s.ow, s.oc, s.kh, s.kw, s.stride, s.pad_h, s.pad_w,
            s.has_bias, t.oh, t.ow, t.n, t.kh, t.kw, t.ic, t.oc, c.hw.pe_rows, c.hw.pe_cols,
            c.hw.bw_w, c.hw.bw_i, c.hw.bw_o, c.hw.bits_weight, c.hw.bits_ifmap, c.hw.bits_psum,
            c.hw.bits_bias);
}

int cmd_oracle_check(count_t seeds, count_t max_dim, std::uint64_t seed_base, bool with_simd) {
    count_t ok = 0;
    for (count_t i = 0; i < seeds; ++i) {
        std::mt19937_64 rng(seed_base + i);
        const auto inst = random_conv_instance(rng, max_dim);
        std::string problem;
        for (bool pe : {false, true}) {
            ScheduleConventions conv;
            conv.include_prologue_epilogue = pe;
            const auto a = conv_eval(inst.shape, inst.tiling, inst.hw, ModelVariant::Full, conv);
            const auto o = simulate_conv(inst.shape, inst.tiling, inst.hw, conv);
            if (a.total_cycles != o.total_cycles)
                problem = fmt::format("total cycles analytical {} vs oracle {} (prologue {})",
                        a.total_cycles, o.total_cycles, pe);
            else if (a.dram_bits != o.bits)
                problem = "DRAM bits differ";
            if (!problem.empty()) break;
        }
        if (problem.empty()) {
            const auto o = simulate_conv(inst.shape, inst.tiling, inst.hw);
            const auto br = conv_stall_cycles(inst.shape, inst.tiling, inst.hw);
            for (const auto &c : br.cases)
                if (o.case_counts[c.label] != c.occurrences)
                    problem = fmt::format("case {} occurs {} times in the trace, {} predicted",
                            c.label, o.case_counts[c.label], c.occurrences);
        }
        if (problem.empty() && with_simd) {
            const auto s = random_simd_instance(rng, max_dim);
            const auto a = simd_layer_eval(s.kind, s.shape, s.tiling, s.hw);
            const auto o = simulate_simd(s.kind, s.shape, s.tiling, s.hw);
            if (a.total_cycles != o.total_cycles || a.compute_cycles != o.compute_cycles
                    || a.dram_bits != o.bits)
                problem = fmt::format("SIMD {} total {} vs oracle {}", to_string(s.kind),
                        a.total_cycles, o.total_cycles);
        }
        if (!problem.empty()) {
            fmt::print("seed {}: MISMATCH {}\n  {}\n", seed_base + i, problem, describe(inst));
            fmt::print("{}/{} exact matches before the first divergence\n", ok, seeds);
            return 3;
        }
        ++ok;
    }
    fmt::print("{}/{} exact matches\n", ok, seeds);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app {"Analytical performance model for systolic-array + SIMD accelerators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    WorkloadArgs sim_w;
    std::string variant = "full", energy_file, out_dir = ".";
    bool prologue = false;
    auto *sim = app.add_subcommand("simulate", "evaluate a network, write report.json and layers.csv");
    add_workload_options(sim, sim_w);
    sim->add_option("--variant", variant, "full, nostall or simplified")
            ->check(CLI::IsMember({"full", "nostall", "simplified"}))
            ->capture_default_str();
    sim->add_option("--energy", energy_file, "backend characterization (JSON)")->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "output directory")->capture_default_str();
    sim->add_flag("--prologue-epilogue", prologue, "charge first-tile loads and last-tile store");

    WorkloadArgs te_w;
    std::string te_out;
    auto *te = app.add_subcommand("train-expand", "write the training workload as a network spec");
    add_workload_options(te, te_w, false);
    te->add_option("--out", te_out, "output network spec")->required();

    WorkloadArgs en_w;
    std::string backend, en_out;
    auto *en = app.add_subcommand("energy", "energy, average power and runtime of a network");
    add_workload_options(en, en_w);
    en->add_option("--backend", backend, "backend characterization (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
    en->add_option("--out", en_out, "write the energy report here instead of stdout");

    WorkloadArgs cmp_w;
    std::string cmp_out;
    auto *cmp = app.add_subcommand("compare", "total cycles under the nostall/simplified/full models");
    add_workload_options(cmp, cmp_w);
    cmp->add_option("--out", cmp_out, "per-layer CSV");

    WorkloadArgs dse_w;
    DseArgs dse_a;
    std::string dse_out = ".";
    auto *dse = app.add_subcommand("dse", "exhaustive buffer-size / bandwidth exploration");
    add_workload_options(dse, dse_w);
    dse->add_option("--sram-budget-kb", dse_a.sram_budget_kb, "budget for Wbuf+Ibuf+Obuf+Vmem")
            ->capture_default_str();
    dse->add_option("--bw-budget", dse_a.bw_budget, "budget for BW_w+BW_i+BW_o+BW_v")
            ->capture_default_str();
    dse->add_option("--deviation", dse_a.deviation, "allowed deviation from each budget")
            ->capture_default_str();
    dse->add_option("--sizes-kb", dse_a.sizes_kb, "grid for all four buffers, e.g. 64,128,256");
    dse->add_option("--bws", dse_a.bws, "grid for all four bandwidths");
    dse->add_option("--grid", dse_a.grid, "per-parameter grid, e.g. vmem=128,256");
    dse->add_option("--threads", dse_a.threads, "worker threads (0: all cores)");
    dse->add_option("--landscape", dse_a.landscape, "landscape slack over the optimum")
            ->capture_default_str();
    dse->add_option("--variant", dse_a.variant, "cycle model")
            ->check(CLI::IsMember({"full", "nostall", "simplified"}))
            ->capture_default_str();
    dse->add_option("--out", dse_out, "output directory")->capture_default_str();

    WorkloadArgs sen_w;
    std::string sen_param = "all", sen_grid, sen_from, sen_out = ".";
    auto *sen = app.add_subcommand("sensitivity", "one-at-a-time sweep around a design point");
    add_workload_options(sen, sen_w);
    sen->add_option("--param", sen_param, "parameter name or 'all'")->capture_default_str();
    sen->add_option("--grid", sen_grid, "values to sweep (kB for buffers)");
    sen->add_option("--from-dse", sen_from, "take the design point from a dse_summary.json")
            ->check(CLI::ExistingFile);
    sen->add_option("--out", sen_out, "output directory")->capture_default_str();

    count_t seeds = 200, max_dim = 16;
    std::uint64_t seed_base = 1;
    bool no_simd = false;
    auto *orc = app.add_subcommand("oracle-check", "compare analytical models with the tile-level oracle");
    orc->add_option("--seeds", seeds, "number of random instances")->capture_default_str();
    orc->add_option("--max-dim", max_dim, "largest layer dimension")->capture_default_str();
    orc->add_option("--seed-base", seed_base, "first seed")->capture_default_str();
    orc->add_flag("--no-simd", no_simd, "skip the SIMD instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim) return cmd_simulate(sim_w, variant, prologue, energy_file, out_dir);
        if (*te) return cmd_train_expand(te_w, te_out);
        if (*en) return cmd_energy(en_w, backend, en_out);
        if (*cmp) return cmd_compare(cmp_w, cmp_out);
        if (*dse) return cmd_dse(dse_w, dse_a, dse_out);
        if (*sen) return cmd_sensitivity(sen_w, sen_param, sen_grid, sen_from, sen_out);
        if (*orc) return cmd_oracle_check(seeds, std::max<count_t>(1, max_dim), seed_base, !no_simd);
    } catch (const InfeasibleTilingError &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    } catch (const SpecError &e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}

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

#include <random>

#include <catch_amalgamated.hpp>

#include "sasim/hardware.hpp"
#include "sasim/network.hpp"
#include "sasim/random_instance.hpp"
#include "sasim/tiler.hpp"
#include "sasim/train_expand.hpp"

using namespace sasim;

namespace {

const std::string data_dir = SASIM_DATA_DIR;

std::vector<LayerKind> kinds(const std::vector<LayerSpec> &ls) {
    std::vector<LayerKind> out;
    for (const auto &l : ls)
        out.push_back(l.kind);
    return out;
}

} // namespace

TEST_CASE("strided conv backward shapes", "[train]") {
    ConvShape f;
    f.kh = f.kw = 3;
    f.stride = 2;
    f.ih = f.iw = 9;
    f.oh = f.ow = 4;
    f.ic = 16;
    f.oc = 32;
    f.n = 8;
    const auto [dx, dw] = backward_conv_shapes(f);

    CHECK(dx.kh == 3);
    CHECK(dx.kw == 3);
    CHECK(dx.ic == 32);
    CHECK(dx.oc == 16);
    CHECK(dx.stride == 1);
    CHECK(dx.oh == 9);
    CHECK(dx.ow == 9);
    CHECK(dx.ih == 11);
    CHECK(dx.n == 8);
    CHECK_FALSE(dx.has_bias);

    CHECK(dw.kh == 7);
    CHECK(dw.kw == 7);
    CHECK(dw.ic == 8);
    CHECK(dw.oc == 32);
    CHECK(dw.stride == 1);
    CHECK(dw.oh == 3);
    CHECK(dw.ih == 9);
    CHECK(dw.n == 16);
}

TEST_CASE("pointwise conv needs no dilation", "[train]") {
    ConvShape f;
    f.ih = f.iw = f.oh = f.ow = 5;
    f.ic = 3;
    f.oc = 4;
    const auto [dx, dw] = backward_conv_shapes(f);
    CHECK(dx.ih == f.oh);
    CHECK(dw.kh == f.oh);
}

TEST_CASE("backward shapes are valid convolutions", "[train][property]") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_conv_shape(rng, 24);
        const auto [dx, dw] = backward_conv_shapes(f);
        REQUIRE_NOTHROW(dx.validate("dX"));
        REQUIRE_NOTHROW(dw.validate("dW"));
        REQUIRE(dx.oh == f.effective_ih());
        REQUIRE(dx.ow == f.effective_iw());
        REQUIRE(dw.oh == f.kh);
        REQUIRE(dw.ow == f.kw);
        REQUIRE(dx.macs() >= f.macs());
        REQUIRE(dw.macs() >= f.macs());
        if (f.stride == 1) REQUIRE(dw.macs() == f.macs());
    }
}

TEST_CASE("conv-bn-relu training graph", "[train]") {
    const auto net = load_network_spec(data_dir + "/networks/conv_bn_relu.json");
    const auto g = expand_training(net);
    CHECK(g.forward.size() == 3);
    CHECK(kinds(g.backward)
            == std::vector<LayerKind> {
                    LayerKind::ReluBackward, LayerKind::BnBackward, LayerKind::ConvGradWeight});
    REQUIRE(g.updates.size() == 3);
    CHECK(g.updates[0].name == "block.conv.W");
    CHECK(g.updates[1].name == "block.bn.gamma");
    CHECK(g.updates[2].name == "block.bn.beta");
    CHECK(g.backward[2].source == "block.conv");
    CHECK(g.backward[2].phase == Phase::Backward);
    CHECK(g.updates[0].simd().volume() == 3 * 3 * 4 * 8);

    auto biased = net;
    std::get<ConvShape>(biased[0].shape).has_bias = true;
    CHECK(expand_training(biased).updates.size() == 4);
}

TEST_CASE("non-first convs get an input-gradient layer", "[train]") {
    const auto net = load_network_spec(data_dir + "/networks/toy4.json");
    const auto g = expand_training(net);
    CHECK(kinds(g.backward)
            == std::vector<LayerKind> {LayerKind::TensorAddBackward, LayerKind::ConvGradIfmap,
                    LayerKind::ConvGradWeight, LayerKind::ReluBackward, LayerKind::ConvGradWeight});
}

TEST_CASE("expansion is deterministic", "[train]") {
    const auto net = load_network_spec(data_dir + "/networks/resnet18.json");
    CHECK(training_workload(net) == training_workload(net));
    CHECK(expand_training(expand_training(net).forward).all() == training_workload(net));
}

TEST_CASE("inference workload drops batch norm", "[train]") {
    const auto net = load_network_spec(data_dir + "/networks/conv_bn_relu.json");
    CHECK(kinds(inference_workload(net)) == std::vector<LayerKind> {LayerKind::Conv, LayerKind::ReLU});
}

TEST_CASE("batch override rewrites every activation tensor", "[train]") {
    const auto net = with_batch(load_network_spec(data_dir + "/networks/smoke_conv.json"), 32);
    CHECK(net[0].conv().n == 32);
    REQUIRE(net[0].tiling);
    CHECK(std::get<ConvTile>(*net[0].tiling).n == 1);
}

TEST_CASE("ResNet-50 stem weight gradient needs a split kernel on HT3", "[train]") {
    const auto net = with_batch(load_network_spec(data_dir + "/networks/resnet50.json"), 32);
    const auto g = expand_training(net);
    const auto it = std::find_if(g.backward.begin(), g.backward.end(),
            [](const LayerSpec &l) { return l.name == "conv1.conv.dW"; });
    REQUIRE(it != g.backward.end());
    CHECK(it->conv().kh == 223);
    CHECK(it->conv().kw == 223);
    const auto hw = load_hardware_spec(data_dir + "/hw/HT3.json");
    const auto t = std::get<ConvTiling>(tiling_for_layer(*it, hw));
    CHECK(t.outer.kh < 223);
    CHECK(validate_tiling(*it, t, hw).all_fit());
}

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

#include <algorithm>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "sasim/error.hpp"
#include "sasim/hardware.hpp"
#include "sasim/network.hpp"

using namespace sasim;
using nlohmann::json;

namespace {

const std::string data_dir = SASIM_DATA_DIR;

json conv_entry() {
    return json::parse(R"({"name": "c", "kind": "Conv",
        "dims": {"n": 1, "ih": 8, "iw": 8, "ic": 4, "oc": 8, "kh": 3, "kw": 3, "s": 1, "pad": 0,
                 "bias": true}})");
}

std::size_t count_kind(const std::vector<LayerSpec> &net, LayerKind k) {
    return std::count_if(net.begin(), net.end(), [&](const LayerSpec &l) { return l.kind == k; });
}

} // namespace

TEST_CASE("conv entries derive ofmap extents", "[network]") {
    const auto net = network_from_json(json::array({conv_entry()}), "t");
    REQUIRE(net.size() == 1);
    const auto &s = net[0].conv();
    CHECK(s.oh == 6);
    CHECK(s.ow == 6);
    CHECK(s.has_bias);
}

TEST_CASE("network specs round-trip through JSON", "[network]") {
    for (const char *f : {"resnet50.json", "resnet18.json", "smoke_conv.json", "toy4.json"}) {
        const auto net = load_network_spec(data_dir + "/networks/" + f);
        CHECK(network_from_json(to_json(net), "rt") == net);
    }
}

TEST_CASE("malformed network specs are rejected", "[network]") {
    auto bad = [](json entry) { return json::array({entry}); };

    auto e = conv_entry();
    e["dims"]["stride"] = 2;
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    e = conv_entry();
    e["kind"] = "Deconv";
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    e = conv_entry();
    e["dims"]["ic"] = 0;
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    e = conv_entry();
    e["dims"]["oh"] = 7;
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    e = conv_entry();
    e["dims"]["kh"] = 11;
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    e = conv_entry();
    e["dims"]["bias"] = 1;
    CHECK_THROWS_AS(network_from_json(bad(e), "t"), SpecError);

    CHECK_THROWS_AS(network_from_json(json::array({conv_entry(), conv_entry()}), "t"), SpecError);
    CHECK_THROWS_AS(network_from_json(conv_entry(), "t"), SpecError);

    auto relu = json::parse(R"({"name": "r", "kind": "ReLU", "dims": {"h": 4, "c": 2, "r": 2}})");
    CHECK_THROWS_AS(network_from_json(bad(relu), "t"), SpecError);

    auto pb = json::parse(R"({"name": "p", "kind": "PoolBackward", "dims": {"h": 4, "c": 2, "r": 2, "s": 2}})");
    CHECK_THROWS_AS(network_from_json(bad(pb), "t"), SpecError);
}

TEST_CASE("error messages carry the layer name", "[network]") {
    auto e = conv_entry();
    e["name"] = "block3.conv2";
    e["dims"]["oc"] = -1;
    try {
        network_from_json(json::array({e}), "net.json");
        FAIL("expected SpecError");
    } catch (const SpecError &err) {
        CHECK(std::string(err.what()).find("block3.conv2") != std::string::npos);
    }
}

TEST_CASE("shipped ResNet topologies", "[network]") {
    const auto r50 = load_network_spec(data_dir + "/networks/resnet50.json");
    CHECK(count_kind(r50, LayerKind::Conv) == 53);
    CHECK(count_kind(r50, LayerKind::FC) == 1);
    CHECK(count_kind(r50, LayerKind::BatchNorm) == 53);
    CHECK(count_kind(r50, LayerKind::TensorAdd) == 16);
    CHECK(count_kind(r50, LayerKind::MaxPool) == 1);
    CHECK(count_kind(r50, LayerKind::GlobalAvgPool) == 1);
    const auto &stem = r50.front().conv();
    CHECK(stem.kh == 7);
    CHECK(stem.stride == 2);
    CHECK(stem.oh == 112);

    const auto r18 = load_network_spec(data_dir + "/networks/resnet18.json");
    CHECK(count_kind(r18, LayerKind::Conv) == 20);
    CHECK(count_kind(r18, LayerKind::TensorAdd) == 8);
}

TEST_CASE("shipped hardware files load", "[hardware]") {
    for (const char *f : {"HT1", "HT2", "HT3", "HI1", "HI2", "HI3", "small4x4"}) {
        const auto hw = load_hardware_spec(data_dir + "/hw/" + f + ".json");
        CHECK(hw.pe_rows == hw.pe_cols);
        CHECK(hardware_from_json(to_json(hw), "rt") == hw);
    }
    CHECK(load_hardware_spec(data_dir + "/hw/HT3.json").pe_rows == 64);
}

TEST_CASE("malformed hardware specs are rejected", "[hardware]") {
    const auto good = to_json(load_hardware_spec(data_dir + "/hw/small4x4.json"));
    auto h = good;
    h["bw_x"] = 4;
    CHECK_THROWS_AS(hardware_from_json(h, "t"), SpecError);
    h = good;
    h.erase("bw_v");
    CHECK_THROWS_AS(hardware_from_json(h, "t"), SpecError);
    h = good;
    h["bw_i"] = 0;
    CHECK_THROWS_AS(hardware_from_json(h, "t"), SpecError);
    h = good;
    h["pe_rows"] = "64";
    CHECK_THROWS_AS(hardware_from_json(h, "t"), SpecError);
    h = good;
    h["op_latency"]["exp"] = 3;
    CHECK_THROWS_AS(hardware_from_json(h, "t"), SpecError);
    CHECK_THROWS_AS(load_hardware_spec(data_dir + "/hw/missing.json"), SpecError);
}

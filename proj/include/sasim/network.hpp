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
#include <vector>

#include <json.hpp>

#include "sasim/layer.hpp"

namespace sasim {

// Network spec: a top-level JSON array of layer objects
//   {name, kind, dims:{...}, bits?:{...}, tiling?:{outer:{...}}, phase?, source?}
// Conv-family dims: n, ih, iw, ic, oh?, ow?, oc, kh, kw, s, pad | pad_h/pad_w, bias.
// SIMD dims: h, w, n, c; pool layers add r | r_h/r_w, s, pad | pad_h/pad_w, and
// PoolBackward a mode ("max" | "avg").
std::vector<LayerSpec> network_from_json(const nlohmann::json &doc, const std::string &origin);
nlohmann::json to_json(const LayerSpec &layer);
nlohmann::json to_json(const std::vector<LayerSpec> &layers);

std::vector<LayerSpec> load_network_spec(const std::filesystem::path &path);
void write_network_spec(const std::vector<LayerSpec> &layers, const std::filesystem::path &path);

} // namespace sasim

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
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sasim/error.hpp"
#include "sasim/types.hpp"

namespace sasim {

inline nlohmann::json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path.string(), "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw SpecError(path.string(), std::string("malformed JSON: ") + e.what());
    }
}

inline const nlohmann::json &json_field(
        const nlohmann::json &obj, const std::string &key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SpecError(where, "missing field '" + key + "'");
    return *it;
}

inline std::string json_string(
        const nlohmann::json &obj, const std::string &key, const std::string &where) {
    const auto &v = json_field(obj, key, where);
    if (!v.is_string()) throw SpecError(where, "'" + key + "' must be a string");
    return v.get<std::string>();
}

inline count_t json_count(const nlohmann::json &v, const std::string &key, const std::string &where) {
    if (v.is_number_unsigned()) return v.get<count_t>();
    if (v.is_number_integer()) {
        if (v.get<std::int64_t>() < 0) throw SpecError(where, key + " must be non-negative");
        return static_cast<count_t>(v.get<std::int64_t>());
    }
    throw SpecError(where, "'" + key + "' must be an integer");
}

inline count_t json_positive(
        const nlohmann::json &obj, const std::string &key, const std::string &where) {
    count_t v = json_count(json_field(obj, key, where), key, where);
    if (v == 0) throw SpecError(where, key + " must be positive");
    return v;
}

} // namespace sasim

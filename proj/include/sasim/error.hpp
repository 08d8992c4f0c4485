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

#include <stdexcept>
#include <string>

namespace sasim {

// Malformed or inconsistent hardware/network/backend description.
// `where` names the file, layer, or field at fault.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string where, const std::string &what)
        : std::runtime_error(where.empty() ? what : where + ": " + what)
        , where_(std::move(where)) {}

    const std::string &where() const noexcept { return where_; }

private:
    std::string where_;
};

// No tiling of a layer fits the on-chip buffers.
class InfeasibleTilingError : public std::runtime_error {
public:
    InfeasibleTilingError(std::string layer, std::string buffer, const std::string &detail)
        : std::runtime_error((layer.empty() ? std::string() : layer + ": ")
                  + "no feasible tiling, " + buffer + " overflows (" + detail + ")")
        , layer_(std::move(layer))
        , buffer_(std::move(buffer))
        , detail_(detail) {}

    const std::string &layer() const noexcept { return layer_; }
    const std::string &buffer() const noexcept { return buffer_; }
    const std::string &detail() const noexcept { return detail_; }

    InfeasibleTilingError for_layer(const std::string &layer) const {
        return {layer, buffer_, detail_};
    }

private:
    std::string layer_;
    std::string buffer_;
    std::string detail_;
};

} // namespace sasim

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
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string_view>

namespace sasim {

using count_t = std::uint64_t;

constexpr count_t ceil_div(count_t num, count_t den) {
    return (num + den - 1) / den;
}

// Arithmetic op kinds. Max doubles as compare.
enum class OpKind : std::uint8_t { Mac, Add, Sub, Mul, Div, Max };

// Off-chip traffic classes.
enum class DramStream : std::uint8_t { Weight, Ifmap, PsumOfmap, Bias, SimdIn, SimdOut };

// On-chip SRAMs. IMem is parsed from hardware files but never accessed.
enum class Buffer : std::uint8_t { WBuf, IBuf, OBuf, BBuf, VMem };

enum class Unit : std::uint8_t { SA, SIMD };

template <typename E, std::size_t N, typename T = count_t>
class EnumArray {
public:
    static constexpr std::size_t size() { return N; }

    constexpr T &operator[](E e) { return values_[static_cast<std::size_t>(e)]; }
    constexpr const T &operator[](E e) const { return values_[static_cast<std::size_t>(e)]; }

    auto begin() { return values_.begin(); }
    auto end() { return values_.end(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    EnumArray &operator+=(const EnumArray &o) {
        for (std::size_t i = 0; i < N; ++i) values_[i] += o.values_[i];
        return *this;
    }

    friend EnumArray operator+(EnumArray a, const EnumArray &b) { return a += b; }

    T sum() const { return std::accumulate(values_.begin(), values_.end(), T{}); }

    bool operator==(const EnumArray &) const = default;

private:
    std::array<T, N> values_{};
};

using OpCounts = EnumArray<OpKind, 6>;
using DramBits = EnumArray<DramStream, 6>;
using SramBits = EnumArray<Buffer, 5>;

inline constexpr std::array<OpKind, 6> kAllOpKinds = {
        OpKind::Mac, OpKind::Add, OpKind::Sub, OpKind::Mul, OpKind::Div, OpKind::Max};
inline constexpr std::array<DramStream, 6> kAllDramStreams = {DramStream::Weight,
        DramStream::Ifmap, DramStream::PsumOfmap, DramStream::Bias, DramStream::SimdIn,
        DramStream::SimdOut};
inline constexpr std::array<Buffer, 5> kAllBuffers
        = {Buffer::WBuf, Buffer::IBuf, Buffer::OBuf, Buffer::BBuf, Buffer::VMem};

constexpr std::string_view to_string(OpKind k) {
    switch (k) {
        case OpKind::Mac: return "mac";
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::Div: return "div";
        case OpKind::Max: return "max";
    }
    return "?";
}

constexpr std::string_view to_string(DramStream s) {
    switch (s) {
        case DramStream::Weight: return "weight";
        case DramStream::Ifmap: return "ifmap";
        case DramStream::PsumOfmap: return "psum_ofmap";
        case DramStream::Bias: return "bias";
        case DramStream::SimdIn: return "simd_in";
        case DramStream::SimdOut: return "simd_out";
    }
    return "?";
}

constexpr std::string_view to_string(Buffer b) {
    switch (b) {
        case Buffer::WBuf: return "WBuf";
        case Buffer::IBuf: return "IBuf";
        case Buffer::OBuf: return "OBuf";
        case Buffer::BBuf: return "BBuf";
        case Buffer::VMem: return "VMem";
    }
    return "?";
}

constexpr std::string_view to_string(Unit u) {
    return u == Unit::SA ? "SA" : "SIMD";
}

} // namespace sasim

// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xlumi {

using Amount = std::uint64_t;    // smallest coin unit, no fractions
using Timestamp = std::uint64_t; // logical time units
using Bytes = std::vector<std::uint8_t>;
using Bytes32 = std::array<std::uint8_t, 32>;

/// Raised when a fixed-length byte field is fed input of the wrong shape.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Address {
    Bytes32 id{};
    auto operator<=>(const Address&) const = default;
};

struct ChannelId {
    Bytes32 id{};
    auto operator<=>(const ChannelId&) const = default;
};

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);
Bytes32 bytes32_from_hex(std::string_view hex);

// Saturating add; timestamps must never wrap backwards.
constexpr std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

} // namespace xlumi

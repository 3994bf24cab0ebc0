// SPDX-License-Identifier: MIT
#pragma once

#include "slc/bytes.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace slc {

struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    friend auto operator<=>(const Digest&, const Digest&) = default;
    std::string hex() const { return to_hex(bytes); }
    std::span<const std::uint8_t> span() const { return bytes; }
    static Digest zero() { return {}; }
};

Digest hash(std::span<const std::uint8_t> message);
inline Digest hash(const Bytes& message) { return hash(std::span<const std::uint8_t>(message)); }
Digest hash_pair(const Digest& left, const Digest& right);  // H(left || right)

using PublicKey = Bytes;
using Signature = Bytes;

struct KeyPair {
    Bytes secret;
    PublicKey pub;
    friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

KeyPair keygen(std::uint64_t seed);
Signature sign(std::span<const std::uint8_t> message, const Bytes& secret);
// Any malformed input yields false.
bool verify(std::span<const std::uint8_t> message, const Signature& sig, const PublicKey& pub);

}  // namespace slc

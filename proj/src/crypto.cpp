// SPDX-License-Identifier: MIT
// SHA-256 and Ed25519 via libsodium.
#include "slc/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace slc {

namespace {

void ensure_init() {
    static const bool ok = sodium_init() >= 0;
    if (!ok) throw std::runtime_error("libsodium init failed");
}

}  // namespace

Digest hash(std::span<const std::uint8_t> message) {
    ensure_init();
    Digest d;
    crypto_hash_sha256(d.bytes.data(), message.data(), message.size());
    return d;
}

Digest hash_pair(const Digest& left, const Digest& right) {
    std::array<std::uint8_t, 64> buf;
    std::copy(left.bytes.begin(), left.bytes.end(), buf.begin());
    std::copy(right.bytes.begin(), right.bytes.end(), buf.begin() + 32);
    return hash(buf);
}

KeyPair keygen(std::uint64_t seed) {
    ensure_init();
    ByteWriter w;
    w.field("slc-keygen").u64(seed);
    Digest s = hash(w.bytes());
    KeyPair kp;
    kp.secret.resize(crypto_sign_SECRETKEYBYTES);
    kp.pub.resize(crypto_sign_PUBLICKEYBYTES);
    crypto_sign_seed_keypair(kp.pub.data(), kp.secret.data(), s.bytes.data());
    return kp;
}

Signature sign(std::span<const std::uint8_t> message, const Bytes& secret) {
    ensure_init();
    if (secret.size() != crypto_sign_SECRETKEYBYTES) throw std::invalid_argument("bad secret key");
    Signature sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret.data());
    return sig;
}

bool verify(std::span<const std::uint8_t> message, const Signature& sig, const PublicKey& pub) {
    ensure_init();
    if (sig.size() != crypto_sign_BYTES || pub.size() != crypto_sign_PUBLICKEYBYTES) return false;
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pub.data()) == 0;
}

}  // namespace slc

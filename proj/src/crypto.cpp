// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/crypto.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include <sodium.h>

namespace xlumi::crypto {

namespace {

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0)
            throw std::runtime_error("sodium_init failed");
    });
}

void check_seed(std::span<const std::uint8_t> seed) {
    if (seed.size() != 32)
        throw SeedError("seed must be exactly 32 bytes");
}

void check_message(std::span<const std::uint8_t> message) {
    if (message.empty())
        throw EmptyMessageError("refusing to sign an empty message");
}

} // namespace

PublicKey PublicKey::from_bytes(std::span<const std::uint8_t> raw) {
    if (raw.size() != 32)
        throw FormatError("public key must be 32 bytes");
    PublicKey pk;
    std::copy(raw.begin(), raw.end(), pk.bytes.begin());
    return pk;
}

Signature Signature::from_bytes(std::span<const std::uint8_t> raw) {
    if (raw.size() != 64)
        throw FormatError("signature must be 64 bytes");
    Signature sig;
    std::copy(raw.begin(), raw.end(), sig.bytes.begin());
    return sig;
}

//------------------------------------------------------------------------------
// Ed25519

static_assert(crypto_sign_PUBLICKEYBYTES == 32);
static_assert(crypto_sign_SECRETKEYBYTES == 64);
static_assert(crypto_sign_BYTES == 64);
static_assert(crypto_sign_SEEDBYTES == 32);

KeyPair Ed25519Scheme::generate_keypair() const {
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed{};
    randombytes_buf(seed.data(), seed.size());
    return generate_keypair(seed);
}

KeyPair Ed25519Scheme::generate_keypair(std::span<const std::uint8_t> seed) const {
    ensure_sodium();
    check_seed(seed);
    KeyPair kp;
    kp.secret.bytes.resize(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(kp.public_key.bytes.data(), kp.secret.bytes.data(), seed.data());
    return kp;
}

Signature Ed25519Scheme::sign(const SecretKey& key, std::span<const std::uint8_t> message) const {
    ensure_sodium();
    check_message(message);
    if (key.bytes.size() != crypto_sign_SECRETKEYBYTES)
        throw FormatError("ed25519 secret key must be 64 bytes");
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(),
                         key.bytes.data());
    return sig;
}

bool Ed25519Scheme::verify(const PublicKey& key, std::span<const std::uint8_t> message,
                           const Signature& sig) const {
    ensure_sodium();
    if (message.empty())
        return false;
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                       key.bytes.data()) == 0;
}

//------------------------------------------------------------------------------
// Keyed-hash test scheme

KeyPair KeyedHashScheme::generate_keypair() const {
    ensure_sodium();
    std::array<std::uint8_t, 32> seed{};
    randombytes_buf(seed.data(), seed.size());
    return generate_keypair(seed);
}

KeyPair KeyedHashScheme::generate_keypair(std::span<const std::uint8_t> seed) const {
    ensure_sodium();
    check_seed(seed);
    KeyPair kp;
    kp.secret.bytes.assign(seed.begin(), seed.end());
    kp.public_key.bytes = sha256(kp.secret.bytes);
    return kp;
}

Signature KeyedHashScheme::sign(const SecretKey& key, std::span<const std::uint8_t> message) const {
    ensure_sodium();
    check_message(message);
    if (key.bytes.size() != 32)
        throw FormatError("keyed-hash secret key must be 32 bytes");
    Signature sig;
    std::copy(key.bytes.begin(), key.bytes.end(), sig.bytes.begin());
    static_assert(crypto_auth_hmacsha256_BYTES == 32);
    static_assert(crypto_auth_hmacsha256_KEYBYTES == 32);
    crypto_auth_hmacsha256(sig.bytes.data() + 32, message.data(), message.size(),
                           key.bytes.data());
    return sig;
}

bool KeyedHashScheme::verify(const PublicKey& key, std::span<const std::uint8_t> message,
                             const Signature& sig) const {
    ensure_sodium();
    if (message.empty())
        return false;
    // The first half of the signature must hash to the public key and the
    // second half must be the HMAC tag under that revealed key.
    Bytes32 claimed = sha256(std::span(sig.bytes).first(32));
    if (claimed != key.bytes)
        return false;
    return crypto_auth_hmacsha256_verify(sig.bytes.data() + 32, message.data(), message.size(),
                                         sig.bytes.data()) == 0;
}

const SignatureScheme& ed25519() {
    static const Ed25519Scheme scheme;
    return scheme;
}

const SignatureScheme& keyed_hash() {
    static const KeyedHashScheme scheme;
    return scheme;
}

//------------------------------------------------------------------------------

SignedPayload make_signed_payload(const SignatureScheme& scheme, const KeyPair& keys,
                                  Bytes message) {
    SignedPayload payload;
    payload.signature = scheme.sign(keys.secret, message);
    payload.message = std::move(message);
    payload.signer = keys.public_key;
    return payload;
}

bool verify_payload(const SignatureScheme& scheme, const SignedPayload& payload) {
    return scheme.verify(payload.signer, payload.message, payload.signature);
}

std::array<std::uint8_t, payment_payload_size> encode_payment(const ChannelId& channel,
                                                              Amount accumulated) {
    std::array<std::uint8_t, payment_payload_size> out{};
    std::copy(channel.id.begin(), channel.id.end(), out.begin());
    for (int i = 0; i < 8; ++i)
        out[32 + i] = static_cast<std::uint8_t>(accumulated >> (56 - 8 * i));
    return out;
}

std::pair<ChannelId, Amount> decode_payment(std::span<const std::uint8_t> payload) {
    if (payload.size() != payment_payload_size)
        throw FormatError("payment payload must be 40 bytes");
    ChannelId channel;
    std::copy(payload.begin(), payload.begin() + 32, channel.id.begin());
    Amount accumulated = 0;
    for (int i = 0; i < 8; ++i)
        accumulated = accumulated << 8 | payload[32 + static_cast<std::size_t>(i)];
    return {channel, accumulated};
}

Bytes32 sha256(std::span<const std::uint8_t> data) {
    ensure_sodium();
    Bytes32 out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

} // namespace xlumi::crypto

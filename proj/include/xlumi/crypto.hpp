// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstddef>
#include <utility>

#include "xlumi/common.hpp"

namespace xlumi::crypto {

/// Seeded key generation requires exactly 32 seed bytes.
struct SeedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Signing the empty message is a caller bug, not a valid payment.
struct EmptyMessageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PublicKey {
    Bytes32 bytes{};
    auto operator<=>(const PublicKey&) const = default;

    static PublicKey from_bytes(std::span<const std::uint8_t> raw);
};

struct SecretKey {
    Bytes bytes; // length is scheme-defined
};

struct Signature {
    std::array<std::uint8_t, 64> bytes{};
    auto operator<=>(const Signature&) const = default;

    static Signature from_bytes(std::span<const std::uint8_t> raw);
};

struct KeyPair {
    SecretKey secret;
    PublicKey public_key;
};

// Detached-signature scheme with 32-byte public keys and 64-byte signatures.
// Verification is deterministic and requires only public data.
class SignatureScheme {
  public:
    virtual ~SignatureScheme() = default;

    virtual std::string_view name() const = 0;
    virtual KeyPair generate_keypair() const = 0;
    virtual KeyPair generate_keypair(std::span<const std::uint8_t> seed) const = 0;
    virtual Signature sign(const SecretKey& key, std::span<const std::uint8_t> message) const = 0;
    virtual bool verify(const PublicKey& key, std::span<const std::uint8_t> message,
                        const Signature& sig) const = 0;
};

/// RFC 8032 Ed25519, backed by libsodium.
class Ed25519Scheme final : public SignatureScheme {
  public:
    std::string_view name() const override { return "ed25519"; }
    KeyPair generate_keypair() const override;
    KeyPair generate_keypair(std::span<const std::uint8_t> seed) const override;
    Signature sign(const SecretKey& key, std::span<const std::uint8_t> message) const override;
    bool verify(const PublicKey& key, std::span<const std::uint8_t> message,
                const Signature& sig) const override;
};

// Keyed-hash stand-in scheme for fast deterministic tests: pk = SHA-256(sk),
// sig = sk || HMAC-SHA-256(sk, message).  Publicly verifiable, but every
// signature leaks the secret key.  Never use outside a test harness.
class KeyedHashScheme final : public SignatureScheme {
  public:
    std::string_view name() const override { return "keyed-hash"; }
    KeyPair generate_keypair() const override;
    KeyPair generate_keypair(std::span<const std::uint8_t> seed) const override;
    Signature sign(const SecretKey& key, std::span<const std::uint8_t> message) const override;
    bool verify(const PublicKey& key, std::span<const std::uint8_t> message,
                const Signature& sig) const override;
};

const SignatureScheme& ed25519();
const SignatureScheme& keyed_hash();

// A message plus the signature and public key it verifies under.  The checked
// factory below signs on construction; code that builds one by aggregate
// initialization (tests, adversaries) owns the consequences.
struct SignedPayload {
    Bytes message;
    Signature signature;
    PublicKey signer;
};

SignedPayload make_signed_payload(const SignatureScheme& scheme, const KeyPair& keys, Bytes message);
bool verify_payload(const SignatureScheme& scheme, const SignedPayload& payload);

// Canonical payment payload: channel id (32 bytes) followed by the
// accumulated amount as an 8-byte big-endian integer.
inline constexpr std::size_t payment_payload_size = 40;

std::array<std::uint8_t, payment_payload_size> encode_payment(const ChannelId& channel,
                                                              Amount accumulated);
std::pair<ChannelId, Amount> decode_payment(std::span<const std::uint8_t> payload);

Bytes32 sha256(std::span<const std::uint8_t> data);

} // namespace xlumi::crypto

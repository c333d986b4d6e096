// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>

#include "xlumi/common.hpp"
#include "xlumi/crypto.hpp"
#include "xlumi/ledger.hpp"
#include "xlumi/tx.hpp"

namespace xlumi::offchain {

/// A session was pointed at a channel the chain does not know.
struct UnknownChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One off-chain payment.  Carries the accumulated total, never a delta, so
// any single message is enough to collect everything owed so far.
struct PaymentMessage {
    ChannelId channel_id{};
    Amount accumulated_amount = 0;
    crypto::Signature signature{};

    auto operator<=>(const PaymentMessage&) const = default;
};

inline constexpr std::size_t payment_message_size = crypto::payment_payload_size + 64;

/// 104 bytes: payment payload followed by the detached signature.
Bytes serialize(const PaymentMessage& message);
PaymentMessage parse_payment_message(std::span<const std::uint8_t> raw);

crypto::SignedPayload to_signed_payload(const PaymentMessage& message,
                                        const crypto::PublicKey& signer);

// Payer's half of a channel.  Tracks the running total and refuses to sign
// past the load it knows about; accumulated_paid never decreases.
class PayerSession {
  public:
    PayerSession(const crypto::SignatureScheme& scheme, const ChannelId& channel,
                 crypto::KeyPair keys, Amount initial_load);

    struct PayResult {
        TxError error = TxError::Ok;
        PaymentMessage message{}; // valid only when error == Ok
    };

    /// Sign a new total of accumulated_paid + delta.
    PayResult pay(Amount delta);

    /// Tell the session about on-chain loads; known load never shrinks.
    void sync_load(Amount onchain_load);

    Amount accumulated_paid() const { return accumulated_paid_; }
    Amount known_load() const { return known_load_; }
    const ChannelId& channel() const { return channel_; }
    const crypto::KeyPair& keys() const { return keys_; }

  private:
    const crypto::SignatureScheme* scheme_;
    ChannelId channel_;
    crypto::KeyPair keys_;
    Amount known_load_;
    Amount accumulated_paid_ = 0;
};

// Recipient's half.  Stores at most one message: totals make every older
// message redundant, so the newest valid one is the whole state.
class RecipientSession {
  public:
    enum class Action {
        None,
        CollectNow,
    };

    RecipientSession(const crypto::SignatureScheme& scheme, const ChannelId& channel,
                     const crypto::PublicKey& payer_key);

    /// Validate an incoming message against the chain; keep it if it is the
    /// new best.  Rejected messages are not cached.
    TxError accept(const ledger::Ledger& chain, const PaymentMessage& message);

    // Poll once; returns CollectNow when uncollected funds are at risk
    // because the channel was aborted or expires within one check interval.
    // Callers are expected to poll at least once per grace period.
    Action monitor(const ledger::Ledger& chain, Timestamp check_interval);

    /// CollectNow once the uncollected amount reaches risk_limit.
    Action settle_threshold(const ledger::Ledger& chain, Amount risk_limit) const;

    const std::optional<PaymentMessage>& best_message() const { return best_; }
    std::size_t stored_signatures() const { return best_ ? 1 : 0; }
    Timestamp last_checked() const { return last_checked_; }

    /// Models recipient-side data loss; only adversarial scenarios use this.
    void drop_storage() { best_.reset(); }

  private:
    Amount best_amount() const { return best_ ? best_->accumulated_amount : 0; }

    const crypto::SignatureScheme* scheme_;
    ChannelId channel_;
    crypto::PublicKey payer_key_;
    std::optional<PaymentMessage> best_;
    Timestamp last_checked_ = 0;
};

} // namespace xlumi::offchain

// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/offchain.hpp"

#include <algorithm>

namespace xlumi::offchain {

Bytes serialize(const PaymentMessage& message) {
    auto payload = crypto::encode_payment(message.channel_id, message.accumulated_amount);
    Bytes out;
    out.reserve(payment_message_size);
    out.insert(out.end(), payload.begin(), payload.end());
    out.insert(out.end(), message.signature.bytes.begin(), message.signature.bytes.end());
    return out;
}

PaymentMessage parse_payment_message(std::span<const std::uint8_t> raw) {
    if (raw.size() != payment_message_size)
        throw FormatError("payment message must be 104 bytes");
    auto [channel, amount] = crypto::decode_payment(raw.first(crypto::payment_payload_size));
    PaymentMessage message;
    message.channel_id = channel;
    message.accumulated_amount = amount;
    message.signature = crypto::Signature::from_bytes(raw.subspan(crypto::payment_payload_size));
    return message;
}

crypto::SignedPayload to_signed_payload(const PaymentMessage& message,
                                        const crypto::PublicKey& signer) {
    auto payload = crypto::encode_payment(message.channel_id, message.accumulated_amount);
    return crypto::SignedPayload{Bytes(payload.begin(), payload.end()), message.signature, signer};
}

//------------------------------------------------------------------------------
// PayerSession

PayerSession::PayerSession(const crypto::SignatureScheme& scheme, const ChannelId& channel,
                           crypto::KeyPair keys, Amount initial_load)
    : scheme_(&scheme), channel_(channel), keys_(std::move(keys)), known_load_(initial_load) {}

PayerSession::PayResult PayerSession::pay(Amount delta) {
    if (delta == 0)
        return {TxError::ZeroDelta, {}};
    // accumulated_paid_ <= known_load_ always holds, so this cannot underflow.
    if (delta > known_load_ - accumulated_paid_)
        return {TxError::ExceedsLoad, {}};
    accumulated_paid_ += delta;
    PaymentMessage message;
    message.channel_id = channel_;
    message.accumulated_amount = accumulated_paid_;
    auto payload = crypto::encode_payment(channel_, accumulated_paid_);
    message.signature = scheme_->sign(keys_.secret, payload);
    return {TxError::Ok, message};
}

void PayerSession::sync_load(Amount onchain_load) {
    known_load_ = std::max(known_load_, onchain_load);
}

//------------------------------------------------------------------------------
// RecipientSession

RecipientSession::RecipientSession(const crypto::SignatureScheme& scheme, const ChannelId& channel,
                                   const crypto::PublicKey& payer_key)
    : scheme_(&scheme), channel_(channel), payer_key_(payer_key) {}

TxError RecipientSession::accept(const ledger::Ledger& chain, const PaymentMessage& message) {
    if (message.channel_id != channel_)
        return TxError::WrongChannel;
    auto payload = crypto::encode_payment(message.channel_id, message.accumulated_amount);
    if (!scheme_->verify(payer_key_, payload, message.signature))
        return TxError::BadSignature;
    const channel::ChannelState* state = chain.find_channel(channel_);
    if (!state)
        throw UnknownChannelError("channel missing from chain: " + to_hex(channel_.id));
    if (chain.now() >= state->expiration)
        return TxError::Expired;
    if (message.accumulated_amount <= best_amount())
        return TxError::NotNewer;
    // Accepting totals above the on-chain load would hold value the contract
    // cannot pay out; ignore them until a load catches up.
    if (message.accumulated_amount > state->accumulated_load)
        return TxError::ExceedsLoad;
    best_ = message;
    return TxError::Ok;
}

RecipientSession::Action RecipientSession::monitor(const ledger::Ledger& chain,
                                                   Timestamp check_interval) {
    const channel::ChannelState* state = chain.find_channel(channel_);
    if (!state)
        throw UnknownChannelError("channel missing from chain: " + to_hex(channel_.id));
    last_checked_ = chain.now();
    if (chain.now() >= state->expiration)
        return Action::None; // too late, nothing a collect can do
    if (best_amount() <= state->collected)
        return Action::None;
    bool aborted = state->status == channel::ChannelStatus::Aborted;
    bool closing_soon = state->expiration - chain.now() <= check_interval;
    return aborted || closing_soon ? Action::CollectNow : Action::None;
}

RecipientSession::Action RecipientSession::settle_threshold(const ledger::Ledger& chain,
                                                            Amount risk_limit) const {
    if (risk_limit == 0)
        throw std::invalid_argument("risk_limit must be positive");
    const channel::ChannelState* state = chain.find_channel(channel_);
    if (!state)
        throw UnknownChannelError("channel missing from chain: " + to_hex(channel_.id));
    Amount best = best_amount();
    Amount uncollected = best > state->collected ? best - state->collected : 0;
    return uncollected >= risk_limit ? Action::CollectNow : Action::None;
}

} // namespace xlumi::offchain

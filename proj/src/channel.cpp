// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/channel.hpp"

#include <algorithm>
#include <sstream>

#include "xlumi/ledger.hpp"

namespace xlumi::channel {

namespace {

void put_be64(Bytes& out, std::uint64_t value) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(value >> (56 - 8 * i)));
}

} // namespace

std::string_view to_string(ChannelStatus status) {
    switch (status) {
    case ChannelStatus::Active:
        return "active";
    case ChannelStatus::Aborted:
        return "aborted";
    }
    return "unknown";
}

std::string dump(const ChannelState& state) {
    std::ostringstream out;
    out << to_hex(state.id.id) << ' ' << state.accumulated_load << ' ' << state.collected << ' '
        << state.expiration << ' ' << to_string(state.status);
    return out.str();
}

CreateResult create(ledger::Ledger& chain, const Address& payer, const Address& recipient,
                    Amount amount, Timestamp expiration) {
    Bytes params;
    params.insert(params.end(), recipient.id.begin(), recipient.id.end());
    put_be64(params, amount);
    put_be64(params, expiration);

    CreateResult result;
    result.error = chain.submit(
        payer, TxKind::Create, params,
        [&]() -> TxError {
            if (amount == 0)
                return TxError::ZeroAmount;
            if (payer == recipient)
                return TxError::SelfChannel;
            if (expiration <= chain.now_)
                return TxError::PastExpiration;
            if (chain.balance_in(chain.contract_, payer) < amount)
                return TxError::InsufficientBalance;
            if (chain.balance_in(chain.main_, payer) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32& tx_id) {
            // The channel id is the id of the transaction that created it;
            // two creates can never collide because ids hash a unique seq.
            ChannelState state;
            state.id = ChannelId{tx_id};
            state.owner = payer;
            state.recipient = recipient;
            state.accumulated_load = amount;
            state.escrow = amount;
            state.expiration = expiration;
            chain.contract_[payer] -= amount;
            chain.channels_.emplace(state.id, state);
            result.id = state.id;
        });
    return result;
}

TxError load(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
             Amount amount) {
    Bytes params;
    params.insert(params.end(), channel.id.begin(), channel.id.end());
    put_be64(params, amount);

    return chain.submit(
        caller, TxKind::Load, params,
        [&]() -> TxError {
            const ChannelState* state = chain.find_channel(channel);
            if (!state)
                return TxError::UnknownChannel;
            if (caller != state->owner)
                return TxError::Unauthorized;
            if (state->unloaded)
                return TxError::AlreadyUnloaded;
            if (state->status == ChannelStatus::Aborted)
                return TxError::ChannelAborted;
            if (amount == 0)
                return TxError::ZeroAmount;
            if (chain.balance_in(chain.contract_, caller) < amount)
                return TxError::InsufficientBalance;
            if (chain.balance_in(chain.main_, caller) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            ChannelState& state = chain.channels_.at(channel);
            chain.contract_[caller] -= amount;
            state.accumulated_load += amount;
            state.escrow += amount;
        });
}

TxError extend_expiration(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
                          Timestamp new_expiration) {
    Bytes params;
    params.insert(params.end(), channel.id.begin(), channel.id.end());
    put_be64(params, new_expiration);

    return chain.submit(
        caller, TxKind::Extend, params,
        [&]() -> TxError {
            const ChannelState* state = chain.find_channel(channel);
            if (!state)
                return TxError::UnknownChannel;
            if (caller != state->owner)
                return TxError::Unauthorized;
            if (state->unloaded)
                return TxError::AlreadyUnloaded;
            if (state->status == ChannelStatus::Aborted)
                return TxError::ChannelAborted;
            if (new_expiration <= state->expiration)
                return TxError::NotAnExtension;
            if (chain.balance_in(chain.main_, caller) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) { chain.channels_.at(channel).expiration = new_expiration; });
}

TxError abort(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
              Timestamp grace_period) {
    Bytes params;
    params.insert(params.end(), channel.id.begin(), channel.id.end());
    put_be64(params, grace_period);

    return chain.submit(
        caller, TxKind::Abort, params,
        [&]() -> TxError {
            const ChannelState* state = chain.find_channel(channel);
            if (!state)
                return TxError::UnknownChannel;
            if (caller != state->owner)
                return TxError::Unauthorized;
            if (state->unloaded)
                return TxError::AlreadyUnloaded;
            if (state->status == ChannelStatus::Aborted)
                return TxError::AlreadyAborted;
            if (chain.balance_in(chain.main_, caller) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            // Expiration only ever moves closer; the grace window still gives
            // the recipient time to collect before funds unlock.
            ChannelState& state = chain.channels_.at(channel);
            state.status = ChannelStatus::Aborted;
            state.expiration = std::min(state.expiration, sat_add(chain.now_, grace_period));
        });
}

TxError collect_payment(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
                        const crypto::SignedPayload& payload) {
    Bytes params;
    params.insert(params.end(), channel.id.begin(), channel.id.end());
    params.insert(params.end(), payload.message.begin(), payload.message.end());
    params.insert(params.end(), payload.signature.bytes.begin(), payload.signature.bytes.end());

    return chain.submit(
        caller, TxKind::Collect, params,
        [&]() -> TxError {
            const ChannelState* state = chain.find_channel(channel);
            if (!state)
                return TxError::UnknownChannel;
            if (caller != state->recipient)
                return TxError::Unauthorized;
            if (state->unloaded)
                return TxError::AlreadyUnloaded;
            if (chain.now_ >= state->expiration)
                return TxError::Expired;
            if (payload.message.size() != crypto::payment_payload_size)
                return TxError::WrongChannel;
            auto [claimed_channel, amount] = crypto::decode_payment(payload.message);
            if (claimed_channel != channel)
                return TxError::WrongChannel;
            // Verify against the owner key registered on chain, not whatever
            // key the submitter attached.
            const crypto::PublicKey* owner_key = chain.account_key(state->owner);
            if (!owner_key ||
                !chain.scheme_->verify(*owner_key, payload.message, payload.signature))
                return TxError::BadSignature;
            if (amount <= state->collected)
                return TxError::StaleAmount;
            if (amount > state->accumulated_load)
                return TxError::ExceedsLoad;
            if (chain.balance_in(chain.main_, caller) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            ChannelState& state = chain.channels_.at(channel);
            auto [claimed_channel, amount] = crypto::decode_payment(payload.message);
            Amount delta = amount - state.collected;
            state.collected = amount;
            state.escrow -= delta;
            chain.contract_[state.recipient] += delta;
        });
}

TxError unload(ledger::Ledger& chain, const Address& caller, const ChannelId& channel) {
    Bytes params;
    params.insert(params.end(), channel.id.begin(), channel.id.end());

    return chain.submit(
        caller, TxKind::Unload, params,
        [&]() -> TxError {
            const ChannelState* state = chain.find_channel(channel);
            if (!state)
                return TxError::UnknownChannel;
            if (caller != state->owner)
                return TxError::Unauthorized;
            if (state->unloaded)
                return TxError::AlreadyUnloaded;
            if (chain.now_ < state->expiration)
                return TxError::ChannelStillOpen;
            if (chain.balance_in(chain.main_, caller) < chain.fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            ChannelState& state = chain.channels_.at(channel);
            chain.contract_[state.owner] += state.escrow;
            state.escrow = 0;
            state.unloaded = true;
        });
}

} // namespace xlumi::channel

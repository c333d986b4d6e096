// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/tx.hpp"

namespace xlumi {

std::string_view to_string(TxError err) {
    switch (err) {
    case TxError::Ok:
        return "ok";
    case TxError::ZeroAmount:
        return "zero_amount";
    case TxError::ZeroDelta:
        return "zero_delta";
    case TxError::SelfChannel:
        return "self_channel";
    case TxError::PastExpiration:
        return "past_expiration";
    case TxError::NotAnExtension:
        return "not_an_extension";
    case TxError::InsufficientBalance:
        return "insufficient_balance";
    case TxError::InsufficientContractBalance:
        return "insufficient_contract_balance";
    case TxError::InsufficientFeeFunds:
        return "insufficient_fee_funds";
    case TxError::Unauthorized:
        return "unauthorized";
    case TxError::UnknownChannel:
        return "unknown_channel";
    case TxError::ChannelAborted:
        return "channel_aborted";
    case TxError::AlreadyAborted:
        return "already_aborted";
    case TxError::AlreadyUnloaded:
        return "already_unloaded";
    case TxError::ChannelStillOpen:
        return "channel_still_open";
    case TxError::Expired:
        return "expired";
    case TxError::BadSignature:
        return "bad_signature";
    case TxError::WrongChannel:
        return "wrong_channel";
    case TxError::StaleAmount:
        return "stale_amount";
    case TxError::ExceedsLoad:
        return "exceeds_load";
    case TxError::NotNewer:
        return "not_newer";
    }
    return "unknown";
}

std::string_view to_string(TxKind kind) {
    switch (kind) {
    case TxKind::Create:
        return "create";
    case TxKind::Load:
        return "load";
    case TxKind::Extend:
        return "extend";
    case TxKind::Abort:
        return "abort";
    case TxKind::Collect:
        return "collect";
    case TxKind::Unload:
        return "unload";
    case TxKind::Deposit:
        return "deposit";
    case TxKind::Withdraw:
        return "withdraw";
    }
    return "unknown";
}

} // namespace xlumi

// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <string_view>

namespace xlumi {

// Shared result vocabulary for on-chain transactions and off-chain message
// handling.  Ok means accepted; everything else is a rejection and the
// operation must have had no effect.
enum class TxError {
    Ok,
    ZeroAmount,
    ZeroDelta,
    SelfChannel,
    PastExpiration,
    NotAnExtension,
    InsufficientBalance,
    InsufficientContractBalance,
    InsufficientFeeFunds,
    Unauthorized,
    UnknownChannel,
    ChannelAborted,
    AlreadyAborted,
    AlreadyUnloaded,
    ChannelStillOpen,
    Expired,
    BadSignature,
    WrongChannel,
    StaleAmount,
    ExceedsLoad,
    NotNewer,
};

enum class TxKind {
    Create,
    Load,
    Extend,
    Abort,
    Collect,
    Unload,
    Deposit,
    Withdraw,
};

std::string_view to_string(TxError err);
std::string_view to_string(TxKind kind);

} // namespace xlumi

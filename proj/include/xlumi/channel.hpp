// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "xlumi/common.hpp"
#include "xlumi/crypto.hpp"
#include "xlumi/tx.hpp"

namespace xlumi::ledger {
class Ledger;
}

namespace xlumi::channel {

enum class ChannelStatus {
    Active,
    Aborted,
};

std::string_view to_string(ChannelStatus status);

// One unidirectional channel.  Funds flow owner -> recipient only.
//
// Core invariants, enforced by the transaction handlers below:
//   accumulated_load and collected never decrease,
//   collected <= accumulated_load,
//   escrow == accumulated_load - collected until unload, then 0.
struct ChannelState {
    ChannelId id{};
    Address owner{};
    Address recipient{};
    Amount accumulated_load = 0; // total ever placed into the channel
    Amount collected = 0;        // total the recipient has taken out
    Amount escrow = 0;           // coins currently locked on chain
    Timestamp expiration = 0;
    ChannelStatus status = ChannelStatus::Active;
    bool unloaded = false; // terminal: leftover escrow returned to owner
};

/// One line per channel: id hex, load, collected, expiration, status.
std::string dump(const ChannelState& state);

struct CreateResult {
    TxError error = TxError::Ok;
    ChannelId id{}; // valid only when error == Ok
};

// On-chain channel transactions.  Each submits exactly one transaction to the
// ledger: rejections are recorded in the log, charge no fee and change no
// balance or channel field.
CreateResult create(ledger::Ledger& chain, const Address& payer, const Address& recipient,
                    Amount amount, Timestamp expiration);
TxError load(ledger::Ledger& chain, const Address& caller, const ChannelId& channel, Amount amount);
TxError extend_expiration(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
                          Timestamp new_expiration);
TxError abort(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
              Timestamp grace_period);
TxError collect_payment(ledger::Ledger& chain, const Address& caller, const ChannelId& channel,
                        const crypto::SignedPayload& payload);
TxError unload(ledger::Ledger& chain, const Address& caller, const ChannelId& channel);

} // namespace xlumi::channel

// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>

#include "xlumi/channel.hpp"
#include "xlumi/common.hpp"
#include "xlumi/crypto.hpp"
#include "xlumi/tx.hpp"

namespace xlumi::ledger {

/// Coin conservation broke; the ledger itself is buggy, not the caller.
struct LedgerInvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

struct TxRecord {
    Bytes32 tx_id{};
    std::uint64_t seq = 0;
    Timestamp time = 0;
    Address sender{};
    TxKind kind{};
    TxError outcome = TxError::Ok; // Ok means accepted
};

struct TxFilter {
    std::optional<Address> sender;
    std::optional<TxKind> kind;
};

/// Account address: SHA-256 of the account's public key.
Address address_of(const crypto::PublicKey& key);

// Deterministic in-memory chain with a logical clock.  Every account has a
// main balance (fees come out of here) and a contract balance (channel funds
// move through here).  Accepted transactions charge a flat fee from the
// sender's main balance; rejected ones are logged and change nothing.
//
// Conservation holds after every transaction:
//   sum(main) + sum(contract) + sum(channel escrow) + fees_collected
//     == total supply minted through create_account.
class Ledger {
  public:
    Ledger(const crypto::SignatureScheme& scheme, Amount fee);

    /// Genesis mint; not a transaction, charges no fee.
    Address create_account(const crypto::PublicKey& key, Amount main, Amount contract);

    /// Clock moves forward only.
    void advance_time(Timestamp delta);

    TxError deposit_to_contract(const Address& who, Amount amount);
    TxError withdraw_from_contract(const Address& who, Amount amount);

    /// Accepted transactions matching the filter.
    std::uint64_t count_transactions(const TxFilter& filter = {}) const;

    Timestamp now() const { return now_; }
    Amount fee() const { return fee_; }
    Amount fees_collected() const { return fees_collected_; }
    Amount total_supply() const { return supply_; }
    const crypto::SignatureScheme& scheme() const { return *scheme_; }

    Amount main_balance(const Address& who) const;
    Amount contract_balance(const Address& who) const;
    const crypto::PublicKey* account_key(const Address& who) const;
    const channel::ChannelState* find_channel(const ChannelId& channel) const;
    std::vector<ChannelId> channel_ids() const;
    const std::vector<TxRecord>& tx_log() const { return log_; }

    /// One line per logged transaction: time, tx id, sender, kind, outcome.
    std::string export_log() const;

    /// Throws LedgerInvariantError if conservation does not hold.
    void assert_conservation() const;

  private:
    friend channel::CreateResult channel::create(Ledger&, const Address&, const Address&, Amount,
                                                 Timestamp);
    friend TxError channel::load(Ledger&, const Address&, const ChannelId&, Amount);
    friend TxError channel::extend_expiration(Ledger&, const Address&, const ChannelId&,
                                              Timestamp);
    friend TxError channel::abort(Ledger&, const Address&, const ChannelId&, Timestamp);
    friend TxError channel::collect_payment(Ledger&, const Address&, const ChannelId&,
                                            const crypto::SignedPayload&);
    friend TxError channel::unload(Ledger&, const Address&, const ChannelId&);

    // All transaction mechanics in one place: id assignment, fee charge on
    // acceptance, logging, conservation check.  validate must confirm the
    // sender can pay the fee unless it folds the fee into its own check.
    TxError submit(const Address& sender, TxKind kind, std::span<const std::uint8_t> params,
                   const std::function<TxError()>& validate,
                   const std::function<void(const Bytes32& tx_id)>& apply,
                   Bytes32* tx_id_out = nullptr);

    Amount balance_in(const std::map<Address, Amount>& table, const Address& who) const;

    const crypto::SignatureScheme* scheme_;
    Amount fee_;
    Timestamp now_ = 0;
    Amount supply_ = 0;
    Amount fees_collected_ = 0;
    std::uint64_t next_seq_ = 0;
    std::map<Address, Amount> main_;
    std::map<Address, Amount> contract_;
    std::map<Address, crypto::PublicKey> keys_;
    std::map<ChannelId, channel::ChannelState> channels_;
    std::vector<TxRecord> log_;
};

} // namespace xlumi::ledger

// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/ledger.hpp"

#include <sstream>

namespace xlumi::ledger {

namespace {

void put_be64(Bytes& out, std::uint64_t value) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(value >> (56 - 8 * i)));
}

Bytes tx_id_preimage(const Address& sender, TxKind kind, std::span<const std::uint8_t> params,
                     std::uint64_t seq) {
    Bytes pre;
    pre.reserve(32 + 1 + params.size() + 8);
    pre.insert(pre.end(), sender.id.begin(), sender.id.end());
    pre.push_back(static_cast<std::uint8_t>(kind));
    pre.insert(pre.end(), params.begin(), params.end());
    put_be64(pre, seq);
    return pre;
}

} // namespace

Address address_of(const crypto::PublicKey& key) {
    return Address{crypto::sha256(key.bytes)};
}

Ledger::Ledger(const crypto::SignatureScheme& scheme, Amount fee) : scheme_(&scheme), fee_(fee) {}

Address Ledger::create_account(const crypto::PublicKey& key, Amount main, Amount contract) {
    Address addr = address_of(key);
    if (keys_.contains(addr))
        throw std::logic_error("account already exists");
    keys_.emplace(addr, key);
    main_[addr] = main;
    contract_[addr] = contract;
    supply_ += main;
    supply_ += contract;
    assert_conservation();
    return addr;
}

void Ledger::advance_time(Timestamp delta) {
    now_ = sat_add(now_, delta);
}

TxError Ledger::deposit_to_contract(const Address& who, Amount amount) {
    Bytes params;
    put_be64(params, amount);
    return submit(
        who, TxKind::Deposit, params,
        [&]() -> TxError {
            if (amount == 0)
                return TxError::ZeroAmount;
            // Amount and fee leave main together; report any shortfall as one.
            Amount main = balance_in(main_, who);
            if (main < amount || main - amount < fee_)
                return TxError::InsufficientBalance;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            main_[who] -= amount;
            contract_[who] += amount;
        });
}

TxError Ledger::withdraw_from_contract(const Address& who, Amount amount) {
    Bytes params;
    put_be64(params, amount);
    return submit(
        who, TxKind::Withdraw, params,
        [&]() -> TxError {
            if (amount == 0)
                return TxError::ZeroAmount;
            if (balance_in(contract_, who) < amount)
                return TxError::InsufficientContractBalance;
            if (balance_in(main_, who) < fee_)
                return TxError::InsufficientFeeFunds;
            return TxError::Ok;
        },
        [&](const Bytes32&) {
            contract_[who] -= amount;
            main_[who] += amount;
        });
}

std::uint64_t Ledger::count_transactions(const TxFilter& filter) const {
    std::uint64_t count = 0;
    for (const TxRecord& rec : log_) {
        if (rec.outcome != TxError::Ok)
            continue;
        if (filter.sender && rec.sender != *filter.sender)
            continue;
        if (filter.kind && rec.kind != *filter.kind)
            continue;
        ++count;
    }
    return count;
}

Amount Ledger::main_balance(const Address& who) const {
    return balance_in(main_, who);
}

Amount Ledger::contract_balance(const Address& who) const {
    return balance_in(contract_, who);
}

const crypto::PublicKey* Ledger::account_key(const Address& who) const {
    auto it = keys_.find(who);
    return it == keys_.end() ? nullptr : &it->second;
}

const channel::ChannelState* Ledger::find_channel(const ChannelId& channel) const {
    auto it = channels_.find(channel);
    return it == channels_.end() ? nullptr : &it->second;
}

std::vector<ChannelId> Ledger::channel_ids() const {
    std::vector<ChannelId> ids;
    ids.reserve(channels_.size());
    for (const auto& [id, state] : channels_)
        ids.push_back(id);
    return ids;
}

std::string Ledger::export_log() const {
    std::ostringstream out;
    for (const TxRecord& rec : log_) {
        out << rec.time << ' ' << to_hex(rec.tx_id) << ' ' << to_hex(rec.sender.id) << ' '
            << to_string(rec.kind) << ' ';
        if (rec.outcome == TxError::Ok)
            out << "accepted";
        else
            out << "rejected:" << to_string(rec.outcome);
        out << '\n';
    }
    return out.str();
}

void Ledger::assert_conservation() const {
    Amount total = fees_collected_;
    for (const auto& [who, amount] : main_)
        total += amount;
    for (const auto& [who, amount] : contract_)
        total += amount;
    for (const auto& [id, state] : channels_)
        total += state.escrow;
    if (total != supply_)
        throw LedgerInvariantError("coin conservation violated: have " + std::to_string(total) +
                                   ", minted " + std::to_string(supply_));
}

TxError Ledger::submit(const Address& sender, TxKind kind, std::span<const std::uint8_t> params,
                       const std::function<TxError()>& validate,
                       const std::function<void(const Bytes32&)>& apply, Bytes32* tx_id_out) {
    TxRecord rec;
    rec.seq = next_seq_++;
    rec.time = now_;
    rec.sender = sender;
    rec.kind = kind;
    rec.tx_id = crypto::sha256(tx_id_preimage(sender, kind, params, rec.seq));

    rec.outcome = validate();
    if (rec.outcome == TxError::Ok) {
        apply(rec.tx_id);
        main_[sender] -= fee_;
        fees_collected_ += fee_;
    }
    log_.push_back(rec);
    assert_conservation();
    if (tx_id_out)
        *tx_id_out = rec.tx_id;
    return rec.outcome;
}

Amount Ledger::balance_in(const std::map<Address, Amount>& table, const Address& who) const {
    auto it = table.find(who);
    return it == table.end() ? 0 : it->second;
}

} // namespace xlumi::ledger

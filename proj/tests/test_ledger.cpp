// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "xlumi/ledger.hpp"

using namespace xlumi;

namespace {

crypto::KeyPair key_n(std::uint64_t n) {
    Bytes32 seed{};
    for (int i = 0; i < 8; ++i)
        seed[i] = static_cast<std::uint8_t>(n >> (56 - 8 * i));
    return crypto::keyed_hash().generate_keypair(seed);
}

struct Fixture {
    ledger::Ledger chain{crypto::keyed_hash(), 1};
    crypto::KeyPair alice_kp = key_n(1);
    crypto::KeyPair bob_kp = key_n(2);
    Address alice = chain.create_account(alice_kp.public_key, 100, 0);
    Address bob = chain.create_account(bob_kp.public_key, 1, 10);
};

} // namespace

TEST_CASE("addresses are the hash of the account key") {
    crypto::KeyPair kp = key_n(9);
    CHECK(ledger::address_of(kp.public_key).id == crypto::sha256(kp.public_key.bytes));
}

TEST_CASE("genesis accounts mint supply and cannot repeat") {
    Fixture f;
    CHECK(f.chain.main_balance(f.alice) == 100);
    CHECK(f.chain.contract_balance(f.alice) == 0);
    CHECK(f.chain.main_balance(f.bob) == 1);
    CHECK(f.chain.contract_balance(f.bob) == 10);
    CHECK(f.chain.total_supply() == 111);
    CHECK(f.chain.fees_collected() == 0);
    CHECK(f.chain.account_key(f.alice) != nullptr);
    CHECK(f.chain.account_key(Address{}) == nullptr);
    CHECK_THROWS_AS((void)f.chain.create_account(f.alice_kp.public_key, 5, 5), std::logic_error);
}

TEST_CASE("the clock moves forward and saturates instead of wrapping") {
    Fixture f;
    CHECK(f.chain.now() == 0);
    f.chain.advance_time(5);
    CHECK(f.chain.now() == 5);
    f.chain.advance_time(0);
    CHECK(f.chain.now() == 5);
    f.chain.advance_time(UINT64_MAX);
    CHECK(f.chain.now() == UINT64_MAX);
    f.chain.advance_time(UINT64_MAX);
    CHECK(f.chain.now() == UINT64_MAX);
}

TEST_CASE("deposit moves funds to the contract balance and charges the fee") {
    Fixture f;
    CHECK(f.chain.deposit_to_contract(f.alice, 30) == TxError::Ok);
    CHECK(f.chain.main_balance(f.alice) == 69);
    CHECK(f.chain.contract_balance(f.alice) == 30);
    CHECK(f.chain.fees_collected() == 1);
}

TEST_CASE("deposit needs the amount and the fee together") {
    Fixture f;
    // 100 = amount leaves nothing for the fee; 99 leaves exactly the fee.
    CHECK(f.chain.deposit_to_contract(f.alice, 100) == TxError::InsufficientBalance);
    CHECK(f.chain.main_balance(f.alice) == 100);
    CHECK(f.chain.deposit_to_contract(f.alice, 99) == TxError::Ok);
    CHECK(f.chain.main_balance(f.alice) == 0);
    CHECK(f.chain.contract_balance(f.alice) == 99);
}

TEST_CASE("zero-amount transfers are rejected") {
    Fixture f;
    CHECK(f.chain.deposit_to_contract(f.alice, 0) == TxError::ZeroAmount);
    CHECK(f.chain.withdraw_from_contract(f.bob, 0) == TxError::ZeroAmount);
    CHECK(f.chain.fees_collected() == 0);
}

TEST_CASE("withdraw pays out of the contract balance") {
    Fixture f;
    // The fee must be coverable before the withdrawal credits main.
    CHECK(f.chain.withdraw_from_contract(f.bob, 10) == TxError::Ok);
    CHECK(f.chain.main_balance(f.bob) == 10);
    CHECK(f.chain.contract_balance(f.bob) == 0);

    CHECK(f.chain.withdraw_from_contract(f.bob, 1) == TxError::InsufficientContractBalance);

    Address carol = f.chain.create_account(key_n(3).public_key, 0, 10);
    CHECK(f.chain.withdraw_from_contract(carol, 10) == TxError::InsufficientFeeFunds);
    CHECK(f.chain.contract_balance(carol) == 10);
    CHECK(f.chain.main_balance(carol) == 0);
}

TEST_CASE("rejected transactions are logged but change nothing") {
    Fixture f;
    Amount supply_before = f.chain.total_supply();
    CHECK(f.chain.deposit_to_contract(f.alice, 500) == TxError::InsufficientBalance);
    CHECK(f.chain.tx_log().size() == 1);
    CHECK(f.chain.tx_log().front().outcome == TxError::InsufficientBalance);
    CHECK(f.chain.main_balance(f.alice) == 100);
    CHECK(f.chain.fees_collected() == 0);
    CHECK(f.chain.total_supply() == supply_before);
    CHECK(f.chain.count_transactions() == 0);
}

TEST_CASE("transaction ids never collide, even for identical submissions") {
    Fixture f;
    std::set<Bytes32> ids;
    for (int i = 0; i < 50; ++i)
        CHECK(f.chain.deposit_to_contract(f.alice, 1) == TxError::Ok);
    for (const ledger::TxRecord& rec : f.chain.tx_log())
        ids.insert(rec.tx_id);
    CHECK(ids.size() == 50);
}

TEST_CASE("transaction counting filters by sender and kind, accepted only") {
    Fixture f;
    REQUIRE(f.chain.deposit_to_contract(f.alice, 10) == TxError::Ok);
    REQUIRE(f.chain.deposit_to_contract(f.alice, 10) == TxError::Ok);
    REQUIRE(f.chain.withdraw_from_contract(f.bob, 10) == TxError::Ok);
    REQUIRE(f.chain.deposit_to_contract(f.bob, 500) == TxError::InsufficientBalance);

    CHECK(f.chain.count_transactions() == 3);
    CHECK(f.chain.count_transactions({.sender = f.alice, .kind = {}}) == 2);
    CHECK(f.chain.count_transactions({.sender = {}, .kind = TxKind::Withdraw}) == 1);
    CHECK(f.chain.count_transactions({.sender = f.bob, .kind = TxKind::Deposit}) == 0);
}

TEST_CASE("the exported log carries time, id, sender, kind and outcome") {
    Fixture f;
    f.chain.advance_time(7);
    REQUIRE(f.chain.deposit_to_contract(f.alice, 10) == TxError::Ok);
    REQUIRE(f.chain.deposit_to_contract(f.alice, 0) == TxError::ZeroAmount);

    std::istringstream lines(f.chain.export_log());
    std::string line;
    REQUIRE(std::getline(lines, line));
    std::istringstream first(line);
    std::string time, tx_id, sender, kind, outcome;
    first >> time >> tx_id >> sender >> kind >> outcome;
    CHECK(time == "7");
    CHECK(tx_id.size() == 64);
    CHECK(sender == to_hex(f.alice.id));
    CHECK(kind == "deposit");
    CHECK(outcome == "accepted");

    REQUIRE(std::getline(lines, line));
    CHECK(line.ends_with("rejected:zero_amount"));
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("conservation holds through a random storm of transfers") {
    Fixture f;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const Address& who = rng() % 2 == 0 ? f.alice : f.bob;
        Amount amount = rng() % 40; // zero included: exercises rejections
        if (rng() % 2 == 0)
            (void)f.chain.deposit_to_contract(who, amount);
        else
            (void)f.chain.withdraw_from_contract(who, amount);
        f.chain.assert_conservation();
    }
    CHECK(f.chain.tx_log().size() == 500);
}

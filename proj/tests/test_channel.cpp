// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "xlumi/channel.hpp"
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
    crypto::KeyPair payer_kp = key_n(1);
    crypto::KeyPair recipient_kp = key_n(2);
    crypto::KeyPair outsider_kp = key_n(3);
    Address payer = chain.create_account(payer_kp.public_key, 100, 100);
    Address recipient = chain.create_account(recipient_kp.public_key, 50, 0);
    Address outsider = chain.create_account(outsider_kp.public_key, 10, 0);

    ChannelId open(Amount amount = 10, Timestamp expire = 100) {
        channel::CreateResult result = channel::create(chain, payer, recipient, amount, expire);
        REQUIRE(result.error == TxError::Ok);
        return result.id;
    }

    crypto::SignedPayload signed_total(const ChannelId& id, Amount amount,
                                       const crypto::KeyPair& kp) {
        auto payload = crypto::encode_payment(id, amount);
        return crypto::make_signed_payload(crypto::keyed_hash(), kp,
                                           Bytes(payload.begin(), payload.end()));
    }
};

} // namespace

TEST_CASE("create escrows funds and registers the channel") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    const channel::ChannelState* state = f.chain.find_channel(id);
    REQUIRE(state != nullptr);
    CHECK(state->owner == f.payer);
    CHECK(state->recipient == f.recipient);
    CHECK(state->accumulated_load == 10);
    CHECK(state->collected == 0);
    CHECK(state->escrow == 10);
    CHECK(state->expiration == 100);
    CHECK(state->status == channel::ChannelStatus::Active);
    CHECK_FALSE(state->unloaded);
    CHECK(f.chain.contract_balance(f.payer) == 90);
    CHECK(f.chain.main_balance(f.payer) == 99);

    // The channel id is the id of the transaction that created it.
    CHECK(f.chain.tx_log().front().tx_id == id.id);
    CHECK(f.chain.channel_ids() == std::vector{id});
}

TEST_CASE("create validation order and rejection cases") {
    Fixture f;
    f.chain.advance_time(50);
    CHECK(channel::create(f.chain, f.payer, f.recipient, 0, 100).error == TxError::ZeroAmount);
    CHECK(channel::create(f.chain, f.payer, f.payer, 10, 100).error == TxError::SelfChannel);
    CHECK(channel::create(f.chain, f.payer, f.recipient, 10, 50).error ==
          TxError::PastExpiration);
    CHECK(channel::create(f.chain, f.payer, f.recipient, 10, 49).error ==
          TxError::PastExpiration);
    CHECK(channel::create(f.chain, f.payer, f.recipient, 101, 100).error ==
          TxError::InsufficientBalance);
    CHECK(channel::create(f.chain, f.outsider, f.recipient, 1, 100).error ==
          TxError::InsufficientBalance);
    // Nothing was escrowed or charged along the way.
    CHECK(f.chain.contract_balance(f.payer) == 100);
    CHECK(f.chain.main_balance(f.payer) == 100);
    CHECK(f.chain.count_transactions() == 0);
}

TEST_CASE("two identical creates yield distinct channels") {
    Fixture f;
    ChannelId a = f.open(10, 100);
    ChannelId b = f.open(10, 100);
    CHECK(a != b);
    CHECK(f.chain.channel_ids().size() == 2);
    CHECK(f.chain.contract_balance(f.payer) == 80);
}

TEST_CASE("load grows the escrow and only the owner may do it") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    CHECK(channel::load(f.chain, f.payer, id, 5) == TxError::Ok);
    const channel::ChannelState* state = f.chain.find_channel(id);
    CHECK(state->accumulated_load == 15);
    CHECK(state->escrow == 15);
    CHECK(f.chain.contract_balance(f.payer) == 85);

    CHECK(channel::load(f.chain, f.recipient, id, 5) == TxError::Unauthorized);
    CHECK(channel::load(f.chain, f.payer, ChannelId{}, 5) == TxError::UnknownChannel);
    CHECK(channel::load(f.chain, f.payer, id, 0) == TxError::ZeroAmount);
    CHECK(channel::load(f.chain, f.payer, id, 86) == TxError::InsufficientBalance);
    CHECK(f.chain.find_channel(id)->accumulated_load == 15);
}

TEST_CASE("extend only moves the expiration forward") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    CHECK(channel::extend_expiration(f.chain, f.payer, id, 100) == TxError::NotAnExtension);
    CHECK(channel::extend_expiration(f.chain, f.payer, id, 99) == TxError::NotAnExtension);
    CHECK(channel::extend_expiration(f.chain, f.payer, id, 101) == TxError::Ok);
    CHECK(f.chain.find_channel(id)->expiration == 101);
    CHECK(channel::extend_expiration(f.chain, f.recipient, id, 200) == TxError::Unauthorized);
}

TEST_CASE("abort closes early but never extends the window") {
    Fixture f;
    SUBCASE("a distant expiration is pulled in to now plus grace") {
        ChannelId id = f.open(10, 100);
        f.chain.advance_time(5);
        CHECK(channel::abort(f.chain, f.payer, id, 10) == TxError::Ok);
        const channel::ChannelState* state = f.chain.find_channel(id);
        CHECK(state->status == channel::ChannelStatus::Aborted);
        CHECK(state->expiration == 15);
    }
    SUBCASE("an expiration already inside the grace window stays put") {
        ChannelId id = f.open(10, 8);
        CHECK(channel::abort(f.chain, f.payer, id, 10) == TxError::Ok);
        CHECK(f.chain.find_channel(id)->expiration == 8);
    }
    SUBCASE("only once, and only the owner") {
        ChannelId id = f.open(10, 100);
        CHECK(channel::abort(f.chain, f.recipient, id, 10) == TxError::Unauthorized);
        CHECK(channel::abort(f.chain, f.payer, id, 10) == TxError::Ok);
        CHECK(channel::abort(f.chain, f.payer, id, 10) == TxError::AlreadyAborted);
    }
    SUBCASE("an aborted channel accepts no more loads or extensions") {
        ChannelId id = f.open(10, 100);
        REQUIRE(channel::abort(f.chain, f.payer, id, 10) == TxError::Ok);
        CHECK(channel::load(f.chain, f.payer, id, 5) == TxError::ChannelAborted);
        CHECK(channel::extend_expiration(f.chain, f.payer, id, 200) == TxError::ChannelAborted);
    }
}

TEST_CASE("collect pays out the difference to the last collected total") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    CHECK(channel::collect_payment(f.chain, f.recipient, id, f.signed_total(id, 4, f.payer_kp)) ==
          TxError::Ok);
    CHECK(f.chain.find_channel(id)->collected == 4);
    CHECK(f.chain.find_channel(id)->escrow == 6);
    CHECK(f.chain.contract_balance(f.recipient) == 4);

    // A later total pays only the delta; escrow always equals load - collected.
    CHECK(channel::collect_payment(f.chain, f.recipient, id, f.signed_total(id, 9, f.payer_kp)) ==
          TxError::Ok);
    CHECK(f.chain.find_channel(id)->collected == 9);
    CHECK(f.chain.find_channel(id)->escrow == 1);
    CHECK(f.chain.contract_balance(f.recipient) == 9);
}

TEST_CASE("collect rejects replays, forgeries and over-claims") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    REQUIRE(channel::collect_payment(f.chain, f.recipient, id,
                                     f.signed_total(id, 4, f.payer_kp)) == TxError::Ok);

    SUBCASE("an already-collected total is stale") {
        CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                       f.signed_total(id, 4, f.payer_kp)) ==
              TxError::StaleAmount);
        CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                       f.signed_total(id, 3, f.payer_kp)) ==
              TxError::StaleAmount);
        CHECK(f.chain.contract_balance(f.recipient) == 4);
    }
    SUBCASE("totals beyond the load are rejected") {
        CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                       f.signed_total(id, 11, f.payer_kp)) ==
              TxError::ExceedsLoad);
    }
    SUBCASE("only the registered owner key can authorize payments") {
        CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                       f.signed_total(id, 6, f.outsider_kp)) ==
              TxError::BadSignature);
        // Carrying the right signer label changes nothing: the chain verifies
        // against the key registered for the channel owner.
        crypto::SignedPayload forged = f.signed_total(id, 6, f.outsider_kp);
        forged.signer = f.payer_kp.public_key;
        CHECK(channel::collect_payment(f.chain, f.recipient, id, forged) ==
              TxError::BadSignature);
    }
    SUBCASE("payloads for another channel or of the wrong shape bounce") {
        ChannelId other = f.open(10, 100);
        CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                       f.signed_total(other, 6, f.payer_kp)) ==
              TxError::WrongChannel);
        crypto::SignedPayload runt = f.signed_total(id, 6, f.payer_kp);
        runt.message.pop_back();
        CHECK(channel::collect_payment(f.chain, f.recipient, id, runt) ==
              TxError::WrongChannel);
    }
    SUBCASE("nobody but the recipient may collect") {
        CHECK(channel::collect_payment(f.chain, f.payer, id,
                                       f.signed_total(id, 6, f.payer_kp)) ==
              TxError::Unauthorized);
        CHECK(channel::collect_payment(f.chain, f.outsider, id,
                                       f.signed_total(id, 6, f.payer_kp)) ==
              TxError::Unauthorized);
    }
}

TEST_CASE("collect works strictly before expiration, unload from expiration on") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    f.chain.advance_time(99);
    CHECK(channel::collect_payment(f.chain, f.recipient, id, f.signed_total(id, 4, f.payer_kp)) ==
          TxError::Ok);
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::ChannelStillOpen);

    f.chain.advance_time(1); // now == expiration
    CHECK(channel::collect_payment(f.chain, f.recipient, id, f.signed_total(id, 9, f.payer_kp)) ==
          TxError::Expired);
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::Ok);
    const channel::ChannelState* state = f.chain.find_channel(id);
    CHECK(state->escrow == 0);
    CHECK(state->unloaded);
    CHECK(state->collected == 4);
    CHECK(f.chain.contract_balance(f.payer) == 96); // 100 - 10 escrowed + 6 back
}

TEST_CASE("expiration is checked before the payload on collect") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    f.chain.advance_time(100);
    // Stale, oversized or forged payloads all report Expired once the
    // window is closed; the collect path stops at the clock.
    CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                   f.signed_total(id, 0, f.payer_kp)) == TxError::Expired);
    CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                   f.signed_total(id, 99, f.outsider_kp)) == TxError::Expired);
    // But authorization is checked before the clock.
    CHECK(channel::collect_payment(f.chain, f.outsider, id,
                                   f.signed_total(id, 4, f.payer_kp)) == TxError::Unauthorized);
}

TEST_CASE("unload requires ownership and happens once") {
    Fixture f;
    ChannelId id = f.open(10, 5);
    f.chain.advance_time(5);
    CHECK(channel::unload(f.chain, f.recipient, id) == TxError::Unauthorized);
    CHECK(channel::unload(f.chain, f.payer, ChannelId{}) == TxError::UnknownChannel);
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::Ok);

    // Everything after unload lands on AlreadyUnloaded.
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::AlreadyUnloaded);
    CHECK(channel::load(f.chain, f.payer, id, 5) == TxError::AlreadyUnloaded);
    CHECK(channel::extend_expiration(f.chain, f.payer, id, 200) == TxError::AlreadyUnloaded);
    CHECK(channel::abort(f.chain, f.payer, id, 10) == TxError::AlreadyUnloaded);
    CHECK(channel::collect_payment(f.chain, f.recipient, id,
                                   f.signed_total(id, 4, f.payer_kp)) ==
          TxError::AlreadyUnloaded);
}

TEST_CASE("aborting then waiting out the grace period returns the remainder") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    REQUIRE(channel::collect_payment(f.chain, f.recipient, id,
                                     f.signed_total(id, 3, f.payer_kp)) == TxError::Ok);
    f.chain.advance_time(2);
    REQUIRE(channel::abort(f.chain, f.payer, id, 10) == TxError::Ok);
    CHECK(f.chain.find_channel(id)->expiration == 12);

    // Collect still works inside the grace window.
    f.chain.advance_time(9);
    CHECK(channel::collect_payment(f.chain, f.recipient, id, f.signed_total(id, 5, f.payer_kp)) ==
          TxError::Ok);
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::ChannelStillOpen);

    f.chain.advance_time(1);
    CHECK(channel::unload(f.chain, f.payer, id) == TxError::Ok);
    CHECK(f.chain.contract_balance(f.payer) == 95);    // 10 in, 5 back
    CHECK(f.chain.contract_balance(f.recipient) == 5);
    f.chain.assert_conservation();
}

TEST_CASE("a channel state line is compact and complete") {
    Fixture f;
    ChannelId id = f.open(10, 100);
    std::string line = channel::dump(*f.chain.find_channel(id));
    CHECK(line == to_hex(id.id) + " 10 0 100 active");
}

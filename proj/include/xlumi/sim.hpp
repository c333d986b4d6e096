// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <functional>

#include "xlumi/common.hpp"
#include "xlumi/crypto.hpp"
#include "xlumi/ledger.hpp"
#include "xlumi/offchain.hpp"
#include "xlumi/scenario.hpp"
#include "xlumi/tx.hpp"

namespace xlumi::sim {

enum class SchemeKind {
    Ed25519,
    KeyedHash, // test-only scheme, much faster
};

const crypto::SignatureScheme& scheme_for(SchemeKind kind);
std::string_view to_string(SchemeKind kind);

struct SimConfig {
    Amount fee = 1;
    Timestamp grace = 10;
    std::uint64_t seed = 0;
    SchemeKind scheme = SchemeKind::Ed25519;

    // Genesis balances.  Channel funds come out of the contract balance, so
    // scenarios need no explicit deposits unless they test deposits.
    Amount payer_main = 1000;
    Amount payer_contract = 1000;
    Amount recipient_main = 1000;
    Amount recipient_contract = 0;
    Amount adversary_main = 1000;
    Amount adversary_contract = 0;
};

/// A protocol safety property failed while replaying a scenario.  This is a
/// bug in the implementation, never a legal outcome of a script.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One row per applied event: on-chain load (x), on-chain collected (y) and
// the ground-truth accumulated payment (z): the highest payer-signed total
// the current load can cover.  x >= z >= y holds on every row.
struct Sample {
    Timestamp time = 0;
    Amount x = 0;
    Amount y = 0;
    Amount z = 0;
};

struct Metrics {
    std::vector<Sample> series;
    std::uint64_t onchain_tx = 0;  // accepted, any sender
    std::uint64_t offchain_tx = 0; // payment messages issued by the payer
    std::int64_t fees_saved = 0;   // offchain_tx - onchain_tx
    std::uint64_t payer_onchain = 0;
    std::uint64_t recipient_onchain = 0;
    std::uint64_t adversary_onchain = 0;
    Amount payer_fees = 0;
    Amount recipient_fees = 0;
    Amount adversary_fees = 0;
    std::map<TxKind, std::uint64_t> payer_kinds; // accepted payer txs by kind
};

struct RejectionNote {
    int line = 0;
    Timestamp time = 0;
    Actor actor = Actor::Payer;
    Action action = Action::Create;
    bool onchain = false; // false: rejected by a session before any tx
    TxError error = TxError::Ok;
};

struct LossSnapshot {
    Timestamp time = 0;
    Amount z = 0;
    Amount y = 0;
};

struct RunResult {
    explicit RunResult(ledger::Ledger initial) : chain(std::move(initial)) {}

    ledger::Ledger chain; // final state
    Metrics metrics;
    std::string transcript;
    crypto::PublicKey payer_key{};
    Address payer_addr{};
    Address recipient_addr{};
    Address adversary_addr{};
    std::optional<ChannelId> channel;
    std::vector<offchain::PaymentMessage> messages; // every payer-signed message
    std::vector<RejectionNote> rejections;
    std::optional<LossSnapshot> loss; // first drop_message, if any
    Amount final_signed_best = 0;     // z of the last sample
    std::size_t recipient_stored = 0; // signatures held at the end, 0 or 1
};

/// Called after each applied event, once its invariant checks passed.
using Observer = std::function<void(const ScenarioEvent& event, const ledger::Ledger& chain,
                                    const offchain::RecipientSession* recipient)>;

// Replay a parsed script.  Deterministic: identical (events, config) produce
// byte-identical transcripts.  Throws InvariantViolation if any safety
// property breaks mid-run.
RunResult run_scenario(std::span<const ScenarioEvent> events, const SimConfig& config,
                       const Observer& observer = {});

//------------------------------------------------------------------------------
// Adversarial harness

enum class Attack {
    ReplayOld,    // resubmit settled payment states on chain
    OverLoadSign, // payer signs totals beyond the loaded amount
    Forge,        // third party fabricates payment signatures
    EarlyAbort,   // payer aborts while payments are uncollected
    DataLoss,     // recipient loses its stored signature
};

std::string_view to_string(Attack attack);

struct AttackResult {
    explicit AttackResult(RunResult completed) : run(std::move(completed)) {}

    RunResult run;
    bool safe = false;
    std::string detail;
    Amount expected_loss = 0; // data loss only: uncollected z - y at the drop
    Amount measured_loss = 0;
};

AttackResult run_adversarial(std::span<const ScenarioEvent> events, Attack attack,
                             const SimConfig& config);

//------------------------------------------------------------------------------
// Punishment-channel baseline

/// The baseline channel has no equivalent for this scenario action.
struct UnsupportedEvent : std::runtime_error {
    int line;
    UnsupportedEvent(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Cost model for a bidirectional punishment-based channel replaying the same
// script: every state update needs a fresh transitory key exchanged both
// ways, and every superseded state's key must be kept forever to punish a
// cheat.  Interaction counts per event are fixed constants of the model.
struct BaselineMetrics {
    std::uint64_t payments = 0;
    std::uint64_t onchain_tx = 0;             // funding and settlement
    std::uint64_t setup_interactions = 0;     // wallet, refund and fund exchange
    std::uint64_t payment_interactions = 0;   // sign, countersign, key handover
    std::uint64_t close_interactions = 0;     // broadcast plus final check
    std::uint64_t stored_transitory_keys = 0; // one per superseded state
    bool punished = false;

    std::uint64_t total_interactions() const {
        return setup_interactions + payment_interactions + close_interactions;
    }
};

BaselineMetrics run_punishment_baseline(std::span<const ScenarioEvent> events);

//------------------------------------------------------------------------------
// Usage levels

// How much of the on-chain interface a payer exercised:
//   level 1: create only (failure tolerated, payments may be lost),
//   level 2: create, abort and unload,
//   level 3: level 2 plus any number of loads and extends.
bool usage_level_check(const Metrics& metrics, int level);

//------------------------------------------------------------------------------
// Deterministic script generators

/// Valid honest scripts: every generated event is accepted when replayed.
std::vector<ScenarioEvent> generate_honest_script(std::uint64_t seed, const SimConfig& config);

/// Honest base plus injected invalid and adversarial events; replay must
/// reject the bad ones and keep every invariant.
std::vector<ScenarioEvent> generate_mixed_script(std::uint64_t seed, const SimConfig& config);

/// Scripted attack of the given family, randomized in shape.
std::vector<ScenarioEvent> generate_attack_script(Attack attack, std::uint64_t seed,
                                                  const SimConfig& config);

} // namespace xlumi::sim

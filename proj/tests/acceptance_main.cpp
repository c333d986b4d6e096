// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0

// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit code is the
// number of failures.  Every numeric check is exact integer equality; the
// only tolerances are the wall-clock budgets pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "xlumi/report.hpp"
#include "xlumi/sim.hpp"

using namespace xlumi;
using sim::Attack;

namespace {

constexpr double example_budget_s = 1.0;
constexpr double fuzz_budget_s = 60.0;
constexpr double adversarial_budget_s = 30.0;

std::vector<sim::ScenarioEvent> bundled(const std::string& name) {
    return sim::load_script(std::string(XLUMI_SCENARIO_DIR) + "/" + name);
}

sim::SimConfig fast_config(std::uint64_t seed = 0) {
    sim::SimConfig cfg;
    cfg.scheme = sim::SchemeKind::KeyedHash;
    cfg.seed = seed;
    return cfg;
}

// Failure accumulator: collects the first mismatch and ignores the rest.
struct Expect {
    std::string failure;

    template <typename T, typename U>
    void eq(std::string_view what, const T& expected, const U& actual) {
        if (!failure.empty() || expected == static_cast<T>(actual))
            return;
        std::ostringstream out;
        out << what << ": expected " << expected << ", got " << actual;
        failure = out.str();
    }

    void truth(std::string_view what, bool ok) {
        if (failure.empty() && !ok)
            failure = std::string(what);
    }
};

std::string check_two_payment_example() {
    Expect e;
    sim::RunResult run = sim::run_scenario(bundled("two_payments.scn"), sim::SimConfig{});

    const channel::ChannelState* state =
        run.channel ? run.chain.find_channel(*run.channel) : nullptr;
    e.truth("channel exists", state != nullptr);
    if (!e.failure.empty())
        return e.failure;
    e.eq("final load", Amount(10), state->accumulated_load);
    e.eq("final collected", Amount(2), state->collected);
    e.eq("recipient contract balance", Amount(2),
         run.chain.contract_balance(run.recipient_addr));

    // Off-chain state tables: totals 0 -> 1 -> 2, remainder 10 -> 9 -> 8.
    e.eq("messages issued", std::size_t(2), run.messages.size());
    if (!e.failure.empty())
        return e.failure;
    Amount x = state->accumulated_load;
    Amount totals[3] = {0, run.messages[0].accumulated_amount,
                        run.messages[1].accumulated_amount};
    Amount want_totals[3] = {0, 1, 2};
    Amount want_left[3] = {10, 9, 8};
    for (int i = 0; i < 3; ++i) {
        e.eq("payer table row", want_totals[i], totals[i]);
        e.eq("recipient table row", want_left[i], x - totals[i]);
    }

    e.eq("series rows", std::size_t(4), run.metrics.series.size());
    if (!e.failure.empty())
        return e.failure;
    sim::Sample want[4] = {{0, 10, 0, 0}, {1, 10, 0, 1}, {2, 10, 0, 2}, {2, 10, 2, 2}};
    for (int i = 0; i < 4; ++i) {
        e.eq("series time", want[i].time, run.metrics.series[i].time);
        e.eq("series x", want[i].x, run.metrics.series[i].x);
        e.eq("series y", want[i].y, run.metrics.series[i].y);
        e.eq("series z", want[i].z, run.metrics.series[i].z);
    }
    return e.failure;
}

std::string check_lifecycle_fees() {
    Expect e;
    sim::RunResult run = sim::run_scenario(bundled("full_lifecycle.scn"), sim::SimConfig{});
    e.eq("onchain_tx", std::uint64_t(7), run.metrics.onchain_tx);
    e.eq("offchain_tx", std::uint64_t(18), run.metrics.offchain_tx);
    e.eq("fees_saved", std::int64_t(11), run.metrics.fees_saved);
    e.eq("payer onchain", std::uint64_t(5), run.metrics.payer_onchain);
    e.eq("recipient onchain", std::uint64_t(2), run.metrics.recipient_onchain);

    const channel::ChannelState* state =
        run.channel ? run.chain.find_channel(*run.channel) : nullptr;
    e.truth("channel exists", state != nullptr);
    if (!e.failure.empty())
        return e.failure;
    e.eq("payer recovery", Amount(2), state->accumulated_load - state->collected);
    e.eq("recipient total", Amount(18), state->collected);
    e.truth("recovery paid out", state->unloaded && state->escrow == 0);
    e.eq("recipient banked", Amount(18), run.chain.contract_balance(run.recipient_addr));
    return e.failure;
}

std::string check_usage_levels() {
    Expect e;
    sim::RunResult create_only = sim::run_scenario(bundled("create_only.scn"), fast_config());
    e.eq("create-only payer txs", std::uint64_t(1), create_only.metrics.payer_onchain);
    e.truth("create-only reaches level 1", sim::usage_level_check(create_only.metrics, 1));
    e.truth("create-only is not level 2", !sim::usage_level_check(create_only.metrics, 2));

    sim::RunResult settled = sim::run_scenario(bundled("abort_unload.scn"), fast_config());
    e.eq("create+abort+unload payer txs", std::uint64_t(3), settled.metrics.payer_onchain);
    e.truth("create+abort+unload reaches level 2", sim::usage_level_check(settled.metrics, 2));
    e.truth("create+abort+unload is not level 1", !sim::usage_level_check(settled.metrics, 1));
    return e.failure;
}

std::string check_invariant_fuzz() {
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        sim::SimConfig cfg = fast_config(seed);
        try {
            (void)sim::run_scenario(sim::generate_mixed_script(seed, cfg), cfg);
        } catch (const std::exception& ex) {
            std::ostringstream out;
            out << "seed " << seed << ": " << ex.what();
            return out.str();
        }
    }
    return {};
}

std::string check_adversarial_suite() {
    for (Attack attack : {Attack::ReplayOld, Attack::OverLoadSign, Attack::Forge,
                          Attack::EarlyAbort, Attack::DataLoss}) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            sim::SimConfig cfg = fast_config(seed);
            sim::AttackResult result =
                sim::run_adversarial(sim::generate_attack_script(attack, seed, cfg), attack, cfg);
            if (!result.safe) {
                std::ostringstream out;
                out << sim::to_string(attack) << " seed " << seed << ": " << result.detail;
                return out.str();
            }
        }
    }
    return {};
}

std::string check_oracle_equivalence() {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        sim::SimConfig cfg = fast_config(seed);
        auto events = sim::generate_honest_script(seed, cfg);
        testing::OracleState want = testing::replay_honest(events, cfg);
        std::string mismatch = testing::compare_run(want, sim::run_scenario(events, cfg));
        if (!mismatch.empty()) {
            std::ostringstream out;
            out << "seed " << seed << ": " << mismatch;
            return out.str();
        }
    }
    return {};
}

std::string check_storage_claim() {
    Expect e;
    for (std::uint64_t payments : {std::uint64_t(1), std::uint64_t(18), std::uint64_t(100)}) {
        std::ostringstream script;
        script << "at 0 payer create amount=" << payments << " expire=" << payments + 100 << '\n';
        for (std::uint64_t i = 1; i <= payments; ++i)
            script << "at " << i << " payer pay amount=1\n";
        script << "at " << payments + 1 << " payer abort\n";
        auto events = sim::parse_script(script.str());

        sim::RunResult run = sim::run_scenario(events, fast_config());
        e.eq("stored signatures", std::size_t(1), run.recipient_stored);

        sim::BaselineMetrics baseline = sim::run_punishment_baseline(events);
        e.eq("baseline payments", payments, baseline.payments);
        e.eq("baseline transitory keys", payments - 1, baseline.stored_transitory_keys);
        if (!e.failure.empty()) {
            e.failure += " (payments=" + std::to_string(payments) + ")";
            break;
        }
    }
    return e.failure;
}

std::string check_signature_properties() {
    for (const crypto::SignatureScheme* scheme :
         {&crypto::ed25519(), &crypto::keyed_hash()}) {
        std::mt19937_64 rng(1);
        Bytes32 seed_a{};
        Bytes32 seed_b{{1}};
        crypto::KeyPair signer = scheme->generate_keypair(seed_a);
        crypto::KeyPair other = scheme->generate_keypair(seed_b);
        for (int i = 0; i < 10000; ++i) {
            Bytes message(1 + rng() % 64);
            for (auto& b : message)
                b = static_cast<std::uint8_t>(rng());
            crypto::Signature sig = scheme->sign(signer.secret, message);
            auto fail = [&](const char* what) {
                std::ostringstream out;
                out << scheme->name() << " case " << i << ": " << what;
                return out.str();
            };
            if (!scheme->verify(signer.public_key, message, sig))
                return fail("verify-after-sign");

            Bytes flipped = message;
            flipped[rng() % flipped.size()] ^=
                static_cast<std::uint8_t>(1u << (rng() % 8));
            if (scheme->verify(signer.public_key, flipped, sig))
                return fail("message bit-flip accepted");

            crypto::Signature broken = sig;
            broken.bytes[rng() % broken.bytes.size()] ^=
                static_cast<std::uint8_t>(1u << (rng() % 8));
            if (scheme->verify(signer.public_key, message, broken))
                return fail("signature bit-flip accepted");

            if (scheme->verify(other.public_key, message, sig))
                return fail("cross-key accepted");
        }
    }
    return {};
}

struct Criterion {
    int id;
    const char* description;
    double budget_s; // 0: untimed
    std::function<std::string()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "two-payment worked example replays with exact totals and tables",
         example_budget_s, check_two_payment_example},
        {2, "full lifecycle saves 11 fees across 7 on-chain and 18 off-chain moves",
         example_budget_s, check_lifecycle_fees},
        {3, "usage levels 1 and 2 hold with exactly 1 and 3 payer transactions", 0,
         check_usage_levels},
        {4, "10000 mixed scripts replay with zero invariant violations", fuzz_budget_s,
         check_invariant_fuzz},
        {5, "five attack families stay defended across 1000 seeds each",
         adversarial_budget_s, check_adversarial_suite},
        {6, "1000 honest scripts match the independent balance oracle", 0,
         check_oracle_equivalence},
        {7, "recipient stores 1 signature where the baseline stores n-1 keys", 0,
         check_storage_claim},
        {8, "signature properties hold over 10000 randomized cases per backend", 0,
         check_signature_properties},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            failure = criterion.run();
        } catch (const std::exception& ex) {
            failure = std::string("exception: ") + ex.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && criterion.budget_s > 0 && elapsed > criterion.budget_s) {
            std::ostringstream out;
            out << "over budget: " << elapsed << "s > " << criterion.budget_s << "s";
            failure = out.str();
        }
        if (failure.empty()) {
            std::printf("[PASS] %d %s (%.2fs)\n", criterion.id, criterion.description, elapsed);
        } else {
            std::printf("[FAIL] %d %s (%.2fs): %s\n", criterion.id, criterion.description,
                        elapsed, failure.c_str());
            ++failures;
        }
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures;
}

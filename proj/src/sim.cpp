// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/sim.hpp"

#include <algorithm>
#include <sstream>

namespace xlumi::sim {

namespace {

Bytes32 derive_seed(std::uint64_t seed, std::string_view label) {
    Bytes pre;
    pre.reserve(8 + label.size());
    for (int i = 0; i < 8; ++i)
        pre.push_back(static_cast<std::uint8_t>(seed >> (56 - 8 * i)));
    pre.insert(pre.end(), label.begin(), label.end());
    return crypto::sha256(pre);
}

// Replays one script against a fresh chain.  The engine plays all three
// parties: the honest payer and recipient run their sessions by the book,
// while adversarial events bypass them to hit the protocol from outside.
class Engine {
  public:
    explicit Engine(const SimConfig& config)
        : cfg_(config), scheme_(scheme_for(config.scheme)), out_{ledger::Ledger(scheme_, config.fee)},
          payer_kp_(scheme_.generate_keypair(derive_seed(config.seed, "payer-key"))),
          recipient_kp_(scheme_.generate_keypair(derive_seed(config.seed, "recipient-key"))),
          adversary_kp_(scheme_.generate_keypair(derive_seed(config.seed, "adversary-key"))) {
        payer_addr_ = out_.chain.create_account(payer_kp_.public_key, cfg_.payer_main,
                                                cfg_.payer_contract);
        recipient_addr_ = out_.chain.create_account(recipient_kp_.public_key, cfg_.recipient_main,
                                                    cfg_.recipient_contract);
        adversary_addr_ = out_.chain.create_account(adversary_kp_.public_key, cfg_.adversary_main,
                                                    cfg_.adversary_contract);
        out_.payer_key = payer_kp_.public_key;
        out_.payer_addr = payer_addr_;
        out_.recipient_addr = recipient_addr_;
        out_.adversary_addr = adversary_addr_;
        log_ << "# scheme=" << scheme_.name() << " fee=" << cfg_.fee << " grace=" << cfg_.grace
             << " seed=" << cfg_.seed << '\n';
        log_ << "# payer_pk=" << to_hex(payer_kp_.public_key.bytes) << '\n';
        log_ << "# payer=" << to_hex(payer_addr_.id) << " recipient=" << to_hex(recipient_addr_.id)
             << " adversary=" << to_hex(adversary_addr_.id) << '\n';
    }

    RunResult run(std::span<const ScenarioEvent> events, const Observer& observer) {
        for (const ScenarioEvent& event : events) {
            out_.chain.advance_time(event.time - out_.chain.now());
            begin_line(event);
            apply(event);
            log_ << '\n';
            check_invariants(event);
            if (observer)
                observer(event, out_.chain, recipient_ ? &*recipient_ : nullptr);
        }
        out_.metrics.fees_saved = static_cast<std::int64_t>(out_.metrics.offchain_tx) -
                                  static_cast<std::int64_t>(out_.metrics.onchain_tx);
        out_.final_signed_best = current_z();
        out_.recipient_stored = recipient_ ? recipient_->stored_signatures() : 0;
        out_.transcript = log_.str();
        return std::move(out_);
    }

  private:
    Address addr_of(Actor actor) const {
        switch (actor) {
        case Actor::Payer:
            return payer_addr_;
        case Actor::Recipient:
            return recipient_addr_;
        case Actor::Adversary:
            return adversary_addr_;
        }
        return payer_addr_;
    }

    const channel::ChannelState* channel_state() const {
        return out_.channel ? out_.chain.find_channel(*out_.channel) : nullptr;
    }

    Amount current_x() const {
        const channel::ChannelState* state = channel_state();
        return state ? state->accumulated_load : 0;
    }

    Amount current_y() const {
        const channel::ChannelState* state = channel_state();
        return state ? state->collected : 0;
    }

    // Ground-truth accumulated payment: the largest total the payer's key has
    // signed that the current load can actually cover.
    Amount current_z() const {
        Amount x = current_x();
        Amount z = 0;
        for (Amount total : signed_totals_)
            if (total <= x && total > z)
                z = total;
        return z;
    }

    void begin_line(const ScenarioEvent& event) {
        log_ << "t=" << event.time << ' ' << to_string(event.actor) << ' '
             << to_string(event.action);
        for (const auto& [key, value] : event.params)
            log_ << ' ' << key << '=' << value;
    }

    void record_tx(const ScenarioEvent& event, Actor sender, TxKind kind, TxError err) {
        if (err == TxError::Ok) {
            Metrics& m = out_.metrics;
            ++m.onchain_tx;
            switch (sender) {
            case Actor::Payer:
                ++m.payer_onchain;
                m.payer_fees += cfg_.fee;
                ++m.payer_kinds[kind];
                break;
            case Actor::Recipient:
                ++m.recipient_onchain;
                m.recipient_fees += cfg_.fee;
                break;
            case Actor::Adversary:
                ++m.adversary_onchain;
                m.adversary_fees += cfg_.fee;
                break;
            }
        } else {
            out_.rejections.push_back(
                {event.line, event.time, event.actor, event.action, true, err});
        }
    }

    void note_session_rejection(const ScenarioEvent& event, TxError err) {
        out_.rejections.push_back({event.line, event.time, event.actor, event.action, false, err});
    }

    void log_outcome(TxError err) {
        if (err == TxError::Ok)
            log_ << " accepted";
        else
            log_ << " rejected:" << to_string(err);
    }

    void apply(const ScenarioEvent& event) {
        switch (event.action) {
        case Action::Create:
            do_create(event);
            return;
        case Action::Deposit: {
            TxError err = out_.chain.deposit_to_contract(addr_of(event.actor), event.param("amount"));
            record_tx(event, event.actor, TxKind::Deposit, err);
            log_ << " ->";
            log_outcome(err);
            return;
        }
        case Action::Withdraw: {
            TxError err =
                out_.chain.withdraw_from_contract(addr_of(event.actor), event.param("amount"));
            record_tx(event, event.actor, TxKind::Withdraw, err);
            log_ << " ->";
            log_outcome(err);
            return;
        }
        default:
            break;
        }

        // Everything below references the channel; a rejected create leaves
        // nothing to act on.
        if (!out_.channel) {
            log_ << " -> skipped:no_channel";
            return;
        }

        switch (event.action) {
        case Action::Load: {
            TxError err =
                channel::load(out_.chain, addr_of(event.actor), *out_.channel, event.param("amount"));
            record_tx(event, event.actor, TxKind::Load, err);
            if (err == TxError::Ok)
                payer_->sync_load(channel_state()->accumulated_load);
            log_ << " ->";
            log_outcome(err);
            return;
        }
        case Action::Extend: {
            TxError err = channel::extend_expiration(out_.chain, addr_of(event.actor),
                                                     *out_.channel, event.param("expire"));
            record_tx(event, event.actor, TxKind::Extend, err);
            log_ << " ->";
            log_outcome(err);
            return;
        }
        case Action::Abort: {
            TxError err =
                channel::abort(out_.chain, addr_of(event.actor), *out_.channel, cfg_.grace);
            record_tx(event, event.actor, TxKind::Abort, err);
            log_ << " ->";
            log_outcome(err);
            if (err == TxError::Ok)
                log_ << " expiration=" << channel_state()->expiration;
            return;
        }
        case Action::Unload: {
            TxError err = channel::unload(out_.chain, addr_of(event.actor), *out_.channel);
            record_tx(event, event.actor, TxKind::Unload, err);
            log_ << " ->";
            log_outcome(err);
            return;
        }
        case Action::Pay:
            do_pay(event);
            return;
        case Action::Collect:
            log_ << " ->";
            do_collect(event, event.actor);
            return;
        case Action::Check: {
            auto action = recipient_->monitor(out_.chain, cfg_.grace);
            if (action == offchain::RecipientSession::Action::CollectNow) {
                log_ << " -> collect_now";
                do_collect(event, Actor::Recipient);
            } else {
                log_ << " -> none";
            }
            return;
        }
        case Action::DropMessage: {
            if (!out_.loss)
                out_.loss = LossSnapshot{event.time, current_z(), current_y()};
            recipient_->drop_storage();
            log_ << " -> dropped";
            return;
        }
        case Action::ReplayOld:
            do_replay(event);
            return;
        case Action::Forge:
            do_forge(event);
            return;
        default:
            return;
        }
    }

    void do_create(const ScenarioEvent& event) {
        Amount amount = event.param("amount");
        channel::CreateResult result = channel::create(out_.chain, payer_addr_, recipient_addr_,
                                                       amount, event.param("expire"));
        record_tx(event, Actor::Payer, TxKind::Create, result.error);
        if (result.error == TxError::Ok) {
            out_.channel = result.id;
            payer_.emplace(scheme_, result.id, payer_kp_, amount);
            recipient_.emplace(scheme_, result.id, payer_kp_.public_key);
            log_ << " -> accepted channel=" << to_hex(result.id.id);
        } else {
            log_ << " ->";
            log_outcome(result.error);
        }
    }

    void do_pay(const ScenarioEvent& event) {
        bool force = event.opt_param("force").value_or(0) != 0;
        offchain::PaymentMessage message;
        if (force) {
            // Sign past everything signed so far, session bookkeeping be
            // damned.  Models a payer whose wallet lies about the load.
            Amount base = signed_totals_.empty()
                              ? 0
                              : *std::max_element(signed_totals_.begin(), signed_totals_.end());
            Amount total = base + event.param("amount");
            message.channel_id = *out_.channel;
            message.accumulated_amount = total;
            auto payload = crypto::encode_payment(*out_.channel, total);
            message.signature = scheme_.sign(payer_kp_.secret, payload);
        } else {
            auto [err, signed_message] = payer_->pay(event.param("amount"));
            if (err != TxError::Ok) {
                note_session_rejection(event, err);
                log_ << " -> refused:" << to_string(err);
                return;
            }
            message = signed_message;
        }
        signed_totals_.push_back(message.accumulated_amount);
        out_.messages.push_back(message);
        ++out_.metrics.offchain_tx;
        TxError err = recipient_->accept(out_.chain, message);
        if (err != TxError::Ok)
            note_session_rejection(event, err);
        log_ << " -> total=" << message.accumulated_amount << " accept=" << to_string(err)
             << " msg=" << to_hex(offchain::serialize(message));
    }

    void do_collect(const ScenarioEvent& event, Actor sender) {
        if (!recipient_->best_message()) {
            log_ << " no_message";
            return;
        }
        const offchain::PaymentMessage& best = *recipient_->best_message();
        auto payload = offchain::to_signed_payload(best, payer_kp_.public_key);
        TxError err = channel::collect_payment(out_.chain, addr_of(sender), *out_.channel, payload);
        record_tx(event, sender, TxKind::Collect, err);
        log_ << " total=" << best.accumulated_amount;
        log_outcome(err);
    }

    void do_replay(const ScenarioEvent& event) {
        std::uint64_t index = event.opt_param("msg").value_or(0);
        if (index >= out_.messages.size()) {
            log_ << " -> no_message";
            return;
        }
        // A compromised recipient resubmits an old, already-settled state.
        const offchain::PaymentMessage& message = out_.messages[index];
        auto payload = offchain::to_signed_payload(message, payer_kp_.public_key);
        TxError err =
            channel::collect_payment(out_.chain, recipient_addr_, *out_.channel, payload);
        record_tx(event, Actor::Recipient, TxKind::Collect, err);
        log_ << " -> total=" << message.accumulated_amount;
        log_outcome(err);
    }

    void do_forge(const ScenarioEvent& event) {
        Amount amount = event.opt_param("amount").value_or(current_z() + 1);
        offchain::PaymentMessage message;
        message.channel_id = *out_.channel;
        message.accumulated_amount = amount;
        auto payload_bytes = crypto::encode_payment(*out_.channel, amount);
        message.signature = scheme_.sign(adversary_kp_.secret, payload_bytes);

        TxError session_err = recipient_->accept(out_.chain, message);
        if (session_err != TxError::Ok)
            note_session_rejection(event, session_err);
        log_ << " -> total=" << amount << " accept=" << to_string(session_err);

        if (event.opt_param("submit").value_or(0) != 0) {
            auto payload = offchain::to_signed_payload(message, adversary_kp_.public_key);
            TxError err =
                channel::collect_payment(out_.chain, recipient_addr_, *out_.channel, payload);
            record_tx(event, Actor::Recipient, TxKind::Collect, err);
            log_ << " onchain=" << (err == TxError::Ok ? std::string("accepted")
                                                       : "rejected:" + std::string(to_string(err)));
        }
    }

    void check_invariants(const ScenarioEvent& event) {
        const channel::ChannelState* state = channel_state();
        Amount x = state ? state->accumulated_load : 0;
        Amount y = state ? state->collected : 0;
        Amount z = current_z();
        auto fail = [&](const std::string& what) {
            std::ostringstream msg;
            msg << "line " << event.line << " t=" << event.time << ": " << what << " (x=" << x
                << " y=" << y << " z=" << z << ")";
            throw InvariantViolation(msg.str());
        };
        if (y > z || z > x)
            fail("accumulated totals out of order");
        if (x < prev_x_ || y < prev_y_ || z < prev_z_)
            fail("accumulated totals decreased");
        if (state) {
            Amount want = state->unloaded ? 0 : x - y;
            if (state->escrow != want)
                fail("escrow does not match load minus collected");
        }
        if (recipient_ && recipient_->best_message()) {
            Amount best = recipient_->best_message()->accumulated_amount;
            if (best > x)
                fail("stored message exceeds the on-chain load");
            if (std::find(signed_totals_.begin(), signed_totals_.end(), best) ==
                signed_totals_.end())
                fail("stored message was never signed by the payer");
        }
        try {
            out_.chain.assert_conservation();
        } catch (const ledger::LedgerInvariantError& e) {
            fail(e.what());
        }
        prev_x_ = x;
        prev_y_ = y;
        prev_z_ = z;
        out_.metrics.series.push_back({event.time, x, y, z});
    }

    const SimConfig& cfg_;
    const crypto::SignatureScheme& scheme_;
    RunResult out_;
    std::ostringstream log_;
    crypto::KeyPair payer_kp_;
    crypto::KeyPair recipient_kp_;
    crypto::KeyPair adversary_kp_;
    Address payer_addr_{};
    Address recipient_addr_{};
    Address adversary_addr_{};
    std::optional<offchain::PayerSession> payer_;
    std::optional<offchain::RecipientSession> recipient_;
    std::vector<Amount> signed_totals_;
    Amount prev_x_ = 0;
    Amount prev_y_ = 0;
    Amount prev_z_ = 0;
};

} // namespace

const crypto::SignatureScheme& scheme_for(SchemeKind kind) {
    return kind == SchemeKind::Ed25519 ? crypto::ed25519() : crypto::keyed_hash();
}

std::string_view to_string(SchemeKind kind) {
    return kind == SchemeKind::Ed25519 ? "ed25519" : "keyed-hash";
}

std::string_view to_string(Attack attack) {
    switch (attack) {
    case Attack::ReplayOld:
        return "replay_old";
    case Attack::OverLoadSign:
        return "over_load_sign";
    case Attack::Forge:
        return "forge";
    case Attack::EarlyAbort:
        return "early_abort";
    case Attack::DataLoss:
        return "data_loss";
    }
    return "unknown";
}

RunResult run_scenario(std::span<const ScenarioEvent> events, const SimConfig& config,
                       const Observer& observer) {
    Engine engine(config);
    return engine.run(events, observer);
}

AttackResult run_adversarial(std::span<const ScenarioEvent> events, Attack attack,
                             const SimConfig& config) {
    AttackResult result{run_scenario(events, config)};
    const RunResult& run = result.run;

    auto events_where = [&](auto&& pred) {
        std::size_t n = 0;
        for (const ScenarioEvent& event : events)
            if (pred(event))
                ++n;
        return n;
    };
    auto rejections_where = [&](Action action, bool onchain, TxError err) {
        std::size_t n = 0;
        for (const RejectionNote& note : run.rejections)
            if (note.action == action && note.onchain == onchain && note.error == err)
                ++n;
        return n;
    };
    Amount final_y = 0;
    if (run.channel)
        if (const channel::ChannelState* state = run.chain.find_channel(*run.channel))
            final_y = state->collected;

    std::ostringstream detail;
    switch (attack) {
    case Attack::ReplayOld: {
        std::size_t replays =
            events_where([](const ScenarioEvent& e) { return e.action == Action::ReplayOld; });
        std::size_t rejected = rejections_where(Action::ReplayOld, true, TxError::StaleAmount);
        result.safe = replays > 0 && rejected == replays;
        detail << rejected << "/" << replays << " replayed states rejected as stale";
        break;
    }
    case Attack::OverLoadSign: {
        std::size_t forced = events_where([](const ScenarioEvent& e) {
            return e.action == Action::Pay && e.opt_param("force").value_or(0) != 0;
        });
        std::size_t rejected = rejections_where(Action::Pay, false, TxError::ExceedsLoad);
        result.safe = forced > 0 && rejected == forced;
        detail << rejected << "/" << forced << " over-load totals refused by the recipient";
        break;
    }
    case Attack::Forge: {
        std::size_t forges =
            events_where([](const ScenarioEvent& e) { return e.action == Action::Forge; });
        std::size_t submitted = events_where([](const ScenarioEvent& e) {
            return e.action == Action::Forge && e.opt_param("submit").value_or(0) != 0;
        });
        std::size_t session_rejected = rejections_where(Action::Forge, false, TxError::BadSignature);
        std::size_t onchain_rejected = rejections_where(Action::Forge, true, TxError::BadSignature);
        result.safe =
            forges > 0 && session_rejected == forges && onchain_rejected == submitted;
        detail << session_rejected << "/" << forges << " forgeries refused, " << onchain_rejected
               << "/" << submitted << " on-chain submissions rejected";
        break;
    }
    case Attack::EarlyAbort: {
        std::size_t aborts =
            events_where([](const ScenarioEvent& e) { return e.action == Action::Abort; });
        result.safe =
            aborts > 0 && run.final_signed_best > 0 && final_y == run.final_signed_best;
        detail << "collected " << final_y << " of " << run.final_signed_best
               << " signed before the grace period ended";
        break;
    }
    case Attack::DataLoss: {
        if (!run.loss) {
            result.safe = false;
            detail << "no loss event in script";
            break;
        }
        result.expected_loss = run.loss->z - run.loss->y;
        result.measured_loss = run.final_signed_best - final_y;
        result.safe = result.measured_loss == result.expected_loss;
        detail << "lost " << result.measured_loss << " (uncollected at drop: "
               << result.expected_loss << ")";
        break;
    }
    }
    result.detail = detail.str();
    return result;
}

bool usage_level_check(const Metrics& metrics, int level) {
    if (level < 1 || level > 3)
        throw std::invalid_argument("usage level must be 1, 2 or 3");

    static constexpr TxKind channel_kinds[] = {TxKind::Create, TxKind::Load,   TxKind::Extend,
                                               TxKind::Abort,  TxKind::Collect, TxKind::Unload};
    std::map<TxKind, std::uint64_t> used;
    std::uint64_t total = 0;
    for (TxKind kind : channel_kinds) {
        auto it = metrics.payer_kinds.find(kind);
        if (it != metrics.payer_kinds.end() && it->second > 0) {
            used[kind] = it->second;
            total += it->second;
        }
    }
    auto has = [&](TxKind kind) { return used.contains(kind); };
    bool create_abort_unload = has(TxKind::Create) && has(TxKind::Abort) && has(TxKind::Unload);

    switch (level) {
    case 1:
        return total >= 1 && used.size() == 1 && has(TxKind::Create);
    case 2:
        return create_abort_unload && used.size() == 3 && total >= 3;
    default: {
        if (!create_abort_unload)
            return false;
        std::uint64_t loads = has(TxKind::Load) ? used[TxKind::Load] : 0;
        std::uint64_t extends = has(TxKind::Extend) ? used[TxKind::Extend] : 0;
        return total >= 3 + loads + extends;
    }
    }
}

} // namespace xlumi::sim

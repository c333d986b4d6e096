// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <random>

#include "xlumi/sim.hpp"

namespace xlumi::sim {

namespace {

// Raw engine outputs with modulo keep scripts identical across standard
// libraries; the <random> distribution classes are implementation-defined.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng() % n; }
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(std::uint32_t percent) { return below(100) < percent; }
};

using Params = std::initializer_list<std::pair<const char*, std::uint64_t>>;

struct Builder {
    std::vector<ScenarioEvent> events;
    Timestamp t = 0;

    void add(Actor actor, Action action, Params params = {}) {
        ScenarioEvent event;
        event.time = t;
        event.actor = actor;
        event.action = action;
        for (const auto& [key, value] : params)
            event.params.emplace(key, value);
        event.line = static_cast<int>(events.size()) + 1;
        events.push_back(std::move(event));
    }
};

} // namespace

std::vector<ScenarioEvent> generate_honest_script(std::uint64_t seed, const SimConfig& cfg) {
    Rng rng(seed);
    Builder b;

    // Mirror of the state an honest replay must reach; only events this
    // mirror accepts are emitted, so every generated event must be accepted.
    Amount payer_main = cfg.payer_main;
    Amount payer_contract = cfg.payer_contract;
    Amount recipient_main = cfg.recipient_main;
    Amount recipient_contract = cfg.recipient_contract;
    Amount x = 0, y = 0, z = 0;
    Timestamp exp = 0;
    bool aborted = false;

    b.t = rng.below(4);
    if (rng.chance(25) && payer_main > cfg.fee) {
        Amount cap = std::min<Amount>(payer_main - cfg.fee, 40);
        Amount amount = rng.range(1, cap);
        b.add(Actor::Payer, Action::Deposit, {{"amount", amount}});
        payer_main -= amount + cfg.fee;
        payer_contract += amount;
        b.t += rng.below(3);
    }
    if (payer_contract == 0 || payer_main < cfg.fee)
        return b.events;

    Amount open = rng.range(1, std::min<Amount>(payer_contract, 60));
    exp = b.t + cfg.grace + rng.range(2, 50);
    b.add(Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}});
    payer_contract -= open;
    payer_main -= cfg.fee;
    x = open;

    std::size_t steps = rng.below(28);
    for (std::size_t i = 0; i < steps; ++i) {
        b.t += rng.below(3);
        bool window = b.t < exp;

        enum Move { Pay, Collect, Load, Extend, Abort, Deposit, Withdraw };
        std::vector<Move> pool;
        auto offer = [&](Move move, int weight) { pool.insert(pool.end(), weight, move); };
        if (!aborted && window && z < x)
            offer(Pay, 10);
        if (window && z > y && recipient_main >= cfg.fee)
            offer(Collect, 3);
        if (!aborted && window && payer_contract >= 1 && payer_main >= cfg.fee)
            offer(Load, 1);
        if (!aborted && window && payer_main >= cfg.fee)
            offer(Extend, 1);
        if (!aborted && window && payer_main >= cfg.fee)
            offer(Abort, 1);
        if (payer_main > cfg.fee)
            offer(Deposit, 1);
        if (recipient_contract >= 1 && recipient_main >= cfg.fee)
            offer(Withdraw, 1);
        if (pool.empty())
            break;

        switch (pool[rng.below(pool.size())]) {
        case Pay: {
            Amount delta = rng.range(1, x - z);
            b.add(Actor::Payer, Action::Pay, {{"amount", delta}});
            z += delta;
            break;
        }
        case Collect:
            b.add(Actor::Recipient, Action::Collect);
            recipient_contract += z - y;
            recipient_main -= cfg.fee;
            y = z;
            break;
        case Load: {
            Amount delta = rng.range(1, std::min<Amount>(payer_contract, 30));
            b.add(Actor::Payer, Action::Load, {{"amount", delta}});
            payer_contract -= delta;
            payer_main -= cfg.fee;
            x += delta;
            break;
        }
        case Extend: {
            Timestamp extra = rng.range(1, 30);
            b.add(Actor::Payer, Action::Extend, {{"expire", exp + extra}});
            exp += extra;
            payer_main -= cfg.fee;
            break;
        }
        case Abort:
            b.add(Actor::Payer, Action::Abort);
            exp = std::min(exp, b.t + cfg.grace);
            aborted = true;
            payer_main -= cfg.fee;
            break;
        case Deposit: {
            Amount amount = rng.range(1, std::min<Amount>(payer_main - cfg.fee, 30));
            b.add(Actor::Payer, Action::Deposit, {{"amount", amount}});
            payer_main -= amount + cfg.fee;
            payer_contract += amount;
            break;
        }
        case Withdraw: {
            Amount amount = rng.range(1, std::min<Amount>(recipient_contract, 30));
            b.add(Actor::Recipient, Action::Withdraw, {{"amount", amount}});
            recipient_contract -= amount;
            recipient_main += amount;
            recipient_main -= cfg.fee;
            break;
        }
        }
        if (aborted && rng.chance(50))
            break;
    }

    // Collect the rest while the window is open, then settle.
    if (z > y && b.t < exp && recipient_main >= cfg.fee && rng.chance(80)) {
        b.add(Actor::Recipient, Action::Collect);
        recipient_contract += z - y;
        recipient_main -= cfg.fee;
        y = z;
    }
    if (rng.chance(75) && payer_main >= cfg.fee) {
        b.t = std::max(b.t, exp);
        b.add(Actor::Payer, Action::Unload);
        payer_contract += x - y;
        payer_main -= cfg.fee;
    }
    return b.events;
}

std::vector<ScenarioEvent> generate_mixed_script(std::uint64_t seed, const SimConfig& cfg) {
    std::vector<ScenarioEvent> honest = generate_honest_script(seed, cfg);
    Rng rng(seed ^ 0x6d69786564696eull);

    std::vector<ScenarioEvent> out;
    out.reserve(honest.size() * 2);
    bool have_channel = false;
    std::uint64_t issued = 0;
    for (ScenarioEvent& event : honest) {
        bool was_create = event.action == Action::Create;
        bool was_pay = event.action == Action::Pay;
        Timestamp at = event.time;
        out.push_back(std::move(event));
        have_channel = have_channel || was_create;
        issued += was_pay ? 1 : 0;
        if (!have_channel || !rng.chance(30))
            continue;

        // One hostile or invalid event at the same instant.  All of these
        // must bounce off the contract or the sessions without a trace.
        ScenarioEvent bad;
        bad.time = at;
        switch (rng.below(10)) {
        case 0:
            bad.actor = Actor::Recipient;
            bad.action = Action::Load;
            bad.params["amount"] = rng.range(1, 20);
            break;
        case 1:
            bad.actor = Actor::Adversary;
            bad.action = Action::Abort;
            break;
        case 2:
            bad.actor = Actor::Adversary;
            bad.action = Action::Unload;
            break;
        case 3:
            bad.actor = Actor::Recipient;
            bad.action = Action::Extend;
            bad.params["expire"] = rng.below(5);
            break;
        case 4:
            bad.actor = Actor::Adversary;
            bad.action = Action::Collect;
            break;
        case 5:
            bad.actor = Actor::Adversary;
            bad.action = Action::ReplayOld;
            bad.params["msg"] = rng.below(issued + 1);
            break;
        case 6:
            bad.actor = Actor::Adversary;
            bad.action = Action::Forge;
            bad.params["amount"] = rng.range(1, 40);
            if (rng.chance(50))
                bad.params["submit"] = 1;
            break;
        case 7:
            bad.actor = Actor::Payer;
            bad.action = Action::Pay;
            bad.params["amount"] = rng.range(1, 25);
            bad.params["force"] = 1;
            break;
        case 8:
            bad.actor = Actor::Payer;
            bad.action = Action::Deposit;
            bad.params["amount"] = 0;
            break;
        default:
            bad.actor = Actor::Recipient;
            bad.action = Action::Withdraw;
            bad.params["amount"] = 100000;
            break;
        }
        out.push_back(std::move(bad));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].line = static_cast<int>(i) + 1;
    return out;
}

std::vector<ScenarioEvent> generate_attack_script(Attack attack, std::uint64_t seed,
                                                  const SimConfig& cfg) {
    Rng rng(seed ^ (0xa77ac4ull << 8 | static_cast<std::uint64_t>(attack)));
    Builder b;

    switch (attack) {
    case Attack::ReplayOld: {
        Amount open = rng.range(10, 60);
        b.t = rng.below(3);
        Timestamp exp = b.t + cfg.grace + rng.range(30, 80);
        b.add(Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}});

        // Pay and collect in rounds, so every issued state ends up settled.
        Amount z = 0;
        std::vector<Amount> totals;
        std::size_t rounds = rng.range(2, 4);
        for (std::size_t r = 0; r < rounds && z < open; ++r) {
            b.t += rng.range(1, 2);
            Amount delta = rng.range(1, open - z);
            z += delta;
            totals.push_back(z);
            b.add(Actor::Payer, Action::Pay, {{"amount", delta}});
            b.t += rng.below(2);
            b.add(Actor::Recipient, Action::Collect);
        }
        std::size_t replays = rng.range(1, 3);
        for (std::size_t r = 0; r < replays; ++r) {
            b.t += 1;
            b.add(Actor::Adversary, Action::ReplayOld, {{"msg", rng.below(totals.size())}});
        }
        break;
    }
    case Attack::OverLoadSign: {
        Amount open = rng.range(5, 40);
        b.t = rng.below(3);
        Timestamp exp = b.t + cfg.grace + rng.range(30, 80);
        b.add(Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}});

        Amount z = 0;
        std::size_t pays = rng.below(3);
        for (std::size_t p = 0; p < pays && z < open; ++p) {
            b.t += rng.below(2);
            Amount delta = rng.range(1, open - z);
            z += delta;
            b.add(Actor::Payer, Action::Pay, {{"amount", delta}});
        }
        // Totals that outrun the load; the first jumps past it, the rest
        // stack on top and stay past it.
        std::size_t forces = rng.range(1, 3);
        for (std::size_t f = 0; f < forces; ++f) {
            b.t += 1;
            Amount excess = (f == 0 ? open - z : 0) + rng.range(1, 15);
            b.add(Actor::Payer, Action::Pay, {{"amount", excess}, {"force", 1}});
        }
        if (z > 0) {
            b.t += 1;
            b.add(Actor::Recipient, Action::Collect);
        }
        break;
    }
    case Attack::Forge: {
        Amount open = rng.range(5, 40);
        b.t = rng.below(3);
        Timestamp exp = b.t + cfg.grace + rng.range(30, 80);
        b.add(Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}});

        Amount z = 0;
        std::size_t pays = rng.below(3);
        for (std::size_t p = 0; p < pays && z < open; ++p) {
            b.t += rng.below(2);
            Amount delta = rng.range(1, open - z);
            z += delta;
            b.add(Actor::Payer, Action::Pay, {{"amount", delta}});
        }
        std::size_t forges = rng.range(1, 3);
        for (std::size_t f = 0; f < forges; ++f) {
            b.t += 1;
            if (rng.chance(50))
                b.add(Actor::Adversary, Action::Forge,
                      {{"amount", rng.range(1, open + 20)}, {"submit", 1}});
            else
                b.add(Actor::Adversary, Action::Forge, {{"amount", rng.range(1, open + 20)}});
        }
        if (z > 0) {
            b.t += 1;
            b.add(Actor::Recipient, Action::Collect);
        }
        break;
    }
    case Attack::EarlyAbort: {
        if (cfg.grace == 0)
            throw std::invalid_argument(
                "early-abort coverage needs a positive grace period to monitor within");
        // The recipient survives an abort at an arbitrary instant iff it
        // checks at least once per grace period; this script family pins
        // that discipline with a randomized phase.
        Timestamp t0 = rng.below(3);
        Amount open = rng.range(5, 50);
        Timestamp t_abort = t0 + rng.range(2, 2 * cfg.grace);
        Timestamp exp = t0 + 3 * cfg.grace + rng.below(20);

        struct Pending {
            Timestamp time;
            int prio;
            Actor actor;
            Action action;
            std::map<std::string, std::uint64_t, std::less<>> params;
        };
        std::vector<Pending> pending;
        pending.push_back(
            {t0, 0, Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}}});

        std::vector<Timestamp> pay_times;
        std::size_t pays = rng.range(1, 5);
        for (std::size_t p = 0; p < pays; ++p)
            pay_times.push_back(rng.range(t0 + 1, t_abort));
        std::sort(pay_times.begin(), pay_times.end());
        Amount z = 0;
        for (Timestamp at : pay_times) {
            if (z >= open)
                break;
            Amount delta = rng.range(1, open - z);
            z += delta;
            pending.push_back({at, 1, Actor::Payer, Action::Pay, {{"amount", delta}}});
        }
        pending.push_back({t_abort, 2, Actor::Payer, Action::Abort, {}});
        // Checks every grace period; exactly one lands inside the window
        // [t_abort, t_abort + grace) no matter the phase.
        Timestamp phase = rng.range(1, cfg.grace);
        for (Timestamp c = t0 + phase; c < t_abort + cfg.grace; c += cfg.grace)
            pending.push_back({c, 3, Actor::Recipient, Action::Check, {}});
        pending.push_back({t_abort + cfg.grace, 4, Actor::Payer, Action::Unload, {}});

        std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
            return a.time != b.time ? a.time < b.time : a.prio < b.prio;
        });
        for (Pending& p : pending) {
            ScenarioEvent event;
            event.time = p.time;
            event.actor = p.actor;
            event.action = p.action;
            event.params = std::move(p.params);
            event.line = static_cast<int>(b.events.size()) + 1;
            b.events.push_back(std::move(event));
        }
        break;
    }
    case Attack::DataLoss: {
        Amount open = rng.range(5, 40);
        b.t = rng.below(3);
        Timestamp exp = b.t + cfg.grace + rng.range(30, 60);
        b.add(Actor::Payer, Action::Create, {{"amount", open}, {"expire", exp}});

        Amount z = 0;
        std::size_t pays = rng.range(1, 4);
        for (std::size_t p = 0; p < pays && z < open; ++p) {
            b.t += rng.range(1, 2);
            Amount delta = rng.range(1, open - z);
            z += delta;
            b.add(Actor::Payer, Action::Pay, {{"amount", delta}});
            if (rng.chance(30))
                b.add(Actor::Recipient, Action::Collect);
        }
        b.t += 1;
        b.add(Actor::Adversary, Action::DropMessage);
        if (rng.chance(50)) {
            b.t += 1;
            b.add(Actor::Recipient, Action::Check);
        }
        b.t += 1;
        Timestamp t_abort = b.t;
        b.add(Actor::Payer, Action::Abort);
        Timestamp closed = std::min(exp, t_abort + cfg.grace);
        if (rng.chance(50) && closed > b.t + 1) {
            b.t = closed - 1;
            b.add(Actor::Recipient, Action::Check);
        }
        b.t = closed;
        b.add(Actor::Payer, Action::Unload);
        break;
    }
    }
    return b.events;
}

} // namespace xlumi::sim

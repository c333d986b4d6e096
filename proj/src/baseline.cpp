// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/sim.hpp"

namespace xlumi::sim {

// Interaction constants of the punishment-channel cost model:
//   setup: exchange wallet outputs, the refund transaction and the funding
//          transaction before anything goes on chain (3 interactions, 1 tx),
//   payment: new state signed by one side, countersigned, plus handover of
//          the transitory key that revokes the previous state (4),
//   close: broadcast the latest state and have the counterparty check it for
//          punishable cheating (2 interactions, 1 tx).
// Every superseded state leaves one transitory key that must be stored until
// the channel closes.
BaselineMetrics run_punishment_baseline(std::span<const ScenarioEvent> events) {
    BaselineMetrics metrics;
    for (const ScenarioEvent& event : events) {
        switch (event.action) {
        case Action::Create:
            metrics.onchain_tx += 1;
            metrics.setup_interactions += 3;
            break;
        case Action::Pay:
            if (event.opt_param("force").value_or(0) != 0)
                throw UnsupportedEvent(event.line,
                                       "baseline cannot express out-of-band signing");
            metrics.payments += 1;
            metrics.payment_interactions += 4;
            if (metrics.payments > 1)
                metrics.stored_transitory_keys += 1;
            break;
        case Action::Abort:
            metrics.onchain_tx += 1;
            metrics.close_interactions += 2;
            break;
        default:
            throw UnsupportedEvent(event.line, "baseline has no equivalent for '" +
                                                   std::string(to_string(event.action)) + "'");
        }
    }
    return metrics;
}

} // namespace xlumi::sim

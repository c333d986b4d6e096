// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace xlumi::sim {

namespace {

const char* yes_no(bool value) {
    return value ? "yes" : "no";
}

std::string text_report(std::string_view name, const SimConfig& config, const RunResult& result) {
    std::ostringstream out;
    out << "scenario: " << name << '\n';
    out << "scheme=" << to_string(config.scheme) << " fee=" << config.fee
        << " grace=" << config.grace << " seed=" << config.seed << '\n';
    out << "payer_pk=" << to_hex(result.payer_key.bytes) << '\n';

    out << "\ntranscript:\n" << result.transcript;

    out << "\nseries (time x y z):\n";
    for (const Sample& sample : result.metrics.series)
        out << sample.time << ' ' << sample.x << ' ' << sample.y << ' ' << sample.z << '\n';

    out << "\nchannels:\n";
    for (const ChannelId& id : result.chain.channel_ids()) {
        const channel::ChannelState* state = result.chain.find_channel(id);
        out << channel::dump(*state) << '\n';
        out << "  escrow=" << state->escrow << " unloaded=" << yes_no(state->unloaded) << '\n';
    }

    out << "\nbalances:\n";
    out << "payer main=" << result.chain.main_balance(result.payer_addr)
        << " contract=" << result.chain.contract_balance(result.payer_addr) << '\n';
    out << "recipient main=" << result.chain.main_balance(result.recipient_addr)
        << " contract=" << result.chain.contract_balance(result.recipient_addr) << '\n';
    out << "adversary main=" << result.chain.main_balance(result.adversary_addr)
        << " contract=" << result.chain.contract_balance(result.adversary_addr) << '\n';
    out << "fees_collected=" << result.chain.fees_collected() << '\n';
    out << "total_supply=" << result.chain.total_supply() << '\n';

    const Metrics& m = result.metrics;
    out << "\nmetrics:\n";
    out << "onchain_tx=" << m.onchain_tx << '\n';
    out << "offchain_tx=" << m.offchain_tx << '\n';
    out << "fees_saved=" << m.fees_saved << '\n';
    out << "payer_onchain=" << m.payer_onchain << '\n';
    out << "recipient_onchain=" << m.recipient_onchain << '\n';
    out << "adversary_onchain=" << m.adversary_onchain << '\n';
    out << "payer_fees=" << m.payer_fees << '\n';
    out << "recipient_fees=" << m.recipient_fees << '\n';
    out << "adversary_fees=" << m.adversary_fees << '\n';
    out << "recipient_stored_signatures=" << result.recipient_stored << '\n';
    for (int level = 1; level <= 3; ++level)
        out << "usage_level_" << level << '=' << yes_no(usage_level_check(m, level)) << '\n';

    out << "\ntx_log:\n" << result.chain.export_log();
    return out.str();
}

nlohmann::json json_lines(const std::string& text) {
    nlohmann::json lines = nlohmann::json::array();
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::string structured_report(std::string_view name, const SimConfig& config,
                              const RunResult& result) {
    nlohmann::json doc;
    doc["scenario"] = std::string(name);
    doc["config"] = {
        {"scheme", std::string(to_string(config.scheme))},
        {"fee", config.fee},
        {"grace", config.grace},
        {"seed", config.seed},
    };
    doc["payer_public_key"] = to_hex(result.payer_key.bytes);
    doc["addresses"] = {
        {"payer", to_hex(result.payer_addr.id)},
        {"recipient", to_hex(result.recipient_addr.id)},
        {"adversary", to_hex(result.adversary_addr.id)},
    };

    const Metrics& m = result.metrics;
    nlohmann::json series = nlohmann::json::array();
    for (const Sample& sample : m.series)
        series.push_back(
            {{"time", sample.time}, {"x", sample.x}, {"y", sample.y}, {"z", sample.z}});
    doc["metrics"] = {
        {"onchain_tx", m.onchain_tx},
        {"offchain_tx", m.offchain_tx},
        {"fees_saved", m.fees_saved},
        {"payer_onchain", m.payer_onchain},
        {"recipient_onchain", m.recipient_onchain},
        {"adversary_onchain", m.adversary_onchain},
        {"payer_fees", m.payer_fees},
        {"recipient_fees", m.recipient_fees},
        {"adversary_fees", m.adversary_fees},
        {"series", series},
    };
    doc["usage_levels"] = {
        {"level1", usage_level_check(m, 1)},
        {"level2", usage_level_check(m, 2)},
        {"level3", usage_level_check(m, 3)},
    };

    nlohmann::json channels = nlohmann::json::array();
    for (const ChannelId& id : result.chain.channel_ids()) {
        const channel::ChannelState* state = result.chain.find_channel(id);
        channels.push_back({
            {"id", to_hex(state->id.id)},
            {"load", state->accumulated_load},
            {"collected", state->collected},
            {"escrow", state->escrow},
            {"expiration", state->expiration},
            {"status", std::string(channel::to_string(state->status))},
            {"unloaded", state->unloaded},
        });
    }
    doc["channels"] = channels;

    doc["balances"] = {
        {"payer",
         {{"main", result.chain.main_balance(result.payer_addr)},
          {"contract", result.chain.contract_balance(result.payer_addr)}}},
        {"recipient",
         {{"main", result.chain.main_balance(result.recipient_addr)},
          {"contract", result.chain.contract_balance(result.recipient_addr)}}},
        {"adversary",
         {{"main", result.chain.main_balance(result.adversary_addr)},
          {"contract", result.chain.contract_balance(result.adversary_addr)}}},
        {"fees_collected", result.chain.fees_collected()},
        {"total_supply", result.chain.total_supply()},
    };

    doc["recipient_stored_signatures"] = result.recipient_stored;
    nlohmann::json messages = nlohmann::json::array();
    for (const offchain::PaymentMessage& message : result.messages)
        messages.push_back(to_hex(offchain::serialize(message)));
    doc["messages"] = messages;
    doc["transcript"] = json_lines(result.transcript);
    doc["tx_log"] = json_lines(result.chain.export_log());

    return doc.dump(2) + "\n";
}

} // namespace

std::string render_report(std::string_view scenario_name, const SimConfig& config,
                          const RunResult& result, ReportFormat format) {
    return format == ReportFormat::Text ? text_report(scenario_name, config, result)
                                        : structured_report(scenario_name, config, result);
}

std::string render_compare(std::string_view scenario_name, const BaselineMetrics& baseline,
                           const RunResult& result) {
    const Metrics& m = result.metrics;
    std::uint64_t channel_interactions = m.onchain_tx + m.offchain_tx;

    std::ostringstream out;
    out << "scenario: " << scenario_name << '\n';
    out << "payments=" << baseline.payments << '\n';
    out << '\n';
    auto row = [&](std::string_view label, const std::string& a, const std::string& b) {
        out << std::left << std::setw(26) << label << std::right << std::setw(12) << a
            << std::setw(12) << b << '\n';
    };
    row("", "punishment", "channel");
    row("onchain_tx", std::to_string(baseline.onchain_tx), std::to_string(m.onchain_tx));
    row("total_interactions", std::to_string(baseline.total_interactions()),
        std::to_string(channel_interactions));
    row("stored_transitory_keys", std::to_string(baseline.stored_transitory_keys), "-");
    row("stored_signatures", "-", std::to_string(result.recipient_stored));
    out << '\n';
    out << "punishment model: 3 setup interactions (wallet, refund, fund), 4 per\n"
           "payment (sign, countersign, transitory-key handover), 2 to close; every\n"
           "superseded state leaves one transitory key in storage.\n";
    out << "channel model: one interaction per on-chain transaction plus one per\n"
           "payment message; the recipient stores a single signature.\n";
    return out.str();
}

} // namespace xlumi::sim

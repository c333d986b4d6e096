// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
//
// Command line front end.  Exit codes: 0 success, 1 usage or script errors,
// 2 invariant violation during a replay, 3 signature verification failure.
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "xlumi/report.hpp"
#include "xlumi/sim.hpp"

namespace {

struct RunOutcome {
    int code = 0;
    std::string output; // stdout, printed in input order
    std::string error;  // stderr
};

RunOutcome run_one(const std::string& path, const xlumi::sim::SimConfig& config,
                   xlumi::sim::ReportFormat format) {
    using namespace xlumi;
    try {
        auto events = sim::load_script(path);
        sim::RunResult result = sim::run_scenario(events, config);
        std::string name = std::filesystem::path(path).filename().string();
        return {0, sim::render_report(name, config, result, format), ""};
    } catch (const sim::MalformedScript& e) {
        return {1, "", path + ": " + e.what() + "\n"};
    } catch (const sim::InvariantViolation& e) {
        return {2, "", path + ": invariant violation: " + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {1, "", path + ": " + e.what() + "\n"};
    }
}

int cmd_run(const std::vector<std::string>& files, const xlumi::sim::SimConfig& config,
            xlumi::sim::ReportFormat format, const std::string& report_path, unsigned jobs) {
    if (!report_path.empty() && files.size() != 1) {
        std::cerr << "--report needs exactly one script\n";
        return 1;
    }

    std::vector<RunOutcome> outcomes(files.size());
    if (jobs <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i)
            outcomes[i] = run_one(files[i], config, format);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        unsigned n = std::min<std::size_t>(jobs, files.size());
        workers.reserve(n);
        for (unsigned w = 0; w < n; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
                    outcomes[i] = run_one(files[i], config, format);
            });
        for (std::thread& worker : workers)
            worker.join();
    }

    int exit_code = 0;
    for (const RunOutcome& outcome : outcomes) {
        if (outcome.code == 0) {
            if (report_path.empty()) {
                std::cout << outcome.output;
            } else {
                std::ofstream out(report_path, std::ios::binary);
                out << outcome.output;
                if (!out) {
                    std::cerr << "cannot write report: " << report_path << '\n';
                    return 1;
                }
            }
        }
        std::cerr << outcome.error;
        exit_code = std::max(exit_code, outcome.code);
    }
    return exit_code;
}

int cmd_verify(const std::string& msg_hex, const std::string& pk_hex) {
    using namespace xlumi;
    offchain::PaymentMessage message;
    crypto::PublicKey key;
    try {
        message = offchain::parse_payment_message(from_hex(msg_hex));
        key = crypto::PublicKey::from_bytes(from_hex(pk_hex));
    } catch (const FormatError& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return 1;
    }
    auto payload = crypto::encode_payment(message.channel_id, message.accumulated_amount);
    bool valid = crypto::ed25519().verify(key, payload, message.signature);
    std::cout << "channel_id=" << to_hex(message.channel_id.id) << '\n';
    std::cout << "amount=" << message.accumulated_amount << '\n';
    std::cout << (valid ? "VALID" : "INVALID") << '\n';
    return valid ? 0 : 3;
}

int cmd_compare(const std::string& path, const xlumi::sim::SimConfig& config) {
    using namespace xlumi;
    try {
        auto events = sim::load_script(path);
        sim::BaselineMetrics baseline = sim::run_punishment_baseline(events);
        sim::RunResult result = sim::run_scenario(events, config);
        std::string name = std::filesystem::path(path).filename().string();
        std::cout << sim::render_compare(name, baseline, result);
        return 0;
    } catch (const sim::MalformedScript& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return 1;
    } catch (const sim::UnsupportedEvent& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return 1;
    } catch (const sim::InvariantViolation& e) {
        std::cerr << path << ": invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unidirectional payment channel simulator"};
    app.require_subcommand(1);

    xlumi::sim::SimConfig config;
    std::vector<std::string> files;
    std::string report_path;
    std::string format = "text";
    unsigned jobs = 1;

    CLI::App* run_cmd = app.add_subcommand("run", "replay scenario scripts");
    run_cmd->add_option("scripts", files, "scenario script files")->required()->expected(-1);
    run_cmd->add_option("--fee", config.fee, "flat per-transaction fee")->capture_default_str();
    run_cmd->add_option("--grace", config.grace, "grace period granted on abort")
        ->capture_default_str();
    run_cmd->add_option("--seed", config.seed, "key derivation seed")
        ->envname("XLUMI_SEED")
        ->capture_default_str();
    run_cmd->add_option("--report", report_path, "write the report to this file instead");
    run_cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    run_cmd->add_option("--jobs", jobs, "replay scripts in parallel")->check(CLI::Range(1u, 64u));

    std::string msg_hex, pk_hex;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a serialized payment message");
    verify_cmd->add_option("message", msg_hex, "payment message, hex")->required();
    verify_cmd->add_option("public_key", pk_hex, "signer public key, hex")->required();

    std::string compare_file;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "cost table against a punishment-channel baseline");
    compare_cmd->add_option("script", compare_file, "scenario script file")->required();
    compare_cmd->add_option("--fee", config.fee, "flat per-transaction fee")
        ->capture_default_str();
    compare_cmd->add_option("--grace", config.grace, "grace period granted on abort")
        ->capture_default_str();
    compare_cmd->add_option("--seed", config.seed, "key derivation seed")
        ->envname("XLUMI_SEED")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    xlumi::sim::ReportFormat report_format = format == "structured"
                                                 ? xlumi::sim::ReportFormat::Structured
                                                 : xlumi::sim::ReportFormat::Text;
    if (run_cmd->parsed())
        return cmd_run(files, config, report_format, report_path, jobs);
    if (verify_cmd->parsed())
        return cmd_verify(msg_hex, pk_hex);
    if (compare_cmd->parsed())
        return cmd_compare(compare_file, config);
    return 1;
}

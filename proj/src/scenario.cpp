// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#include "xlumi/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace xlumi::sim {

namespace {

struct ActionRule {
    Action action;
    std::vector<std::string_view> required;
    std::vector<std::string_view> optional;
    bool needs_channel;                 // must come after the create line
    std::optional<Actor> only_actor;    // restricted to one actor
    bool no_payer = false;              // adversarial stand-ins, not the payer
};

const ActionRule* rule_for(std::string_view name) {
    static const std::map<std::string_view, ActionRule> rules = {
        {"create", {Action::Create, {"amount", "expire"}, {}, false, Actor::Payer}},
        {"load", {Action::Load, {"amount"}, {}, true, std::nullopt}},
        {"extend", {Action::Extend, {"expire"}, {}, true, std::nullopt}},
        {"abort", {Action::Abort, {}, {}, true, std::nullopt}},
        {"pay", {Action::Pay, {"amount"}, {"force"}, true, Actor::Payer}},
        {"collect", {Action::Collect, {}, {}, true, std::nullopt}},
        {"unload", {Action::Unload, {}, {}, true, std::nullopt}},
        {"deposit", {Action::Deposit, {"amount"}, {}, false, std::nullopt}},
        {"withdraw", {Action::Withdraw, {"amount"}, {}, false, std::nullopt}},
        {"drop_message", {Action::DropMessage, {}, {}, true, std::nullopt, true}},
        {"replay_old", {Action::ReplayOld, {}, {"msg"}, true, std::nullopt, true}},
        {"forge", {Action::Forge, {}, {"amount", "submit"}, true, std::nullopt, true}},
        {"check", {Action::Check, {}, {}, true, Actor::Recipient}},
    };
    auto it = rules.find(name);
    return it == rules.end() ? nullptr : &it->second;
}

std::optional<Actor> actor_for(std::string_view name) {
    if (name == "payer")
        return Actor::Payer;
    if (name == "recipient")
        return Actor::Recipient;
    if (name == "adversary")
        return Actor::Adversary;
    return std::nullopt;
}

std::uint64_t parse_u64(int line, std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw MalformedScript(line, "expected an unsigned integer, got '" + std::string(text) +
                                        "'");
    return value;
}

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t'))
            ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t')
            ++i;
        if (i > start)
            out.push_back(text.substr(start, i - start));
    }
    return out;
}

} // namespace

std::string_view to_string(Actor actor) {
    switch (actor) {
    case Actor::Payer:
        return "payer";
    case Actor::Recipient:
        return "recipient";
    case Actor::Adversary:
        return "adversary";
    }
    return "unknown";
}

std::string_view to_string(Action action) {
    switch (action) {
    case Action::Create:
        return "create";
    case Action::Load:
        return "load";
    case Action::Extend:
        return "extend";
    case Action::Abort:
        return "abort";
    case Action::Pay:
        return "pay";
    case Action::Collect:
        return "collect";
    case Action::Unload:
        return "unload";
    case Action::Deposit:
        return "deposit";
    case Action::Withdraw:
        return "withdraw";
    case Action::DropMessage:
        return "drop_message";
    case Action::ReplayOld:
        return "replay_old";
    case Action::Forge:
        return "forge";
    case Action::Check:
        return "check";
    }
    return "unknown";
}

std::vector<ScenarioEvent> parse_script(std::string_view text) {
    std::vector<ScenarioEvent> events;
    bool have_create = false;
    Timestamp last_time = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#')
            continue;
        if (tokens[0] != "at")
            throw MalformedScript(line_no, "expected 'at', got '" + std::string(tokens[0]) + "'");
        if (tokens.size() < 4)
            throw MalformedScript(line_no, "expected: at <time> <actor> <action> ...");

        ScenarioEvent event;
        event.line = line_no;
        event.time = parse_u64(line_no, tokens[1]);

        auto actor = actor_for(tokens[2]);
        if (!actor)
            throw MalformedScript(line_no, "unknown actor '" + std::string(tokens[2]) + "'");
        event.actor = *actor;

        const ActionRule* rule = rule_for(tokens[3]);
        if (!rule)
            throw MalformedScript(line_no, "unknown action '" + std::string(tokens[3]) + "'");
        event.action = rule->action;

        for (std::size_t i = 4; i < tokens.size(); ++i) {
            std::size_t eq = tokens[i].find('=');
            if (eq == std::string_view::npos || eq == 0 || eq + 1 == tokens[i].size())
                throw MalformedScript(line_no,
                                      "expected key=value, got '" + std::string(tokens[i]) + "'");
            std::string key(tokens[i].substr(0, eq));
            bool known = false;
            for (auto k : rule->required)
                known = known || k == key;
            for (auto k : rule->optional)
                known = known || k == key;
            if (!known)
                throw MalformedScript(line_no, "parameter '" + key + "' not valid for '" +
                                                   std::string(to_string(rule->action)) + "'");
            if (event.params.contains(key))
                throw MalformedScript(line_no, "duplicate parameter '" + key + "'");
            event.params[key] = parse_u64(line_no, tokens[i].substr(eq + 1));
        }
        for (auto k : rule->required)
            if (!event.params.contains(std::string(k)))
                throw MalformedScript(line_no, "missing required parameter '" + std::string(k) +
                                                   "' for '" +
                                                   std::string(to_string(rule->action)) + "'");

        if (rule->only_actor && event.actor != *rule->only_actor)
            throw MalformedScript(line_no, "'" + std::string(to_string(rule->action)) +
                                               "' must be performed by " +
                                               std::string(to_string(*rule->only_actor)));
        if (rule->no_payer && event.actor == Actor::Payer)
            throw MalformedScript(line_no, "'" + std::string(to_string(rule->action)) +
                                               "' cannot be performed by the payer");

        if (!events.empty() && event.time < last_time)
            throw MalformedScript(line_no, "time moves backwards");
        last_time = event.time;

        if (event.action == Action::Create) {
            if (have_create)
                throw MalformedScript(line_no, "scenario already has a channel");
            have_create = true;
        } else if (rule->needs_channel && !have_create) {
            throw MalformedScript(line_no, "'" + std::string(to_string(rule->action)) +
                                               "' before any create");
        }

        events.push_back(std::move(event));
    }
    return events;
}

std::vector<ScenarioEvent> load_script(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open script: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_script(buffer.str());
}

std::string format_script(std::span<const ScenarioEvent> events) {
    std::ostringstream out;
    for (const ScenarioEvent& event : events) {
        out << "at " << event.time << ' ' << to_string(event.actor) << ' '
            << to_string(event.action);
        for (const auto& [key, value] : event.params)
            out << ' ' << key << '=' << value;
        out << '\n';
    }
    return out.str();
}

} // namespace xlumi::sim

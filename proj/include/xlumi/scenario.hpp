// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <map>
#include <optional>

#include "xlumi/common.hpp"

namespace xlumi::sim {

enum class Actor {
    Payer,
    Recipient,
    Adversary,
};

enum class Action {
    Create,
    Load,
    Extend,
    Abort,
    Pay,
    Collect,
    Unload,
    Deposit,
    Withdraw,
    DropMessage,
    ReplayOld,
    Forge,
    Check,
};

std::string_view to_string(Actor actor);
std::string_view to_string(Action action);

/// Script rejected; line is 1-based into the script text.
struct MalformedScript : std::runtime_error {
    int line;
    MalformedScript(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct ScenarioEvent {
    Timestamp time = 0;
    Actor actor = Actor::Payer;
    Action action = Action::Create;
    std::map<std::string, std::uint64_t, std::less<>> params;
    int line = 0;

    std::uint64_t param(std::string_view key) const { return params.find(key)->second; }
    std::optional<std::uint64_t> opt_param(std::string_view key) const {
        auto it = params.find(key);
        return it == params.end() ? std::nullopt : std::optional(it->second);
    }
};

// Script lines look like
//   at <time> <actor> <action> key=value ...
// with '#' comment lines and blank lines ignored.  Times must be
// nondecreasing, required parameters must be present, unknown parameters are
// rejected, and channel actions need a single earlier create.  An empty
// script is valid.
std::vector<ScenarioEvent> parse_script(std::string_view text);

/// parse_script on a file; unreadable files throw std::runtime_error.
std::vector<ScenarioEvent> load_script(const std::string& path);

/// Render events back into script text; parse_script round-trips it.
std::string format_script(std::span<const ScenarioEvent> events);

} // namespace xlumi::sim

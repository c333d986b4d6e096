// Copyright 2026 the xlumi simulator authors. Licensed under the
// Apache License, Version 2.0: http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include "xlumi/sim.hpp"

namespace xlumi::sim {

enum class ReportFormat {
    Text,
    Structured, // JSON
};

// Render one scenario run.  Output is a pure function of (name, config,
// result): identical runs render byte-identically in either format.
std::string render_report(std::string_view scenario_name, const SimConfig& config,
                          const RunResult& result, ReportFormat format);

/// Side-by-side cost table: punishment-channel baseline vs this protocol.
std::string render_compare(std::string_view scenario_name, const BaselineMetrics& baseline,
                           const RunResult& result);

} // namespace xlumi::sim

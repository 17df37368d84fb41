#pragma once

#include "cogmap/inference.hpp"
#include "cogmap/io.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cogmap {

using RunResult = std::variant<HiddenPattern, RelationalPattern>;
using SweepResult = std::variant<std::vector<SweepRow>, std::vector<RelationalSweepRow>>;

/// Runs the scenario on whichever kind of map it is given.
[[nodiscard]] RunResult run(const AnyMap& map, const ResolvedScenario& scenario);
[[nodiscard]] SweepResult run_sweep(const AnyMap& map, Side side, const RunOptions& options);

[[nodiscard]] Outcome outcome_of(const RunResult& result);

struct ReportContext {
    std::string map_id;
    /// Adds per-step states and raw sums.
    bool trace = false;
};

/*
 * RunReport: outcome, per-label final activation, iteration counts, the
 * repeating segment, and optionally the full trajectory. The CLI and the
 * HTTP API both print exactly this document.
 */
[[nodiscard]] Json report_json(const AnyMap& map, const ResolvedScenario& scenario, const RunResult& result,
                               const ReportContext& context);
[[nodiscard]] std::string report_table(const AnyMap& map, const ResolvedScenario& scenario, const RunResult& result,
                                       const ReportContext& context);

[[nodiscard]] Json sweep_json(const AnyMap& map, Side side, const SweepResult& result, std::string_view map_id);
[[nodiscard]] std::string sweep_table(const AnyMap& map, Side side, const SweepResult& result,
                                      std::string_view map_id);

/// "limit cycle, period 4" and friends.
[[nodiscard]] std::string describe(Outcome outcome, std::size_t period);

/// Summary entry used by map listings: {id, kind, nodes | domain_nodes/range_nodes, metadata}.
[[nodiscard]] Json map_summary(std::string_view id, const AnyMap& map);

[[nodiscard]] Json findings_json(const std::vector<Finding>& findings);

}  // namespace cogmap

#pragma once

#include "cogmap/map_model.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogmap {

enum class Activation : std::uint8_t { off = 0, on = 1, indeterminate = 2 };

/// "0", "1", "I".
[[nodiscard]] std::string_view to_string(Activation a) noexcept;
[[nodiscard]] NeutroValue to_value(Activation a) noexcept;

using State = std::vector<Activation>;

/// Raised when a state, clamp index or map shape does not line up.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a scenario names a label the map does not have.
class LabelError : public std::invalid_argument {
public:
    LabelError(const std::string& label, const std::string& where);

    [[nodiscard]] const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

/// Raised when a run passes its deadline.
class InferenceTimeout : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateVector {
    State values;
    /// Sorted, unique indices held at 1.
    std::vector<std::size_t> clamped;

    /// Single-node-ON start with that node clamped.
    static StateVector single(std::size_t size, std::size_t on);
    /// Nodes in `on` set to 1 and all of them clamped.
    static StateVector with_on(std::size_t size, const std::vector<std::size_t>& on);

    friend bool operator==(const StateVector&, const StateVector&) = default;
};

struct ThresholdPolicy {
    Rational k{1};
};

/// 1 if real part >= k; otherwise I if the I-coefficient is nonzero; otherwise 0.
[[nodiscard]] Activation threshold_value(const NeutroValue& v, const ThresholdPolicy& policy = {});

/// Row vector times matrix in the ring: out_j = sum_i state_i * w(i, j).
[[nodiscard]] std::vector<NeutroValue> multiply_through(const State& state, const WeightMatrix& w);

/// Transpose variant: out_i = sum_j state_j * w(i, j).
[[nodiscard]] std::vector<NeutroValue> multiply_through_transpose(const State& state, const WeightMatrix& w);

struct TracedStep {
    std::vector<NeutroValue> raw;
    StateVector next;
};

[[nodiscard]] StateVector step(const CognitiveMap& map, const StateVector& state, const ThresholdPolicy& policy = {});
[[nodiscard]] TracedStep step_traced(const CognitiveMap& map, const StateVector& state,
                                     const ThresholdPolicy& policy = {});

enum class Outcome { fixed_point, limit_cycle, not_converged };

[[nodiscard]] std::string_view to_string(Outcome o) noexcept;

/*
 * Result of iterating a state to equilibrium.
 *
 * trajectory[0] is the clamped initial state and raw[k] holds the unthresholded
 * sums that produced trajectory[k + 1]. When a repeat is found the trajectory
 * ends with the repeated state, so for a revisit at positions t1 < t2
 * entry == t1, period == t2 - t1 and iterations == t2.
 */
struct HiddenPattern {
    Outcome outcome = Outcome::not_converged;
    std::vector<State> trajectory;
    std::vector<std::vector<NeutroValue>> raw;
    std::size_t entry = 0;
    std::size_t period = 0;
    std::size_t iterations = 0;

    /// The fixed point, the last state of the cycle before it closes, or the last state reached.
    [[nodiscard]] const State& final_state() const;
    /// States of the repeating segment in order (one state for a fixed point, empty if not converged).
    [[nodiscard]] std::vector<State> cycle() const;
};

struct RunOptions {
    ThresholdPolicy policy;
    std::size_t max_iters = 1000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

[[nodiscard]] HiddenPattern hidden_pattern(const CognitiveMap& map, const StateVector& initial,
                                           const RunOptions& options = {});

enum class Side { domain, range };

[[nodiscard]] std::string_view to_string(Side s) noexcept;

/*
 * Bipartite iteration result. Both per-side patterns share outcome, entry,
 * period and iterations. The starting side's trajectory begins with the
 * clamped initial state; the other side's trajectory[k] is the image of the
 * starting side's trajectory[k].
 */
struct RelationalPattern {
    Side start_side = Side::domain;
    HiddenPattern domain;
    HiddenPattern range;

    [[nodiscard]] const HiddenPattern& start() const { return start_side == Side::domain ? domain : range; }
    [[nodiscard]] Outcome outcome() const { return domain.outcome; }
};

[[nodiscard]] RelationalPattern relational_hidden_pattern(const RelationalMap& map, const StateVector& initial,
                                                          Side side, const RunOptions& options = {});

struct SweepRow {
    std::size_t start = 0;
    HiddenPattern pattern;
    std::size_t on_count = 0;
    std::size_t indeterminate_count = 0;
};

[[nodiscard]] std::vector<SweepRow> sweep(const CognitiveMap& map, const RunOptions& options = {});

struct RelationalSweepRow {
    std::size_t start = 0;
    RelationalPattern pattern;
};

[[nodiscard]] std::vector<RelationalSweepRow> sweep(const RelationalMap& map, Side side,
                                                    const RunOptions& options = {});

}  // namespace cogmap

#include "cogmap/inference.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

namespace cogmap {

std::string_view to_string(Activation a) noexcept {
    switch (a) {
        case Activation::off: return "0";
        case Activation::on: return "1";
        case Activation::indeterminate: return "I";
    }
    return "?";
}

NeutroValue to_value(Activation a) noexcept {
    switch (a) {
        case Activation::on: return NeutroValue{1};
        case Activation::indeterminate: return NeutroValue::indeterminate();
        case Activation::off: break;
    }
    return NeutroValue{};
}

std::string_view to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::fixed_point: return "fixed_point";
        case Outcome::limit_cycle: return "limit_cycle";
        case Outcome::not_converged: return "not_converged";
    }
    return "unknown";
}

std::string_view to_string(Side s) noexcept {
    return s == Side::domain ? "domain" : "range";
}

LabelError::LabelError(const std::string& label, const std::string& where)
    : std::invalid_argument("unknown label '" + label + "'" + (where.empty() ? "" : " in " + where)), label_(label) {}

StateVector StateVector::single(std::size_t size, std::size_t on) {
    return with_on(size, {on});
}

StateVector StateVector::with_on(std::size_t size, const std::vector<std::size_t>& on) {
    StateVector s{State(size, Activation::off), on};
    std::sort(s.clamped.begin(), s.clamped.end());
    s.clamped.erase(std::unique(s.clamped.begin(), s.clamped.end()), s.clamped.end());
    for (auto i : s.clamped) {
        if (i >= size) throw DimensionError("node index " + std::to_string(i) + " out of range");
        s.values[i] = Activation::on;
    }
    return s;
}

Activation threshold_value(const NeutroValue& v, const ThresholdPolicy& policy) {
    if (v.real_part() >= policy.k) return Activation::on;
    if (!v.indet_part().is_zero()) return Activation::indeterminate;
    return Activation::off;
}

namespace {

// state_i * w where state_i is 1 or I; I * (a + bI) = (a + b)I.
void accumulate(NeutroValue& acc, Activation a, const NeutroValue& w) {
    if (a == Activation::on)
        acc += w;
    else
        acc += NeutroValue{Rational{0}, w.real_part() + w.indet_part()};
}

void check_state(const StateVector& state, std::size_t size, std::string_view what) {
    if (state.values.size() != size)
        throw DimensionError("state has " + std::to_string(state.values.size()) + " entries but the " +
                             std::string(what) + " has " + std::to_string(size) + " nodes");
    for (auto i : state.clamped)
        if (i >= size) throw DimensionError("clamped index " + std::to_string(i) + " out of range");
}

void check_map(const CognitiveMap& map) {
    const auto& w = map.weights();
    if (w.rows() != map.size() || w.cols() != map.size())
        throw DimensionError("matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                             " but the map has " + std::to_string(map.size()) + " nodes");
}

void check_map(const RelationalMap& map) {
    const auto& w = map.weights();
    if (w.rows() != map.domain_nodes().size() || w.cols() != map.range_nodes().size())
        throw DimensionError("relational matrix shape does not match its node lists");
}

State threshold_all(const std::vector<NeutroValue>& raw, const ThresholdPolicy& policy) {
    State out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) out[j] = threshold_value(raw[j], policy);
    return out;
}

void apply_clamp(State& s, const std::vector<std::size_t>& clamped) {
    for (auto i : clamped) s[i] = Activation::on;
}

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::string_view bytes(reinterpret_cast<const char*>(s.data()), s.size());
        return std::hash<std::string_view>{}(bytes);
    }
};

void check_deadline(const RunOptions& options, std::size_t iteration) {
    if (options.deadline && (iteration - 1) % 16 == 0 && std::chrono::steady_clock::now() > *options.deadline)
        throw InferenceTimeout("inference exceeded its time limit after " + std::to_string(iteration) + " steps");
}

// Drives the visited-state index shared by the cognitive and relational loops.
// advance(state, raw_out) returns the next start-side state.
template <typename Advance>
HiddenPattern iterate(State initial, const RunOptions& options, Advance&& advance) {
    if (options.max_iters == 0) throw std::invalid_argument("max_iters must be at least 1");
    HiddenPattern hp;
    std::unordered_map<State, std::size_t, StateHash> seen;
    seen.emplace(initial, 0);
    hp.trajectory.push_back(std::move(initial));

    for (std::size_t t = 1; t <= options.max_iters; ++t) {
        check_deadline(options, t);
        std::vector<NeutroValue> raw;
        State next = advance(hp.trajectory.back(), raw);
        hp.raw.push_back(std::move(raw));
        auto [it, inserted] = seen.emplace(next, t);
        hp.trajectory.push_back(std::move(next));
        if (!inserted) {
            hp.entry = it->second;
            hp.period = t - it->second;
            hp.iterations = t;
            hp.outcome = hp.period == 1 ? Outcome::fixed_point : Outcome::limit_cycle;
            return hp;
        }
    }
    hp.outcome = Outcome::not_converged;
    hp.iterations = options.max_iters;
    return hp;
}

}  // namespace

std::vector<NeutroValue> multiply_through(const State& state, const WeightMatrix& w) {
    if (state.size() != w.rows()) throw DimensionError("state length does not match matrix rows");
    std::vector<NeutroValue> out(w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        if (state[i] == Activation::off) continue;
        const auto row = w.row(i);
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (!row[j].is_zero()) accumulate(out[j], state[i], row[j]);
    }
    return out;
}

std::vector<NeutroValue> multiply_through_transpose(const State& state, const WeightMatrix& w) {
    if (state.size() != w.cols()) throw DimensionError("state length does not match matrix columns");
    std::vector<NeutroValue> out(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        const auto row = w.row(i);
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (state[j] != Activation::off && !row[j].is_zero()) accumulate(out[i], state[j], row[j]);
    }
    return out;
}

TracedStep step_traced(const CognitiveMap& map, const StateVector& state, const ThresholdPolicy& policy) {
    check_map(map);
    check_state(state, map.size(), "map");
    TracedStep out;
    out.raw = multiply_through(state.values, map.weights());
    out.next.values = threshold_all(out.raw, policy);
    out.next.clamped = state.clamped;
    apply_clamp(out.next.values, out.next.clamped);
    return out;
}

StateVector step(const CognitiveMap& map, const StateVector& state, const ThresholdPolicy& policy) {
    return step_traced(map, state, policy).next;
}

const State& HiddenPattern::final_state() const {
    if (outcome == Outcome::not_converged) return trajectory.back();
    return trajectory[trajectory.size() - 2];
}

std::vector<State> HiddenPattern::cycle() const {
    if (outcome == Outcome::not_converged) return {};
    return {trajectory.begin() + static_cast<std::ptrdiff_t>(entry),
            trajectory.begin() + static_cast<std::ptrdiff_t>(entry + period)};
}

HiddenPattern hidden_pattern(const CognitiveMap& map, const StateVector& initial, const RunOptions& options) {
    check_map(map);
    check_state(initial, map.size(), "map");
    State start = initial.values;
    apply_clamp(start, initial.clamped);
    return iterate(std::move(start), options, [&](const State& s, std::vector<NeutroValue>& raw) {
        raw = multiply_through(s, map.weights());
        State next = threshold_all(raw, options.policy);
        apply_clamp(next, initial.clamped);
        return next;
    });
}

RelationalPattern relational_hidden_pattern(const RelationalMap& map, const StateVector& initial, Side side,
                                            const RunOptions& options) {
    check_map(map);
    const auto& w = map.weights();
    const bool from_domain = side == Side::domain;
    check_state(initial, from_domain ? w.rows() : w.cols(), from_domain ? "domain" : "range");

    auto forward = [&](const State& s) {
        return from_domain ? multiply_through(s, w) : multiply_through_transpose(s, w);
    };
    auto backward = [&](const State& s) {
        return from_domain ? multiply_through_transpose(s, w) : multiply_through(s, w);
    };

    State start = initial.values;
    apply_clamp(start, initial.clamped);

    // Images of each start-side state, collected as the loop advances.
    std::vector<State> images;
    std::vector<std::vector<NeutroValue>> image_raw;
    auto image_of = [&](const State& s) {
        auto raw = forward(s);
        images.push_back(threshold_all(raw, options.policy));
        image_raw.push_back(std::move(raw));
    };

    HiddenPattern primary = iterate(start, options, [&](const State& s, std::vector<NeutroValue>& raw) {
        image_of(s);
        raw = backward(images.back());
        State next = threshold_all(raw, options.policy);
        apply_clamp(next, initial.clamped);
        return next;
    });
    image_of(primary.trajectory.back());

    HiddenPattern other;
    other.outcome = primary.outcome;
    other.entry = primary.entry;
    other.period = primary.period;
    other.iterations = primary.iterations;
    other.trajectory = std::move(images);
    other.raw = std::move(image_raw);

    RelationalPattern out;
    out.start_side = side;
    if (from_domain) {
        out.domain = std::move(primary);
        out.range = std::move(other);
    } else {
        out.range = std::move(primary);
        out.domain = std::move(other);
    }
    return out;
}

std::vector<SweepRow> sweep(const CognitiveMap& map, const RunOptions& options) {
    check_map(map);
    std::vector<SweepRow> rows;
    rows.reserve(map.size());
    for (std::size_t j = 0; j < map.size(); ++j) {
        SweepRow row;
        row.start = j;
        row.pattern = hidden_pattern(map, StateVector::single(map.size(), j), options);
        for (auto a : row.pattern.final_state()) {
            row.on_count += a == Activation::on;
            row.indeterminate_count += a == Activation::indeterminate;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RelationalSweepRow> sweep(const RelationalMap& map, Side side, const RunOptions& options) {
    check_map(map);
    const std::size_t n = side == Side::domain ? map.domain_nodes().size() : map.range_nodes().size();
    std::vector<RelationalSweepRow> rows;
    rows.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        rows.push_back({j, relational_hidden_pattern(map, StateVector::single(n, j), side, options)});
    return rows;
}

}  // namespace cogmap

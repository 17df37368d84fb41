#include "cogmap/inference.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <thread>

using namespace cogmap;
using test::state_of;

namespace {

const NeutroValue I = NeutroValue::indeterminate();

// Independent reference: explicit ring double loop and threshold rule.
State naive_step(const CognitiveMap& map, const State& s, const std::vector<std::size_t>& clamped, Rational k = 1) {
    const std::size_t n = map.size();
    State out(n);
    for (std::size_t j = 0; j < n; ++j) {
        NeutroValue sum;
        for (std::size_t i = 0; i < n; ++i) {
            NeutroValue x = s[i] == Activation::on ? NeutroValue{1}
                            : s[i] == Activation::indeterminate ? I
                                                                : NeutroValue{0};
            sum = add(sum, multiply(x, map.weights()(i, j)));
        }
        if (sum.real_part() >= k)
            out[j] = Activation::on;
        else if (sum.indet_part() != Rational{0})
            out[j] = Activation::indeterminate;
        else
            out[j] = Activation::off;
    }
    for (auto c : clamped) out[c] = Activation::on;
    return out;
}

std::vector<std::size_t> on_indices(const State& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == Activation::on) out.push_back(i);
    return out;
}

CognitiveMap zero_map(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("Z" + std::to_string(i));
    return {make_nodes(labels), WeightMatrix(n, n)};
}

}  // namespace

TEST_CASE("threshold rule") {
    CHECK(threshold_value(NeutroValue{2}) == Activation::on);
    CHECK(threshold_value(NeutroValue{1}) == Activation::on);
    CHECK(threshold_value(NeutroValue{-1}) == Activation::off);
    CHECK(threshold_value(NeutroValue{0}) == Activation::off);
    CHECK(threshold_value(NeutroValue{Rational{1}, Rational{1}}) == Activation::on);
    CHECK(threshold_value(I) == Activation::indeterminate);
    CHECK(threshold_value(-I) == Activation::indeterminate);
    CHECK(threshold_value(parse_weight("1-2I"), {Rational{2}}) == Activation::indeterminate);
    CHECK(threshold_value(NeutroValue{2}, {Rational{3}}) == Activation::off);
    CHECK(threshold_value(NeutroValue{Rational(1, 2)}, {Rational(1, 2)}) == Activation::on);
}

TEST_CASE("step") {
    auto e = test::bundled_cognitive("example-1-2-1");
    StateVector s{state_of("1 0 0 0 1"), {0}};
    auto traced = step_traced(e, s);
    CHECK(traced.next.values == state_of("1 0 0 1 1"));
    // Raw sums before clamping: (0 0 -1 1 1).
    CHECK(traced.raw == std::vector<NeutroValue>{0, 0, -1, 1, 1});

    auto p = test::bundled_cognitive("sec-2-1-P");
    CHECK(step(p, StateVector::single(9, 7)).values == state_of("0 0 0 1 0 0 0 1 1"));

    StateVector zero{State(9, Activation::off), {}};
    CHECK(step(p, zero).values == zero.values);

    CHECK_THROWS_AS((void)step(p, StateVector{State(3, Activation::off), {}}), DimensionError);
    CHECK_THROWS_AS((void)step(p, StateVector{State(9, Activation::off), {12}}), DimensionError);
}

TEST_CASE("hidden pattern: example 1.2.1 limit cycle") {
    auto e = test::bundled_cognitive("example-1-2-1");
    auto hp = hidden_pattern(e, StateVector::single(5, 0));
    REQUIRE(hp.outcome == Outcome::limit_cycle);
    CHECK(hp.period == 4);
    CHECK(hp.entry == 1);
    CHECK(hp.iterations == 5);
    const std::vector<State> expected{state_of("1 0 0 0 1"), state_of("1 0 0 1 1"), state_of("1 1 0 1 1"),
                                      state_of("1 1 0 0 1")};
    CHECK(hp.cycle() == expected);
    CHECK(hp.trajectory.front() == state_of("1 0 0 0 0"));
    CHECK(hp.trajectory.back() == state_of("1 0 0 0 1"));
    CHECK(hp.final_state() == state_of("1 1 0 0 1"));
    CHECK(hp.raw.size() == hp.trajectory.size() - 1);
    CHECK(hp.raw[4] == std::vector<NeutroValue>{0, 0, -1, 0, 1});
}

TEST_CASE("hidden pattern: P from node 8 reaches a fixed point") {
    auto p = test::bundled_cognitive("sec-2-1-P");
    auto hp = hidden_pattern(p, StateVector::single(9, 7));
    REQUIRE(hp.outcome == Outcome::fixed_point);
    CHECK(hp.final_state() == state_of("0 0 0 1 1 0 0 1 1"));
    CHECK(hp.entry == 2);
    CHECK(hp.iterations == 3);
    CHECK(hp.cycle().size() == 1);
}

TEST_CASE("hidden pattern: zero map") {
    auto z = zero_map(4);
    auto hp = hidden_pattern(z, StateVector::with_on(4, {1, 3}));
    REQUIRE(hp.outcome == Outcome::fixed_point);
    CHECK(hp.entry == 0);
    CHECK(hp.iterations == 1);
    CHECK(hp.final_state() == state_of("0 1 0 1"));
}

TEST_CASE("hidden pattern: iteration cap") {
    auto e = test::bundled_cognitive("example-1-2-1");
    RunOptions opts;
    opts.max_iters = 3;
    auto hp = hidden_pattern(e, StateVector::single(5, 0), opts);
    CHECK(hp.outcome == Outcome::not_converged);
    CHECK(hp.iterations == 3);
    CHECK(hp.trajectory.size() == 4);
    CHECK(hp.cycle().empty());
    opts.max_iters = 0;
    CHECK_THROWS_AS((void)hidden_pattern(e, StateVector::single(5, 0), opts), std::invalid_argument);
}

TEST_CASE("hidden pattern: deadline") {
    auto e = test::bundled_cognitive("example-1-2-1");
    RunOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS((void)hidden_pattern(e, StateVector::single(5, 0), opts), InferenceTimeout);
}

TEST_CASE("indeterminate starts are not clamped") {
    auto z = zero_map(3);
    StateVector s{state_of("I 1 0"), {1}};
    auto hp = hidden_pattern(z, s);
    CHECK(hp.trajectory[0] == state_of("I 1 0"));
    CHECK(hp.final_state() == state_of("0 1 0"));
}

TEST_CASE("relational: NRM from range node 2") {
    auto nr = test::bundled_relational("sec-1-6-NR");
    auto rp = relational_hidden_pattern(nr, StateVector::single(5, 1), Side::range);
    REQUIRE(rp.outcome() == Outcome::fixed_point);
    CHECK(rp.range.final_state() == state_of("1 1 1 1 1"));
    CHECK(rp.domain.final_state() == state_of("1 1 1 1 1 1 I"));
    CHECK(rp.domain.trajectory[0] == state_of("0 0 1 1 1 0 0"));
    CHECK(rp.range.trajectory[1] == state_of("1 1 1 1 1"));
    // Raw sums of the two range updates.
    CHECK(rp.range.raw[0] == std::vector<NeutroValue>{2, 3, 3, 1, 2});
    CHECK(rp.range.raw[1] == std::vector<NeutroValue>{parse_weight("3+I"), 3, 6, parse_weight("2+2I"),
                                                     parse_weight("4+2I")});
    CHECK(rp.domain.entry == rp.range.entry);
    CHECK(rp.domain.period == 1);
}

TEST_CASE("relational: FRM M from domain P7") {
    auto m = test::bundled_relational("sec-2-6-M");
    auto rp = relational_hidden_pattern(m, StateVector::single(10, 6), Side::domain);
    REQUIRE(rp.outcome() == Outcome::fixed_point);
    CHECK(rp.range.trajectory[0] == state_of("1 1 0 1 1 0 0 0 0 0 0 0"));
    CHECK(rp.domain.final_state() == State(10, Activation::on));
    CHECK(rp.range.final_state() == State(12, Activation::on));
}

TEST_CASE("relational: zero map") {
    std::vector<std::string> d{"a", "b"};
    std::vector<std::string> r{"x", "y", "z"};
    RelationalMap z(make_nodes(d), make_nodes(r), WeightMatrix(2, 3));
    auto rp = relational_hidden_pattern(z, StateVector::single(2, 0), Side::domain);
    REQUIRE(rp.outcome() == Outcome::fixed_point);
    CHECK(rp.domain.final_state() == state_of("1 0"));
    CHECK(rp.range.final_state() == state_of("0 0 0"));
    CHECK_THROWS_AS((void)relational_hidden_pattern(z, StateVector::single(3, 0), Side::domain), DimensionError);
}

TEST_CASE("sweep") {
    auto r = test::bundled_cognitive("sec-2-1-R");
    auto rows = sweep(r);
    REQUIRE(rows.size() == 15);
    CHECK(rows[0].pattern.outcome == Outcome::fixed_point);
    CHECK(rows[0].on_count == 15);
    CHECK(rows[2].pattern.final_state() == state_of("0 0 1 0 0 0 0 0 0 0 0 0 0 0 0"));
    CHECK(rows[2].on_count == 1);

    auto one = sweep(zero_map(1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].pattern.outcome == Outcome::fixed_point);
    CHECK(one[0].pattern.final_state() == state_of("1"));
}

TEST_CASE("property: oracle equivalence on random simple maps") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 6;
        auto map = test::random_simple_map(rng, n);
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            State s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1 ? Activation::on : Activation::off;
            auto clamped = on_indices(s);
            REQUIRE(step(map, {s, clamped}).values == naive_step(map, s, clamped));
            REQUIRE(step(map, {s, {}}).values == naive_step(map, s, {}));
        }
    }
}

TEST_CASE("property: dynamics invariants") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const bool neutro = trial % 2 == 0;
        auto map = test::random_simple_map(rng, n, neutro);
        std::uniform_int_distribution<int> pick(0, neutro ? 2 : 1);
        State s(n);
        for (auto& a : s) a = static_cast<Activation>(pick(rng));
        std::vector<std::size_t> clamped;
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] == Activation::on && rng() % 2) clamped.push_back(i);

        RunOptions opts;
        std::size_t states = 1;
        for (std::size_t i = 0; i < n; ++i) states *= 3;
        opts.max_iters = states + 1;
        auto hp = hidden_pattern(map, {s, clamped}, opts);
        auto again = hidden_pattern(map, {s, clamped}, opts);

        REQUIRE(hp.outcome != Outcome::not_converged);
        REQUIRE(hp.trajectory == again.trajectory);
        REQUIRE(hp.raw == again.raw);
        REQUIRE((hp.period == 1) == (hp.outcome == Outcome::fixed_point));
        REQUIRE(hp.trajectory[hp.entry] == hp.trajectory.back());
        std::set<State> distinct(hp.trajectory.begin(), hp.trajectory.end() - 1);
        REQUIRE(distinct.size() == hp.trajectory.size() - 1);
        for (std::size_t t = 1; t < hp.trajectory.size(); ++t) {
            for (auto c : clamped) REQUIRE(hp.trajectory[t][c] == Activation::on);
            if (!neutro)
                for (auto a : hp.trajectory[t]) REQUIRE(a != Activation::indeterminate);
        }

        StateVector zero{State(n, Activation::off), {}};
        REQUIRE(step(map, zero).values == zero.values);
    }
}

TEST_CASE("property: relational symmetry") {
    std::mt19937_64 rng(55);
    const NeutroValue choices[] = {NeutroValue{-1}, NeutroValue{0}, NeutroValue{1}, I};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const std::size_t m = 1 + rng() % 5;
        WeightMatrix w(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) w(i, j) = choices[rng() % 4];
        std::vector<std::string> d;
        std::vector<std::string> r;
        for (std::size_t i = 0; i < n; ++i) d.push_back("D" + std::to_string(i));
        for (std::size_t j = 0; j < m; ++j) r.push_back("R" + std::to_string(j));
        RelationalMap map(make_nodes(d), make_nodes(r), w);
        auto start = StateVector::single(m, rng() % m);

        auto from_range = relational_hidden_pattern(map, start, Side::range);
        auto via_t = relational_hidden_pattern(transpose(map), start, Side::domain);
        REQUIRE(from_range.range.trajectory == via_t.domain.trajectory);
        REQUIRE(from_range.domain.trajectory == via_t.range.trajectory);
        REQUIRE(from_range.outcome() == via_t.outcome());
        REQUIRE(from_range.range.period == via_t.domain.period);
    }
}

TEST_CASE("concurrent runs share one map") {
    auto r = test::bundled_cognitive("sec-2-1-R");
    auto expected = sweep(r);
    std::vector<std::thread> threads;
    std::vector<int> ok(8, 0);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] {
            auto rows = sweep(r);
            bool same = rows.size() == expected.size();
            for (std::size_t i = 0; same && i < rows.size(); ++i)
                same = rows[i].pattern.trajectory == expected[i].pattern.trajectory;
            ok[t] = same;
        });
    for (auto& th : threads) th.join();
    for (int v : ok) CHECK(v == 1);
}

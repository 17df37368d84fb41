#pragma once

#include "cogmap/inference.hpp"
#include "cogmap/io.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cogmap::test {

inline std::string data_path(const std::string& id) {
    return std::string(COGMAP_TEST_DATA_DIR) + "/" + id + ".cogmap.json";
}

inline CognitiveMap bundled_cognitive(const std::string& id) {
    return std::get<CognitiveMap>(load_map_file(data_path(id)));
}

inline RelationalMap bundled_relational(const std::string& id) {
    return std::get<RelationalMap>(load_map_file(data_path(id)));
}

/// Parses "1 0 I 1" style vectors.
inline State state_of(std::string_view text) {
    State s;
    for (char c : text) {
        if (c == '0') s.push_back(Activation::off);
        else if (c == '1') s.push_back(Activation::on);
        else if (c == 'I') s.push_back(Activation::indeterminate);
    }
    return s;
}

inline NeutroValue random_value(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return {Rational{d(rng)}, Rational{d(rng)}};
}

/// Random map with weights drawn from {-1, 0, 1, I} and a zero diagonal.
inline CognitiveMap random_simple_map(std::mt19937_64& rng, std::size_t n, bool neutrosophic = true) {
    const NeutroValue choices[] = {NeutroValue{-1}, NeutroValue{0}, NeutroValue{1}, NeutroValue::indeterminate()};
    std::uniform_int_distribution<int> pick(0, neutrosophic ? 3 : 2);
    WeightMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) w(i, j) = choices[pick(rng)];
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("C" + std::to_string(i + 1));
    return {make_nodes(labels), std::move(w)};
}

}  // namespace cogmap::test

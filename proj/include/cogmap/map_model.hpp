#pragma once

#include "cogmap/neutro.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cogmap {

struct ConceptNode {
    std::size_t id = 0;
    std::string label;
    std::optional<std::string> description;

    friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

/// Dense row-major matrix of ring elements.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    WeightMatrix(std::initializer_list<std::initializer_list<NeutroValue>> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] const NeutroValue& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    NeutroValue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const NeutroValue> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] WeightMatrix transposed() const;
    [[nodiscard]] std::size_t nonzero_count() const;

    friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<NeutroValue> data_;
};

using Metadata = std::map<std::string, std::string>;

enum class MapKind { fcm, ncm, frm, nrm };

[[nodiscard]] std::string_view to_string(MapKind kind) noexcept;

/// Creates nodes numbered 0..n-1 from labels.
[[nodiscard]] std::vector<ConceptNode> make_nodes(std::span<const std::string> labels);

/// Find a node by exact (case-sensitive) label.
[[nodiscard]] std::optional<std::size_t> find_label(std::span<const ConceptNode> nodes, std::string_view label);

/*
 * Square concept-to-concept map (FCM or NCM).
 *
 * Construction does not enforce well-formedness so that malformed input can
 * still be inspected and reported by validate(). Inference functions reject
 * maps whose matrix shape disagrees with the node list.
 */
class CognitiveMap {
public:
    CognitiveMap() = default;
    CognitiveMap(std::vector<ConceptNode> nodes, WeightMatrix weights, Metadata metadata = {});

    [[nodiscard]] const std::vector<ConceptNode>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const WeightMatrix& weights() const noexcept { return weights_; }
    [[nodiscard]] const Metadata& metadata() const noexcept { return metadata_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

    /// fcm iff every weight is crisp.
    [[nodiscard]] MapKind kind() const noexcept;
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view label) const {
        return find_label(nodes_, label);
    }

    friend bool operator==(const CognitiveMap&, const CognitiveMap&) = default;

private:
    std::vector<ConceptNode> nodes_;
    WeightMatrix weights_;
    Metadata metadata_;
};

/// Bipartite map from a domain node set to a disjoint range node set (FRM or NRM).
class RelationalMap {
public:
    RelationalMap() = default;
    RelationalMap(std::vector<ConceptNode> domain, std::vector<ConceptNode> range, WeightMatrix weights,
                  Metadata metadata = {});

    [[nodiscard]] const std::vector<ConceptNode>& domain_nodes() const noexcept { return domain_; }
    [[nodiscard]] const std::vector<ConceptNode>& range_nodes() const noexcept { return range_; }
    [[nodiscard]] const WeightMatrix& weights() const noexcept { return weights_; }
    [[nodiscard]] const Metadata& metadata() const noexcept { return metadata_; }

    [[nodiscard]] MapKind kind() const noexcept;

    friend bool operator==(const RelationalMap&, const RelationalMap&) = default;

private:
    std::vector<ConceptNode> domain_;
    std::vector<ConceptNode> range_;
    WeightMatrix weights_;
    Metadata metadata_;
};

struct Finding {
    std::string code;
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    [[nodiscard]] bool ok() const noexcept { return findings.empty(); }
    void add(std::string code, std::string message) { findings.push_back({std::move(code), std::move(message)}); }
};

struct ValidateOptions {
    /// Require weights in {-1, 0, 1} (crisp kinds) or {-1, 0, 1, I} (neutrosophic kinds).
    bool require_simple = false;
};

[[nodiscard]] ValidationReport validate(const CognitiveMap& map, ValidateOptions options = {});
[[nodiscard]] ValidationReport validate(const RelationalMap& map, ValidateOptions options = {});

/// True iff the weight is one of -1, 0, 1, I.
[[nodiscard]] bool is_simple_weight(const NeutroValue& w) noexcept;

struct CombineOptions {
    /// One non-negative credibility weight per map; empty means all ones.
    std::vector<Rational> weights;
    /// Divide the sum by the number of maps.
    bool normalize = false;
};

/*
 * Sum of expert maps over the union of their concepts.
 *
 * Nodes are matched by label and ordered by first appearance across the
 * list. A map that lacks a concept contributes a zero row and column for it.
 * Throws std::invalid_argument on an empty list, a weight-count mismatch, or
 * a negative weight.
 */
[[nodiscard]] CognitiveMap combine(std::span<const CognitiveMap> maps, const CombineOptions& options = {});
[[nodiscard]] RelationalMap combine(std::span<const RelationalMap> maps, const CombineOptions& options = {});

/// Swaps domain and range.
[[nodiscard]] RelationalMap transpose(const RelationalMap& map);

}  // namespace cogmap

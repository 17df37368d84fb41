#include "cogmap/map_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace cogmap {

WeightMatrix::WeightMatrix(std::initializer_list<std::initializer_list<NeutroValue>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

WeightMatrix WeightMatrix::transposed() const {
    WeightMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::size_t WeightMatrix::nonzero_count() const {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](const NeutroValue& v) { return !v.is_zero(); }));
}

std::string_view to_string(MapKind kind) noexcept {
    switch (kind) {
        case MapKind::fcm: return "fcm";
        case MapKind::ncm: return "ncm";
        case MapKind::frm: return "frm";
        case MapKind::nrm: return "nrm";
    }
    return "unknown";
}

std::vector<ConceptNode> make_nodes(std::span<const std::string> labels) {
    std::vector<ConceptNode> nodes;
    nodes.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) nodes.push_back({i, labels[i], std::nullopt});
    return nodes;
}

std::optional<std::size_t> find_label(std::span<const ConceptNode> nodes, std::string_view label) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].label == label) return i;
    return std::nullopt;
}

namespace {

bool all_crisp(const WeightMatrix& w) {
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (const auto& v : w.row(i))
            if (!v.is_crisp()) return false;
    return true;
}

void renumber(std::vector<ConceptNode>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].id = i;
}

void check_labels(const std::vector<ConceptNode>& nodes, std::string_view what, ValidationReport& report) {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& label = nodes[i].label;
        if (label.empty()) {
            report.add("empty_label", std::string(what) + " node " + std::to_string(i) + " has an empty label");
        } else if (!seen.insert(label).second) {
            report.add("duplicate_label", "duplicate " + std::string(what) + " label '" + label + "'");
        }
        if (nodes[i].id != i)
            report.add("node_id", std::string(what) + " node '" + label + "' has id " + std::to_string(nodes[i].id) +
                                      ", expected " + std::to_string(i));
    }
}

void check_simple(const WeightMatrix& w, bool neutrosophic, ValidationReport& report) {
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) {
            const auto& v = w(i, j);
            if (!is_simple_weight(v))
                report.add("not_simple", "weight " + v.to_string() + " at (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ") is not in {-1, 0, 1" +
                                             (neutrosophic ? ", I}" : "}"));
        }
}

}  // namespace

CognitiveMap::CognitiveMap(std::vector<ConceptNode> nodes, WeightMatrix weights, Metadata metadata)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), metadata_(std::move(metadata)) {}

MapKind CognitiveMap::kind() const noexcept {
    return all_crisp(weights_) ? MapKind::fcm : MapKind::ncm;
}

RelationalMap::RelationalMap(std::vector<ConceptNode> domain, std::vector<ConceptNode> range, WeightMatrix weights,
                             Metadata metadata)
    : domain_(std::move(domain)),
      range_(std::move(range)),
      weights_(std::move(weights)),
      metadata_(std::move(metadata)) {}

MapKind RelationalMap::kind() const noexcept {
    return all_crisp(weights_) ? MapKind::frm : MapKind::nrm;
}

bool is_simple_weight(const NeutroValue& w) noexcept {
    if (w.is_crisp()) {
        const auto& r = w.real_part();
        return r == Rational{0} || r == Rational{1} || r == Rational{-1};
    }
    return w == NeutroValue::indeterminate();
}

ValidationReport validate(const CognitiveMap& map, ValidateOptions options) {
    ValidationReport report;
    const auto& w = map.weights();
    if (!w.is_square()) {
        report.add("not_square", "matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                     ", not square");
    }
    if (w.rows() != map.size() || w.cols() != map.size()) {
        report.add("dimension", "matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                    " but the map declares " + std::to_string(map.size()) + " nodes");
    }
    check_labels(map.nodes(), "concept", report);
    const std::size_t diag = std::min(w.rows(), w.cols());
    for (std::size_t i = 0; i < diag; ++i)
        if (!w(i, i).is_zero()) report.add("nonzero_diagonal", "nonzero diagonal at node " + std::to_string(i));
    if (options.require_simple) check_simple(w, map.kind() == MapKind::ncm, report);
    return report;
}

ValidationReport validate(const RelationalMap& map, ValidateOptions options) {
    ValidationReport report;
    const auto& w = map.weights();
    if (w.rows() != map.domain_nodes().size() || w.cols() != map.range_nodes().size()) {
        report.add("dimension", "matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                    " but the map declares " + std::to_string(map.domain_nodes().size()) +
                                    " domain and " + std::to_string(map.range_nodes().size()) + " range nodes");
    }
    check_labels(map.domain_nodes(), "domain", report);
    check_labels(map.range_nodes(), "range", report);
    for (const auto& d : map.domain_nodes())
        if (!d.label.empty() && find_label(map.range_nodes(), d.label))
            report.add("not_disjoint", "label '" + d.label + "' appears in both domain and range");
    if (options.require_simple) check_simple(w, map.kind() == MapKind::nrm, report);
    return report;
}

namespace {

std::vector<Rational> resolve_weights(std::size_t count, const CombineOptions& options) {
    if (count == 0) throw std::invalid_argument("combine needs at least one map");
    if (options.weights.empty()) return std::vector<Rational>(count, Rational{1});
    if (options.weights.size() != count)
        throw std::invalid_argument("combine got " + std::to_string(options.weights.size()) + " weights for " +
                                    std::to_string(count) + " maps");
    for (const auto& w : options.weights)
        if (w.sign() < 0) throw std::invalid_argument("combine weight " + w.to_string() + " is negative");
    return options.weights;
}

// Ordered union of labels; keeps the first description seen.
class LabelUnion {
public:
    std::size_t add(const ConceptNode& node) {
        auto [it, inserted] = index_.try_emplace(node.label, nodes_.size());
        if (inserted) {
            nodes_.push_back(node);
        } else if (!nodes_[it->second].description && node.description) {
            nodes_[it->second].description = node.description;
        }
        return it->second;
    }
    std::vector<ConceptNode> take() {
        renumber(nodes_);
        return std::move(nodes_);
    }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<ConceptNode> nodes_;
};

void require_shape(const WeightMatrix& w, std::size_t rows, std::size_t cols) {
    if (w.rows() != rows || w.cols() != cols) throw std::invalid_argument("combine input has a malformed matrix");
}

}  // namespace

CognitiveMap combine(std::span<const CognitiveMap> maps, const CombineOptions& options) {
    const auto scale_by = resolve_weights(maps.size(), options);

    LabelUnion labels;
    std::vector<std::vector<std::size_t>> index_maps;
    for (const auto& m : maps) {
        require_shape(m.weights(), m.size(), m.size());
        auto& idx = index_maps.emplace_back();
        for (const auto& n : m.nodes()) idx.push_back(labels.add(n));
    }

    WeightMatrix sum(labels.size(), labels.size());
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& w = maps[k].weights();
        const auto& idx = index_maps[k];
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) {
                if (i == j || w(i, j).is_zero()) continue;
                sum(idx[i], idx[j]) += scale(scale_by[k], w(i, j));
            }
    }
    if (options.normalize) {
        const Rational count{static_cast<std::int64_t>(maps.size())};
        for (std::size_t i = 0; i < sum.rows(); ++i)
            for (std::size_t j = 0; j < sum.cols(); ++j) {
                auto& v = sum(i, j);
                v = {v.real_part() / count, v.indet_part() / count};
            }
    }
    return {labels.take(), std::move(sum)};
}

RelationalMap combine(std::span<const RelationalMap> maps, const CombineOptions& options) {
    const auto scale_by = resolve_weights(maps.size(), options);

    LabelUnion domain;
    LabelUnion range;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> index_maps;
    for (const auto& m : maps) {
        require_shape(m.weights(), m.domain_nodes().size(), m.range_nodes().size());
        auto& [di, ri] = index_maps.emplace_back();
        for (const auto& n : m.domain_nodes()) di.push_back(domain.add(n));
        for (const auto& n : m.range_nodes()) ri.push_back(range.add(n));
    }

    WeightMatrix sum(domain.size(), range.size());
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& w = maps[k].weights();
        const auto& [di, ri] = index_maps[k];
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j)
                if (!w(i, j).is_zero()) sum(di[i], ri[j]) += scale(scale_by[k], w(i, j));
    }
    if (options.normalize) {
        const Rational count{static_cast<std::int64_t>(maps.size())};
        for (std::size_t i = 0; i < sum.rows(); ++i)
            for (std::size_t j = 0; j < sum.cols(); ++j) {
                auto& v = sum(i, j);
                v = {v.real_part() / count, v.indet_part() / count};
            }
    }
    return {domain.take(), range.take(), std::move(sum)};
}

RelationalMap transpose(const RelationalMap& map) {
    return {map.range_nodes(), map.domain_nodes(), map.weights().transposed(), map.metadata()};
}

}  // namespace cogmap

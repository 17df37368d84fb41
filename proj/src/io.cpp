#include "cogmap/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#ifndef COGMAP_DEFAULT_DATA_DIR
#define COGMAP_DEFAULT_DATA_DIR "data"
#endif

namespace cogmap {

namespace fs = std::filesystem;

namespace {

std::string join_findings(const std::vector<Finding>& findings) {
    std::string out = "invalid document";
    for (const auto& f : findings) out += "\n  " + f.message;
    return out;
}

class Findings {
public:
    void add(std::string code, const std::string& where, const std::string& message) {
        list_.push_back({std::move(code), where.empty() ? message : where + ": " + message});
    }
    [[nodiscard]] bool empty() const { return list_.empty(); }
    void throw_if_any() {
        if (!list_.empty()) throw DocumentError(std::move(list_));
    }
    std::vector<Finding>& list() { return list_; }

private:
    std::vector<Finding> list_;
};

std::string at(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

std::string in_quotes(std::string_view s) {
    return "'" + std::string(s) + "'";
}

std::vector<ConceptNode> parse_nodes(const Json& doc, const std::string& key, Findings& findings) {
    std::vector<ConceptNode> nodes;
    auto it = doc.find(key);
    if (it == doc.end()) {
        findings.add("missing_field", key, "field is required");
        return nodes;
    }
    if (!it->is_array()) {
        findings.add("type", key, "must be an array");
        return nodes;
    }
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& entry = (*it)[i];
        const auto where = at(key, i);
        ConceptNode node;
        node.id = nodes.size();
        if (entry.is_string()) {
            node.label = entry.get<std::string>();
        } else if (entry.is_object()) {
            auto label = entry.find("label");
            if (label == entry.end() || !label->is_string()) {
                findings.add("type", where + ".label", "must be a string");
                continue;
            }
            node.label = label->get<std::string>();
            if (auto d = entry.find("description"); d != entry.end() && !d->is_null()) {
                if (d->is_string())
                    node.description = d->get<std::string>();
                else
                    findings.add("type", where + ".description", "must be a string");
            }
        } else {
            findings.add("type", where, "must be a label string or an object with a label");
            continue;
        }
        if (node.label.empty()) {
            findings.add("empty_label", where, "label is empty");
            continue;
        }
        auto [prev, inserted] = seen.emplace(node.label, i);
        if (!inserted) {
            findings.add("duplicate_label", where,
                         "duplicate label " + in_quotes(node.label) + " (first at " + at(key, prev->second) + ")");
            continue;
        }
        nodes.push_back(std::move(node));
    }
    return nodes;
}

Metadata parse_metadata(const Json& doc, Findings& findings) {
    Metadata meta;
    auto it = doc.find("metadata");
    if (it == doc.end() || it->is_null()) return meta;
    if (!it->is_object()) {
        findings.add("type", "metadata", "must be an object");
        return meta;
    }
    for (const auto& [key, value] : it->items()) {
        if (value.is_string())
            meta.emplace(key, value.get<std::string>());
        else
            findings.add("type", "metadata." + key, "must be a string");
    }
    return meta;
}

WeightMatrix parse_edges(const Json& doc, const std::vector<ConceptNode>& from_nodes,
                         const std::vector<ConceptNode>& to_nodes, bool cognitive, Findings& findings) {
    WeightMatrix w(from_nodes.size(), to_nodes.size());
    auto it = doc.find("edges");
    if (it == doc.end() || it->is_null()) return w;
    if (!it->is_array()) {
        findings.add("type", "edges", "must be an array");
        return w;
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t e = 0; e < it->size(); ++e) {
        const auto& edge = (*it)[e];
        const auto where = at("edges", e);
        if (!edge.is_object()) {
            findings.add("type", where, "must be an object");
            continue;
        }
        bool ok = true;
        auto endpoint = [&](const char* key, const std::vector<ConceptNode>& nodes) -> std::optional<std::size_t> {
            auto f = edge.find(key);
            if (f == edge.end() || !f->is_string()) {
                findings.add("type", where + "." + key, "must be a label string");
                ok = false;
                return std::nullopt;
            }
            auto idx = find_label(nodes, f->get<std::string>());
            if (!idx) {
                findings.add("unknown_label", where + "." + key, "unknown label " + in_quotes(f->get<std::string>()));
                ok = false;
            }
            return idx;
        };
        auto from = endpoint("from", from_nodes);
        auto to = endpoint("to", to_nodes);

        NeutroValue weight;
        auto wf = edge.find("weight");
        if (wf == edge.end() || !wf->is_string()) {
            findings.add("type", where + ".weight", "must be a weight string");
            ok = false;
        } else {
            try {
                weight = NeutroValue::parse(wf->get<std::string>());
            } catch (const WeightParseError& err) {
                findings.add("malformed_weight", where + ".weight", err.what());
                ok = false;
            } catch (const std::overflow_error&) {
                findings.add("malformed_weight", where + ".weight", "weight out of range");
                ok = false;
            }
        }
        if (!from || !to) continue;
        if (cognitive && *from == *to) {
            findings.add("self_loop", where, "self-loop on " + in_quotes(from_nodes[*from].label));
            continue;
        }
        auto [prev, inserted] = seen.emplace(std::pair{*from, *to}, e);
        if (!inserted) {
            findings.add("duplicate_edge", where,
                         "duplicate edge " + in_quotes(from_nodes[*from].label) + " -> " + in_quotes(to_nodes[*to].label) +
                             " (first at " + at("edges", prev->second) + ")");
            continue;
        }
        if (ok) w(*from, *to) = weight;
    }
    return w;
}

Json nodes_to_json(const std::vector<ConceptNode>& nodes) {
    Json arr = Json::array();
    for (const auto& n : nodes) {
        Json j = {{"label", n.label}};
        if (n.description) j["description"] = *n.description;
        arr.push_back(std::move(j));
    }
    return arr;
}

Json edges_to_json(const WeightMatrix& w, const std::vector<ConceptNode>& from, const std::vector<ConceptNode>& to) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (!w(i, j).is_zero())
                arr.push_back({{"from", from[i].label}, {"to", to[j].label}, {"weight", w(i, j).to_string()}});
    return arr;
}

Json metadata_to_json(const Metadata& meta) {
    Json j = Json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    return j;
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& err) {
        throw DocumentError("json", std::string("invalid JSON: ") + err.what());
    }
}

}  // namespace

DocumentError::DocumentError(std::vector<Finding> findings)
    : std::runtime_error(join_findings(findings)), findings_(std::move(findings)) {}

DocumentError::DocumentError(std::string code, std::string message)
    : DocumentError(std::vector<Finding>{{std::move(code), std::move(message)}}) {}

MapKind kind_of(const AnyMap& map) {
    return std::visit([](const auto& m) { return m.kind(); }, map);
}

const Metadata& metadata_of(const AnyMap& map) {
    return std::visit([](const auto& m) -> const Metadata& { return m.metadata(); }, map);
}

bool is_relational(const AnyMap& map) noexcept {
    return std::holds_alternative<RelationalMap>(map);
}

AnyMap load_map(const Json& doc) {
    Findings findings;
    if (!doc.is_object()) {
        findings.add("type", "", "document must be a JSON object");
        findings.throw_if_any();
    }

    auto version = doc.find("format_version");
    if (version == doc.end()) {
        findings.add("missing_field", "format_version", "field is required");
    } else if (!version->is_string()) {
        findings.add("type", "format_version", "must be a string");
    } else {
        const auto v = version->get<std::string>();
        if (v.substr(0, v.find('.')) != "1")
            findings.add("unsupported_version", "format_version", "unsupported version " + in_quotes(v));
    }

    std::string kind;
    if (auto k = doc.find("kind"); k == doc.end()) {
        findings.add("missing_field", "kind", "field is required");
    } else if (!k->is_string() || (*k != "cognitive" && *k != "relational")) {
        findings.add("bad_kind", "kind", "must be \"cognitive\" or \"relational\"");
    } else {
        kind = k->get<std::string>();
    }
    findings.throw_if_any();

    Metadata meta = parse_metadata(doc, findings);
    if (kind == "cognitive") {
        auto nodes = parse_nodes(doc, "nodes", findings);
        auto w = parse_edges(doc, nodes, nodes, true, findings);
        findings.throw_if_any();
        CognitiveMap map(std::move(nodes), std::move(w), std::move(meta));
        auto report = validate(map);
        if (!report.ok()) throw DocumentError(std::move(report.findings));
        return map;
    }
    auto domain = parse_nodes(doc, "domain_nodes", findings);
    auto range = parse_nodes(doc, "range_nodes", findings);
    auto w = parse_edges(doc, domain, range, false, findings);
    findings.throw_if_any();
    RelationalMap map(std::move(domain), std::move(range), std::move(w), std::move(meta));
    auto report = validate(map);
    if (!report.ok()) throw DocumentError(std::move(report.findings));
    return map;
}

AnyMap load_map_text(std::string_view text) {
    return load_map(parse_json_text(text));
}

AnyMap load_map_file(const fs::path& path) {
    try {
        return load_map_text(read_file(path));
    } catch (const DocumentError& err) {
        auto findings = err.findings();
        for (auto& f : findings) f.message = path.string() + ": " + f.message;
        throw DocumentError(std::move(findings));
    }
}

Json save_map(const AnyMap& map) {
    Json doc;
    doc["format_version"] = "1";
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) {
        doc["kind"] = "cognitive";
        doc["nodes"] = nodes_to_json(cm->nodes());
        doc["edges"] = edges_to_json(cm->weights(), cm->nodes(), cm->nodes());
        if (!cm->metadata().empty()) doc["metadata"] = metadata_to_json(cm->metadata());
    } else {
        const auto& rm = std::get<RelationalMap>(map);
        doc["kind"] = "relational";
        doc["domain_nodes"] = nodes_to_json(rm.domain_nodes());
        doc["range_nodes"] = nodes_to_json(rm.range_nodes());
        doc["edges"] = edges_to_json(rm.weights(), rm.domain_nodes(), rm.range_nodes());
        if (!rm.metadata().empty()) doc["metadata"] = metadata_to_json(rm.metadata());
    }
    return doc;
}

void save_map_file(const AnyMap& map, const fs::path& path) {
    write_file(path, save_map(map).dump(2) + "\n");
}

ScenarioDocument parse_scenario(const Json& doc) {
    Findings findings;
    ScenarioDocument sc;
    if (!doc.is_object()) {
        findings.add("type", "", "scenario must be a JSON object");
        findings.throw_if_any();
    }

    auto labels = [&](const char* key, std::vector<std::string>& out) {
        auto it = doc.find(key);
        if (it == doc.end() || it->is_null()) return;
        if (!it->is_array()) {
            findings.add("type", key, "must be an array of labels");
            return;
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            if ((*it)[i].is_string())
                out.push_back((*it)[i].get<std::string>());
            else
                findings.add("type", at(key, i), "must be a label string");
        }
    };

    if (auto m = doc.find("map"); m != doc.end() && !m->is_null()) {
        if (m->is_string())
            sc.map = m->get<std::string>();
        else
            findings.add("type", "map", "must be a string");
    }
    labels("on", sc.on);
    labels("indeterminate", sc.indeterminate);

    if (auto c = doc.find("clamp"); c != doc.end() && !c->is_null()) {
        if (*c == "auto") {
            sc.clamp.mode = ClampSpec::Mode::automatic;
        } else if (*c == "none") {
            sc.clamp.mode = ClampSpec::Mode::none;
        } else if (c->is_array()) {
            sc.clamp.mode = ClampSpec::Mode::labels;
            labels("clamp", sc.clamp.labels);
        } else {
            findings.add("type", "clamp", "must be \"auto\", \"none\" or an array of labels");
        }
    }

    if (auto s = doc.find("side"); s != doc.end() && !s->is_null()) {
        if (*s == "domain")
            sc.side = Side::domain;
        else if (*s == "range")
            sc.side = Side::range;
        else
            findings.add("bad_side", "side", "must be \"domain\" or \"range\"");
    }

    if (auto t = doc.find("threshold"); t != doc.end() && !t->is_null()) {
        try {
            Rational k;
            if (t->is_string())
                k = Rational::parse(t->get<std::string>());
            else if (t->is_number_integer())
                k = Rational{t->get<std::int64_t>()};
            else if (t->is_number())
                k = Rational::parse(t->dump());
            else
                throw std::invalid_argument("not a number");
            if (k.sign() <= 0)
                findings.add("bad_threshold", "threshold", "must be positive");
            else
                sc.threshold = k;
        } catch (const std::exception&) {
            findings.add("bad_threshold", "threshold", "must be a positive number");
        }
    }

    if (auto n = doc.find("max_iters"); n != doc.end() && !n->is_null()) {
        if (n->is_number_unsigned() && n->get<std::uint64_t>() >= 1)
            sc.max_iters = n->get<std::size_t>();
        else
            findings.add("bad_max_iters", "max_iters", "must be a positive integer");
    }
    findings.throw_if_any();
    return sc;
}

ScenarioDocument load_scenario_file(const fs::path& path) {
    return parse_scenario(parse_json_text(read_file(path)));
}

Json scenario_to_json(const ScenarioDocument& sc) {
    Json doc;
    if (sc.map) doc["map"] = *sc.map;
    doc["on"] = sc.on;
    if (!sc.indeterminate.empty()) doc["indeterminate"] = sc.indeterminate;
    switch (sc.clamp.mode) {
        case ClampSpec::Mode::automatic: doc["clamp"] = "auto"; break;
        case ClampSpec::Mode::none: doc["clamp"] = "none"; break;
        case ClampSpec::Mode::labels: doc["clamp"] = sc.clamp.labels; break;
    }
    if (sc.side) doc["side"] = std::string(to_string(*sc.side));
    if (sc.threshold) doc["threshold"] = sc.threshold->to_string();
    if (sc.max_iters) doc["max_iters"] = *sc.max_iters;
    return doc;
}

ResolvedScenario resolve(const ScenarioDocument& sc, const AnyMap& map) {
    ResolvedScenario out;
    const std::vector<ConceptNode>* nodes = nullptr;
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) {
        if (sc.side) throw DocumentError("bad_side", "side: only relational maps have sides");
        nodes = &cm->nodes();
    } else {
        const auto& rm = std::get<RelationalMap>(map);
        out.side = sc.side.value_or(Side::domain);
        nodes = out.side == Side::domain ? &rm.domain_nodes() : &rm.range_nodes();
    }

    const std::string side_note = is_relational(map) ? " (" + std::string(to_string(out.side)) + " side)" : "";
    auto index = [&](const std::string& label, const char* field) {
        auto idx = find_label(*nodes, label);
        if (!idx) throw LabelError(label, std::string(field) + side_note);
        return *idx;
    };

    std::vector<std::size_t> on;
    for (const auto& l : sc.on) on.push_back(index(l, "on"));

    out.initial.values.assign(nodes->size(), Activation::off);
    for (auto i : on) out.initial.values[i] = Activation::on;
    for (const auto& l : sc.indeterminate) {
        auto i = index(l, "indeterminate");
        if (out.initial.values[i] == Activation::on)
            throw DocumentError("conflict", "indeterminate: " + in_quotes(l) + " is also listed in on");
        out.initial.values[i] = Activation::indeterminate;
    }

    std::vector<std::size_t> clamped;
    switch (sc.clamp.mode) {
        case ClampSpec::Mode::automatic: clamped = on; break;
        case ClampSpec::Mode::none: break;
        case ClampSpec::Mode::labels:
            for (const auto& l : sc.clamp.labels) clamped.push_back(index(l, "clamp"));
            break;
    }
    std::sort(clamped.begin(), clamped.end());
    clamped.erase(std::unique(clamped.begin(), clamped.end()), clamped.end());
    for (auto i : clamped) out.initial.values[i] = Activation::on;
    out.initial.clamped = std::move(clamped);

    if (sc.threshold) out.options.policy.k = *sc.threshold;
    if (sc.max_iters) out.options.max_iters = *sc.max_iters;
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::vector<std::string>> split_grid(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find_first_of("\n;", start);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim(text.substr(start, end - start));
        if (!line.empty()) {
            std::vector<std::string> cells;
            std::size_t c = 0;
            while (true) {
                auto comma = line.find(',', c);
                cells.emplace_back(trim(line.substr(c, comma == std::string_view::npos ? line.npos : comma - c)));
                if (comma == std::string_view::npos) break;
                c = comma + 1;
            }
            rows.push_back(std::move(cells));
        }
        start = end + 1;
    }
    return rows;
}

std::vector<std::string> default_labels(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

}  // namespace

AnyMap import_csv(std::string_view text, const CsvOptions& options) {
    Findings findings;
    auto grid = split_grid(text);
    if (grid.empty()) {
        findings.add("empty", "csv", "no rows");
        findings.throw_if_any();
    }

    std::vector<std::string> col_labels;
    std::vector<std::string> row_labels;
    std::size_t first_row = 0;
    std::size_t first_col = 0;
    if (options.header) {
        col_labels.assign(grid[0].begin() + 1, grid[0].end());
        first_row = 1;
        first_col = 1;
    }
    const std::size_t width = grid[0].size();
    const std::size_t rows = grid.size() - first_row;
    const std::size_t cols = width - first_col;

    WeightMatrix w(rows, cols);
    for (std::size_t r = first_row; r < grid.size(); ++r) {
        const auto where = "row " + std::to_string(r + 1);
        const auto& cells = grid[r];
        if (cells.size() != width) {
            findings.add("ragged", where,
                         "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
            continue;
        }
        if (options.header) row_labels.push_back(cells[0]);
        for (std::size_t c = first_col; c < cells.size(); ++c) {
            try {
                w(r - first_row, c - first_col) = NeutroValue::parse(cells[c]);
            } catch (const std::exception& err) {
                findings.add("malformed_weight", where + ", column " + std::to_string(c + 1), err.what());
            }
        }
    }
    findings.throw_if_any();

    if (!options.header) {
        if (options.relational) {
            row_labels = options.labels.empty() ? default_labels("D", rows) : options.labels;
            col_labels = options.range_labels.empty() ? default_labels("R", cols) : options.range_labels;
        } else {
            row_labels = options.labels.empty() ? default_labels("C", cols) : options.labels;
            col_labels = row_labels;
        }
        if (row_labels.size() != rows)
            findings.add("label_count", "labels",
                         std::to_string(row_labels.size()) + " labels for " + std::to_string(rows) + " rows");
        if (col_labels.size() != cols)
            findings.add("label_count", "labels",
                         std::to_string(col_labels.size()) + " labels for " + std::to_string(cols) + " columns");
    } else if (!options.relational) {
        for (std::size_t i = 0; i < std::min(row_labels.size(), col_labels.size()); ++i)
            if (row_labels[i] != col_labels[i])
                findings.add("label_mismatch", "row " + std::to_string(i + 2),
                             "label " + in_quotes(row_labels[i]) + " does not match column label " +
                                 in_quotes(col_labels[i]));
    }
    findings.throw_if_any();

    if (options.relational) return RelationalMap(make_nodes(row_labels), make_nodes(col_labels), std::move(w));
    return CognitiveMap(make_nodes(col_labels), std::move(w));
}

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void dot_edges(std::ostringstream& out, const WeightMatrix& w, const char* from_prefix, const char* to_prefix) {
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) {
            const auto& v = w(i, j);
            if (v.is_zero()) continue;
            out << "  " << from_prefix << i << " -> " << to_prefix << j << " [label=" << dot_quote(v.to_string());
            if (v.real_part().sign() < 0)
                out << ", color=red, arrowhead=tee";
            else
                out << ", color=black";
            if (!v.indet_part().is_zero()) out << ", style=dashed";
            out << "];\n";
        }
}

void dot_nodes(std::ostringstream& out, const std::vector<ConceptNode>& nodes, const char* prefix,
               const char* extra) {
    for (const auto& n : nodes) out << "  " << prefix << n.id << " [label=" << dot_quote(n.label) << extra << "];\n";
}

}  // namespace

std::string export_dot(const AnyMap& map) {
    std::ostringstream out;
    out << "digraph cogmap {\n";
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) {
        dot_nodes(out, cm->nodes(), "n", "");
        dot_edges(out, cm->weights(), "n", "n");
    } else {
        const auto& rm = std::get<RelationalMap>(map);
        out << "  rankdir=LR;\n";
        dot_nodes(out, rm.domain_nodes(), "d", ", shape=box");
        dot_nodes(out, rm.range_nodes(), "r", ", shape=ellipse");
        dot_edges(out, rm.weights(), "d", "r");
    }
    out << "}\n";
    return out.str();
}

fs::path data_dir() {
    if (const char* env = std::getenv("COGMAP_DATA_DIR"); env && *env) return env;
    return COGMAP_DEFAULT_DATA_DIR;
}

std::vector<BundledMap> load_dataset_dir(const fs::path& dir) {
    static constexpr std::string_view ext = ".cogmap.json";
    std::vector<BundledMap> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (name.size() <= ext.size() || !name.ends_with(ext)) continue;
        out.push_back({name.substr(0, name.size() - ext.size()), entry.path(), load_map_file(entry.path())});
    }
    if (ec) throw DocumentError("not_found", "cannot read dataset directory " + dir.string());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

AnyMap load_map_ref(const std::string& ref) {
    const fs::path direct(ref);
    std::error_code ec;
    if (fs::is_regular_file(direct, ec)) {
        if (direct.extension() == ".csv") {
            try {
                return import_csv(read_file(direct));
            } catch (const DocumentError& err) {
                auto findings = err.findings();
                for (auto& f : findings) f.message = ref + ": " + f.message;
                throw DocumentError(std::move(findings));
            }
        }
        return load_map_file(direct);
    }
    const auto bundled = data_dir() / (ref + ".cogmap.json");
    if (fs::is_regular_file(bundled, ec)) return load_map_file(bundled);
    throw DocumentError("not_found", "no map file or bundled dataset named " + in_quotes(ref));
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("io", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DocumentError("io", "cannot write " + path.string());
    out << content;
    if (!out) throw DocumentError("io", "failed writing " + path.string());
}

}  // namespace cogmap

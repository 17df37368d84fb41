#include "cogmap/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace cogmap {

namespace {

Json state_json(const State& s) {
    Json arr = Json::array();
    for (auto a : s) arr.push_back(std::string(to_string(a)));
    return arr;
}

Json raw_json(const std::vector<NeutroValue>& raw) {
    Json arr = Json::array();
    for (const auto& v : raw) arr.push_back(v.to_string());
    return arr;
}

Json labelled(const std::vector<ConceptNode>& nodes, const State& s) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < nodes.size(); ++i) obj[nodes[i].label] = std::string(to_string(s[i]));
    return obj;
}

Json labels_json(const std::vector<ConceptNode>& nodes) {
    Json arr = Json::array();
    for (const auto& n : nodes) arr.push_back(n.label);
    return arr;
}

Json clamped_json(const std::vector<ConceptNode>& nodes, const std::vector<std::size_t>& clamped) {
    Json arr = Json::array();
    for (auto i : clamped) arr.push_back(nodes[i].label);
    return arr;
}

std::string compact(const State& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ' ';
        out += to_string(s[i]);
    }
    return out + ")";
}

std::string compact(const std::vector<NeutroValue>& raw) {
    std::string out = "(";
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (i) out += ' ';
        out += raw[i].to_string();
    }
    return out + ")";
}

void outcome_fields(Json& report, const HiddenPattern& hp) {
    report["outcome"] = std::string(to_string(hp.outcome));
    report["iterations"] = hp.iterations;
    if (hp.outcome != Outcome::not_converged) report["entry_step"] = hp.entry;
    if (hp.outcome == Outcome::limit_cycle) report["period"] = hp.period;
}

const std::vector<ConceptNode>& start_nodes(const AnyMap& map, Side side) {
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) return cm->nodes();
    const auto& rm = std::get<RelationalMap>(map);
    return side == Side::domain ? rm.domain_nodes() : rm.range_nodes();
}

std::size_t label_width(const std::vector<ConceptNode>& nodes, std::size_t minimum) {
    std::size_t w = minimum;
    for (const auto& n : nodes) w = std::max(w, n.label.size());
    return w;
}

std::string header_line(const AnyMap& map, std::string_view id) {
    std::ostringstream out;
    out << "map: " << (id.empty() ? "(unnamed)" : id) << " (" << to_string(kind_of(map)) << ", ";
    if (const auto* cm = std::get_if<CognitiveMap>(&map))
        out << cm->size() << " nodes)";
    else {
        const auto& rm = std::get<RelationalMap>(map);
        out << rm.domain_nodes().size() << " domain x " << rm.range_nodes().size() << " range nodes)";
    }
    return out.str();
}

std::string outcome_line(const HiddenPattern& hp) {
    std::string out = "outcome: " + describe(hp.outcome, hp.period);
    if (hp.outcome == Outcome::not_converged)
        out += " after " + std::to_string(hp.iterations) + " iterations";
    else
        out += " (entered at step " + std::to_string(hp.entry) + ", " + std::to_string(hp.iterations) +
               " iterations)";
    return out;
}

std::size_t count(const State& s, Activation a) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), a));
}

}  // namespace

RunResult run(const AnyMap& map, const ResolvedScenario& scenario) {
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) return hidden_pattern(*cm, scenario.initial, scenario.options);
    return relational_hidden_pattern(std::get<RelationalMap>(map), scenario.initial, scenario.side, scenario.options);
}

SweepResult run_sweep(const AnyMap& map, Side side, const RunOptions& options) {
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) return sweep(*cm, options);
    return sweep(std::get<RelationalMap>(map), side, options);
}

Outcome outcome_of(const RunResult& result) {
    if (const auto* hp = std::get_if<HiddenPattern>(&result)) return hp->outcome;
    return std::get<RelationalPattern>(result).outcome();
}

std::string describe(Outcome outcome, std::size_t period) {
    switch (outcome) {
        case Outcome::fixed_point: return "fixed point";
        case Outcome::limit_cycle: return "limit cycle, period " + std::to_string(period);
        case Outcome::not_converged: return "not converged";
    }
    return "unknown";
}

Json report_json(const AnyMap& map, const ResolvedScenario& scenario, const RunResult& result,
                 const ReportContext& context) {
    Json report;
    report["map"] = context.map_id;
    report["kind"] = std::string(to_string(kind_of(map)));

    if (const auto* hp = std::get_if<HiddenPattern>(&result)) {
        const auto& nodes = std::get<CognitiveMap>(map).nodes();
        report["threshold"] = scenario.options.policy.k.to_string();
        report["clamped"] = clamped_json(nodes, scenario.initial.clamped);
        outcome_fields(report, *hp);
        report["final"] = labelled(nodes, hp->final_state());
        report["labels"] = labels_json(nodes);
        Json cycle = Json::array();
        for (const auto& s : hp->cycle()) cycle.push_back(state_json(s));
        report["cycle"] = std::move(cycle);
        if (context.trace) {
            Json traj = Json::array();
            for (std::size_t k = 0; k < hp->trajectory.size(); ++k) {
                Json entry = {{"step", k}};
                if (k > 0) entry["raw"] = raw_json(hp->raw[k - 1]);
                entry["state"] = state_json(hp->trajectory[k]);
                traj.push_back(std::move(entry));
            }
            report["trajectory"] = std::move(traj);
        }
        return report;
    }

    const auto& rp = std::get<RelationalPattern>(result);
    const auto& rm = std::get<RelationalMap>(map);
    report["start_side"] = std::string(to_string(rp.start_side));
    report["threshold"] = scenario.options.policy.k.to_string();
    report["clamped"] = clamped_json(start_nodes(map, rp.start_side), scenario.initial.clamped);
    outcome_fields(report, rp.start());
    report["final"] = {{"domain", labelled(rm.domain_nodes(), rp.domain.final_state())},
                       {"range", labelled(rm.range_nodes(), rp.range.final_state())}};
    report["labels"] = {{"domain", labels_json(rm.domain_nodes())}, {"range", labels_json(rm.range_nodes())}};
    Json cycle = Json::array();
    const auto dc = rp.domain.cycle();
    const auto rc = rp.range.cycle();
    for (std::size_t i = 0; i < dc.size(); ++i)
        cycle.push_back({{"domain", state_json(dc[i])}, {"range", state_json(rc[i])}});
    report["cycle"] = std::move(cycle);
    if (context.trace) {
        const bool from_domain = rp.start_side == Side::domain;
        const auto& start = rp.start();
        const auto& other = from_domain ? rp.range : rp.domain;
        Json traj = Json::array();
        for (std::size_t k = 0; k < start.trajectory.size(); ++k) {
            Json s = Json::object();
            if (k > 0) s["raw"] = raw_json(start.raw[k - 1]);
            s["state"] = state_json(start.trajectory[k]);
            Json o = {{"raw", raw_json(other.raw[k])}, {"state", state_json(other.trajectory[k])}};
            Json entry = {{"step", k}};
            entry["domain"] = from_domain ? std::move(s) : std::move(o);
            entry["range"] = from_domain ? std::move(o) : std::move(s);
            traj.push_back(std::move(entry));
        }
        report["trajectory"] = std::move(traj);
    }
    return report;
}

std::string report_table(const AnyMap& map, const ResolvedScenario& scenario, const RunResult& result,
                         const ReportContext& context) {
    std::ostringstream out;
    out << header_line(map, context.map_id) << "\n";

    if (const auto* hp = std::get_if<HiddenPattern>(&result)) {
        const auto& nodes = std::get<CognitiveMap>(map).nodes();
        out << outcome_line(*hp) << "\n\n";
        const auto w = label_width(nodes, 4);
        const auto& fin = hp->final_state();
        out << std::left << std::setw(static_cast<int>(w)) << "node" << "  final\n";
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const bool clamped = std::binary_search(scenario.initial.clamped.begin(), scenario.initial.clamped.end(), i);
            out << std::left << std::setw(static_cast<int>(w)) << nodes[i].label << "  " << to_string(fin[i])
                << (clamped ? "  (clamped)" : "") << "\n";
        }
        if (hp->outcome == Outcome::limit_cycle) {
            out << "\ncycle:\n";
            for (const auto& s : hp->cycle()) out << "  " << compact(s) << "\n";
        }
        if (context.trace) {
            out << "\ntrajectory:\n";
            for (std::size_t k = 0; k < hp->trajectory.size(); ++k) {
                out << "  " << std::setw(4) << std::right << k << "  ";
                if (k > 0) out << compact(hp->raw[k - 1]) << " -> ";
                out << compact(hp->trajectory[k]) << "\n";
            }
        }
        return out.str();
    }

    const auto& rp = std::get<RelationalPattern>(result);
    const auto& rm = std::get<RelationalMap>(map);
    out << "start side: " << to_string(rp.start_side) << "\n";
    out << outcome_line(rp.start()) << "\n";
    auto side_table = [&](const char* title, const std::vector<ConceptNode>& nodes, const HiddenPattern& hp) {
        const auto w = label_width(nodes, 4);
        out << "\n" << title << "\n";
        out << std::left << std::setw(static_cast<int>(w)) << "node" << "  final\n";
        const auto& fin = hp.final_state();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            out << std::left << std::setw(static_cast<int>(w)) << nodes[i].label << "  " << to_string(fin[i]) << "\n";
    };
    side_table("domain", rm.domain_nodes(), rp.domain);
    side_table("range", rm.range_nodes(), rp.range);
    if (context.trace) {
        const bool from_domain = rp.start_side == Side::domain;
        const auto& start = rp.start();
        const auto& other = from_domain ? rp.range : rp.domain;
        out << "\ntrajectory (" << to_string(rp.start_side) << " -> " << (from_domain ? "range" : "domain") << "):\n";
        for (std::size_t k = 0; k < start.trajectory.size(); ++k) {
            out << "  " << std::setw(4) << std::right << k << "  ";
            if (k > 0) out << compact(start.raw[k - 1]) << " -> ";
            out << compact(start.trajectory[k]) << "  |  " << compact(other.raw[k]) << " -> "
                << compact(other.trajectory[k]) << "\n";
        }
    }
    return out.str();
}

Json sweep_json(const AnyMap& map, Side side, const SweepResult& result, std::string_view map_id) {
    Json report;
    report["map"] = std::string(map_id);
    report["kind"] = std::string(to_string(kind_of(map)));
    Json rows = Json::array();
    if (const auto* cog = std::get_if<std::vector<SweepRow>>(&result)) {
        const auto& nodes = std::get<CognitiveMap>(map).nodes();
        for (const auto& r : *cog) {
            Json row = {{"start", nodes[r.start].label}};
            outcome_fields(row, r.pattern);
            row["on_count"] = r.on_count;
            row["indeterminate_count"] = r.indeterminate_count;
            row["final"] = labelled(nodes, r.pattern.final_state());
            rows.push_back(std::move(row));
        }
    } else {
        const auto& rm = std::get<RelationalMap>(map);
        report["start_side"] = std::string(to_string(side));
        const auto& starts = start_nodes(map, side);
        for (const auto& r : std::get<std::vector<RelationalSweepRow>>(result)) {
            Json row = {{"start", starts[r.start].label}};
            outcome_fields(row, r.pattern.start());
            row["final"] = {{"domain", labelled(rm.domain_nodes(), r.pattern.domain.final_state())},
                            {"range", labelled(rm.range_nodes(), r.pattern.range.final_state())}};
            rows.push_back(std::move(row));
        }
    }
    report["rows"] = std::move(rows);
    return report;
}

std::string sweep_table(const AnyMap& map, Side side, const SweepResult& result, std::string_view map_id) {
    std::ostringstream out;
    out << header_line(map, map_id) << "\n";
    const auto& starts = start_nodes(map, side);
    const auto w = label_width(starts, 5);
    if (is_relational(map)) out << "start side: " << to_string(side) << "\n";
    out << "\n"
        << std::left << std::setw(static_cast<int>(w)) << "start" << "  " << std::setw(22) << "outcome" << "  "
        << std::setw(5) << "iters" << "  " << std::setw(3) << "ON" << "  " << std::setw(3) << "I" << "  final\n";

    auto line = [&](std::size_t start, const HiddenPattern& hp, const std::string& fin, std::size_t on,
                    std::size_t ind) {
        out << std::left << std::setw(static_cast<int>(w)) << starts[start].label << "  " << std::setw(22)
            << describe(hp.outcome, hp.period) << "  " << std::setw(5) << hp.iterations << "  " << std::setw(3) << on
            << "  " << std::setw(3) << ind << "  " << fin << "\n";
    };
    if (const auto* cog = std::get_if<std::vector<SweepRow>>(&result)) {
        for (const auto& r : *cog)
            line(r.start, r.pattern, compact(r.pattern.final_state()), r.on_count, r.indeterminate_count);
    } else {
        for (const auto& r : std::get<std::vector<RelationalSweepRow>>(result)) {
            const auto& d = r.pattern.domain.final_state();
            const auto& rg = r.pattern.range.final_state();
            line(r.start, r.pattern.start(), compact(d) + " / " + compact(rg),
                 count(d, Activation::on) + count(rg, Activation::on),
                 count(d, Activation::indeterminate) + count(rg, Activation::indeterminate));
        }
    }
    return out.str();
}

Json map_summary(std::string_view id, const AnyMap& map) {
    Json j;
    j["id"] = std::string(id);
    j["kind"] = std::string(to_string(kind_of(map)));
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) {
        j["nodes"] = cm->size();
    } else {
        const auto& rm = std::get<RelationalMap>(map);
        j["domain_nodes"] = rm.domain_nodes().size();
        j["range_nodes"] = rm.range_nodes().size();
    }
    Json meta = Json::object();
    for (const auto& [k, v] : metadata_of(map)) meta[k] = v;
    j["metadata"] = std::move(meta);
    return j;
}

Json findings_json(const std::vector<Finding>& findings) {
    Json arr = Json::array();
    for (const auto& f : findings) arr.push_back({{"code", f.code}, {"message", f.message}});
    return arr;
}

}  // namespace cogmap

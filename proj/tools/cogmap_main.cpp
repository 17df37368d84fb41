// cogmap: command-line front end for cognitive and relational map inference.

#include "cogmap/io.hpp"
#include "cogmap/report.hpp"
#include "cogmap/service.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace cogmap;

namespace {

enum Exit : int { ok = 0, bad_input = 1, label_error = 2, not_converged = 3 };

std::string map_id_for(const std::string& ref) {
    std::error_code ec;
    if (!fs::is_regular_file(ref, ec)) return ref;
    auto name = fs::path(ref).filename().string();
    for (std::string_view ext : {".cogmap.json", ".json", ".csv"})
        if (name.size() > ext.size() && name.ends_with(ext)) return name.substr(0, name.size() - ext.size());
    return name;
}

void print_findings(const std::vector<Finding>& findings) {
    for (const auto& f : findings) std::cerr << "error: " << f.message << "\n";
}

struct MapArgs {
    std::string map;
    std::string format = "table";
};

struct InferArgs : MapArgs {
    std::string scenario;
    std::vector<std::string> on;
    std::vector<std::string> indeterminate;
    std::vector<std::string> clamp;
    std::string side;
    std::string threshold;
    std::optional<std::size_t> max_iters;
    bool trace = false;
};

ScenarioDocument scenario_from(const InferArgs& args) {
    ScenarioDocument sc;
    if (!args.scenario.empty()) sc = load_scenario_file(args.scenario);
    if (!args.on.empty()) sc.on = args.on;
    if (!args.indeterminate.empty()) sc.indeterminate = args.indeterminate;
    if (!args.clamp.empty()) {
        if (args.clamp.size() == 1 && args.clamp[0] == "auto") {
            sc.clamp = {};
        } else if (args.clamp.size() == 1 && args.clamp[0] == "none") {
            sc.clamp = {ClampSpec::Mode::none, {}};
        } else {
            sc.clamp = {ClampSpec::Mode::labels, args.clamp};
        }
    }
    if (!args.side.empty()) sc.side = args.side == "range" ? Side::range : Side::domain;
    if (!args.threshold.empty()) {
        Rational k;
        try {
            k = Rational::parse(args.threshold);
        } catch (const std::exception&) {
            throw DocumentError("bad_threshold", "--threshold: '" + args.threshold + "' is not a number");
        }
        if (k.sign() <= 0) throw DocumentError("bad_threshold", "--threshold: must be positive");
        sc.threshold = k;
    }
    if (args.max_iters) sc.max_iters = *args.max_iters;
    return sc;
}

int cmd_validate(const MapArgs& args, bool simple) {
    auto map = load_map_ref(args.map);
    auto report = std::visit([&](const auto& m) { return validate(m, {simple}); }, map);
    if (args.format == "json") {
        Json out = map_summary(map_id_for(args.map), map);
        out["ok"] = report.ok();
        out["findings"] = findings_json(report.findings);
        std::cout << out.dump(2) << "\n";
    } else if (report.ok()) {
        std::cout << "ok: " << map_id_for(args.map) << " (" << to_string(kind_of(map)) << ")\n";
    } else {
        print_findings(report.findings);
    }
    return report.ok() ? ok : bad_input;
}

int cmd_infer(const InferArgs& args) {
    auto sc = scenario_from(args);
    std::string ref = args.map.empty() ? sc.map.value_or("") : args.map;
    if (ref.empty()) throw DocumentError("missing_map", "no map given (use --map or a scenario with \"map\")");
    auto map = load_map_ref(ref);
    auto resolved = resolve(sc, map);
    auto result = run(map, resolved);
    ReportContext ctx{map_id_for(ref), args.trace};
    if (args.format == "json")
        std::cout << report_json(map, resolved, result, ctx).dump(2) << "\n";
    else
        std::cout << report_table(map, resolved, result, ctx);
    return outcome_of(result) == Outcome::not_converged ? not_converged : ok;
}

int cmd_sweep(const InferArgs& args) {
    auto map = load_map_ref(args.map);
    auto resolved = resolve(scenario_from(args), map);
    auto result = run_sweep(map, resolved.side, resolved.options);
    const auto id = map_id_for(args.map);
    if (args.format == "json")
        std::cout << sweep_json(map, resolved.side, result, id).dump(2) << "\n";
    else
        std::cout << sweep_table(map, resolved.side, result, id);

    bool converged = std::visit(
        [](const auto& rows) {
            for (const auto& r : rows) {
                const HiddenPattern* hp = nullptr;
                if constexpr (std::is_same_v<std::decay_t<decltype(r)>, SweepRow>)
                    hp = &r.pattern;
                else
                    hp = &r.pattern.start();
                if (hp->outcome == Outcome::not_converged) return false;
            }
            return true;
        },
        result);
    return converged ? ok : not_converged;
}

int cmd_combine(const std::vector<std::string>& refs, const std::vector<std::string>& weights, bool normalize,
                const std::string& out_path) {
    CombineOptions options;
    options.normalize = normalize;
    for (const auto& w : weights) {
        try {
            options.weights.push_back(Rational::parse(w));
        } catch (const std::exception&) {
            throw DocumentError("bad_weight", "--weights: '" + w + "' is not a number");
        }
    }
    std::vector<AnyMap> maps;
    for (const auto& r : refs) maps.push_back(load_map_ref(r));

    AnyMap combined;
    try {
        if (is_relational(maps.front())) {
            std::vector<RelationalMap> rel;
            for (auto& m : maps) {
                if (!is_relational(m)) throw std::invalid_argument("cannot combine cognitive and relational maps");
                rel.push_back(std::get<RelationalMap>(std::move(m)));
            }
            auto r = combine(rel, options);
            combined = RelationalMap(r.domain_nodes(), r.range_nodes(), r.weights(), {});
        } else {
            std::vector<CognitiveMap> cog;
            for (auto& m : maps) {
                if (is_relational(m)) throw std::invalid_argument("cannot combine cognitive and relational maps");
                cog.push_back(std::get<CognitiveMap>(std::move(m)));
            }
            combined = combine(cog, options);
        }
    } catch (const std::invalid_argument& err) {
        throw DocumentError("combine", err.what());
    }

    std::string sources;
    for (const auto& r : refs) sources += (sources.empty() ? "" : ",") + map_id_for(r);
    Metadata meta{{"combined_from", sources}};
    if (!weights.empty()) {
        std::string ws;
        for (const auto& w : options.weights) ws += (ws.empty() ? "" : ",") + w.to_string();
        meta["weights"] = ws;
    }
    if (normalize) meta["normalized"] = "true";
    std::visit(
        [&](auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, CognitiveMap>)
                m = CognitiveMap(m.nodes(), m.weights(), meta);
            else
                m = RelationalMap(m.domain_nodes(), m.range_nodes(), m.weights(), meta);
        },
        combined);

    const auto text = save_map(combined).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return ok;
}

int cmd_export_dot(const std::string& ref, const std::string& out_path) {
    const auto dot = export_dot(load_map_ref(ref));
    if (out_path.empty())
        std::cout << dot;
    else
        write_file(out_path, dot);
    return ok;
}

int cmd_serve(const std::string& host, int port, const std::string& data_dir, const std::string& static_dir,
              long timeout_ms, bool bundled) {
    MapStore store(data_dir.empty() ? std::nullopt : std::optional<fs::path>(data_dir));
    if (bundled) {
        auto n = store.load_bundled(cogmap::data_dir());
        std::cerr << "loaded " << n << " bundled maps from " << cogmap::data_dir().string() << "\n";
    }
    ServiceOptions options;
    options.timeout = std::chrono::milliseconds(timeout_ms);
    if (!static_dir.empty()) options.static_dir = static_dir;
    return serve(store, options, host, port);
}

void add_run_options(CLI::App* cmd, InferArgs& args) {
    cmd->add_option("--side", args.side, "Starting side for relational maps")
        ->check(CLI::IsMember({"domain", "range"}));
    cmd->add_option("--threshold", args.threshold, "Threshold k (default 1)");
    cmd->add_option("--max-iters", args.max_iters, "Iteration cap (default 1000)")->check(CLI::PositiveNumber);
    cmd->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"table", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy and neutrosophic cognitive/relational map inference"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    MapArgs validate_args;
    bool simple = false;
    auto* validate_cmd = app.add_subcommand("validate", "Check a map document for problems");
    validate_cmd->add_option("--map", validate_args.map, "Map file or bundled dataset id")->required();
    validate_cmd->add_flag("--simple", simple, "Also require trivalent weights");
    validate_cmd->add_option("--format", validate_args.format)->check(CLI::IsMember({"table", "json"}));

    InferArgs infer_args;
    auto* infer_cmd = app.add_subcommand("infer", "Iterate a scenario to its hidden pattern");
    infer_cmd->add_option("--map", infer_args.map, "Map file or bundled dataset id");
    infer_cmd->add_option("--scenario", infer_args.scenario, "Scenario document");
    infer_cmd->add_option("--on", infer_args.on, "Labels switched ON")->delimiter(',');
    infer_cmd->add_option("--indeterminate", infer_args.indeterminate, "Labels starting at I")->delimiter(',');
    infer_cmd->add_option("--clamp", infer_args.clamp, "auto, none, or labels held at 1")->delimiter(',');
    infer_cmd->add_flag("--trace", infer_args.trace, "Print every step with raw sums");
    add_run_options(infer_cmd, infer_args);

    InferArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every single-node-ON start");
    sweep_cmd->add_option("--map", sweep_args.map, "Map file or bundled dataset id")->required();
    add_run_options(sweep_cmd, sweep_args);

    std::vector<std::string> combine_maps;
    std::vector<std::string> combine_weights;
    bool normalize = false;
    std::string combine_out;
    auto* combine_cmd = app.add_subcommand("combine", "Sum expert maps over the union of their concepts");
    combine_cmd->add_option("--maps", combine_maps, "Maps to combine")->required()->delimiter(',');
    combine_cmd->add_option("--weights", combine_weights, "Non-negative weight per map")->delimiter(',');
    combine_cmd->add_flag("--normalize", normalize, "Divide by the number of maps");
    combine_cmd->add_option("--out", combine_out, "Output document (default stdout)");

    std::string dot_map;
    std::string dot_out;
    auto* dot_cmd = app.add_subcommand("export-dot", "Write the map as a Graphviz digraph");
    dot_cmd->add_option("--map", dot_map, "Map file or bundled dataset id")->required();
    dot_cmd->add_option("--out", dot_out, "Output file (default stdout)");

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string persist_dir;
    std::string static_dir;
    long timeout_ms = 5000;
    bool no_bundled = false;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--data-dir", persist_dir, "Directory for uploaded maps");
    serve_cmd->add_option("--static-dir", static_dir, "Web UI assets served at /");
    serve_cmd->add_option("--timeout-ms", timeout_ms, "Per-request inference limit")->check(CLI::PositiveNumber);
    serve_cmd->add_flag("--no-bundled", no_bundled, "Do not preload the bundled datasets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_input;
    }

    try {
        if (*validate_cmd) return cmd_validate(validate_args, simple);
        if (*infer_cmd) return cmd_infer(infer_args);
        if (*sweep_cmd) return cmd_sweep(sweep_args);
        if (*combine_cmd) return cmd_combine(combine_maps, combine_weights, normalize, combine_out);
        if (*dot_cmd) return cmd_export_dot(dot_map, dot_out);
        if (*serve_cmd) return cmd_serve(host, port, persist_dir, static_dir, timeout_ms, !no_bundled);
    } catch (const DocumentError& err) {
        print_findings(err.findings());
        return bad_input;
    } catch (const LabelError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return label_error;
    } catch (const DimensionError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return label_error;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return bad_input;
    }
    return bad_input;
}

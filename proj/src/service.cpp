#include "cogmap/service.hpp"

#include "cogmap/report.hpp"

#include <httplib.h>

#include <charconv>
#include <iostream>
#include <mutex>

namespace cogmap {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view user_prefix = "user-";

std::optional<std::size_t> user_number(std::string_view id) {
    if (!id.starts_with(user_prefix)) return std::nullopt;
    id.remove_prefix(user_prefix.size());
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), n);
    if (ec != std::errc{} || ptr != id.data() + id.size()) return std::nullopt;
    return n;
}

ApiResponse error(int status, std::string message) {
    return {status, {{"error", std::move(message)}}};
}

ApiResponse not_found(const std::string& id) {
    return error(404, "no map with id '" + id + "'");
}

ApiResponse invalid(const DocumentError& err) {
    ApiResponse r = error(400, err.findings().empty() ? "invalid document" : err.findings().front().message);
    r.body["findings"] = findings_json(err.findings());
    return r;
}

Json parse_body(std::string_view body) {
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& err) {
        throw DocumentError("json", std::string("invalid JSON: ") + err.what());
    }
}

std::size_t node_count(const AnyMap& map) {
    if (const auto* cm = std::get_if<CognitiveMap>(&map)) return cm->size();
    const auto& rm = std::get<RelationalMap>(map);
    return rm.domain_nodes().size() + rm.range_nodes().size();
}

}  // namespace

MapStore::MapStore(std::optional<fs::path> persist_dir) : persist_dir_(std::move(persist_dir)) {
    if (!persist_dir_) return;
    fs::create_directories(*persist_dir_);
    for (auto& bundled : load_dataset_dir(*persist_dir_)) {
        if (auto n = user_number(bundled.id)) next_id_ = std::max(next_id_, *n + 1);
        auto id = bundled.id;
        entries_[id] = std::make_shared<const Entry>(Entry{id, std::move(bundled.map), false});
    }
}

std::size_t MapStore::load_bundled(const fs::path& dir) {
    auto maps = load_dataset_dir(dir);
    std::unique_lock lock(mutex_);
    for (auto& b : maps) {
        entries_[b.id] = std::make_shared<const Entry>(Entry{b.id, std::move(b.map), true});
    }
    return maps.size();
}

std::vector<std::shared_ptr<const MapStore::Entry>> MapStore::list() const {
    std::shared_lock lock(mutex_);
    std::vector<std::shared_ptr<const Entry>> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) out.push_back(e);
    return out;
}

std::shared_ptr<const MapStore::Entry> MapStore::get(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : it->second;
}

std::string MapStore::add(AnyMap map) {
    std::unique_lock lock(mutex_);
    std::string id;
    do {
        id = std::string(user_prefix) + std::to_string(next_id_++);
    } while (entries_.count(id) != 0);
    if (persist_dir_) save_map_file(map, *persist_dir_ / (id + ".cogmap.json"));
    entries_[id] = std::make_shared<const Entry>(Entry{id, std::move(map), false});
    return id;
}

MapStore::RemoveResult MapStore::remove(const std::string& id) {
    std::unique_lock lock(mutex_);
    auto it = entries_.find(id);
    if (it == entries_.end()) return RemoveResult::not_found;
    if (it->second->bundled) return RemoveResult::read_only;
    if (persist_dir_) {
        std::error_code ec;
        fs::remove(*persist_dir_ / (id + ".cogmap.json"), ec);
    }
    entries_.erase(it);
    return RemoveResult::removed;
}

ApiResponse Api::list_maps() const {
    Json arr = Json::array();
    for (const auto& e : store_.list()) {
        Json s = map_summary(e->id, e->map);
        s["bundled"] = e->bundled;
        arr.push_back(std::move(s));
    }
    return {200, std::move(arr)};
}

ApiResponse Api::get_map(const std::string& id) const {
    auto e = store_.get(id);
    if (!e) return not_found(id);
    return {200, save_map(e->map)};
}

ApiResponse Api::create_map(std::string_view body) {
    try {
        auto map = load_map(parse_body(body));
        if (node_count(map) > options_.max_nodes)
            throw DocumentError("too_many_nodes", "map has " + std::to_string(node_count(map)) +
                                                      " nodes; the limit is " + std::to_string(options_.max_nodes));
        return {201, {{"id", store_.add(std::move(map))}}};
    } catch (const DocumentError& err) {
        return invalid(err);
    }
}

ApiResponse Api::infer(const std::string& id, std::string_view body) const {
    auto e = store_.get(id);
    if (!e) return not_found(id);
    try {
        auto scenario = resolve(parse_scenario(parse_body(body)), e->map);
        scenario.options.deadline = std::chrono::steady_clock::now() + options_.timeout;
        auto result = run(e->map, scenario);
        return {200, report_json(e->map, scenario, result, {id, true})};
    } catch (const DocumentError& err) {
        return invalid(err);
    } catch (const LabelError& err) {
        ApiResponse r = error(422, err.what());
        r.body["label"] = err.label();
        return r;
    } catch (const DimensionError& err) {
        return error(422, err.what());
    } catch (const InferenceTimeout& err) {
        return error(503, err.what());
    }
}

ApiResponse Api::sweep(const std::string& id, std::string_view body) const {
    auto e = store_.get(id);
    if (!e) return not_found(id);
    try {
        auto scenario = resolve(parse_scenario(parse_body(body)), e->map);
        scenario.options.deadline = std::chrono::steady_clock::now() + options_.timeout;
        auto result = run_sweep(e->map, scenario.side, scenario.options);
        return {200, sweep_json(e->map, scenario.side, result, id)};
    } catch (const DocumentError& err) {
        return invalid(err);
    } catch (const LabelError& err) {
        ApiResponse r = error(422, err.what());
        r.body["label"] = err.label();
        return r;
    } catch (const DimensionError& err) {
        return error(422, err.what());
    } catch (const InferenceTimeout& err) {
        return error(503, err.what());
    }
}

ApiResponse Api::delete_map(const std::string& id) {
    switch (store_.remove(id)) {
        case MapStore::RemoveResult::removed: return {204, nullptr};
        case MapStore::RemoveResult::read_only: return error(403, "map '" + id + "' is bundled and read-only");
        case MapStore::RemoveResult::not_found: break;
    }
    return not_found(id);
}

void Api::install(httplib::Server& server) {
    auto reply = [](httplib::Response& res, const ApiResponse& r) {
        res.status = r.status;
        if (r.status != 204) res.set_content(r.body.dump(), "application/json");
    };
    server.Get("/api/maps", [this, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, list_maps());
    });
    server.Post("/api/maps", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, create_map(req.body));
    });
    server.Get(R"(/api/maps/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, get_map(req.matches[1]));
    });
    server.Delete(R"(/api/maps/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, delete_map(req.matches[1]));
    });
    server.Post(R"(/api/maps/([^/]+)/infer)", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, infer(req.matches[1], req.body));
    });
    server.Post(R"(/api/maps/([^/]+)/sweep)", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, sweep(req.matches[1], req.body));
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(Json{{"error", what}}.dump(), "application/json");
    });
    server.set_payload_max_length(16 * 1024 * 1024);
    if (options_.static_dir) server.set_mount_point("/", options_.static_dir->string());
}

int serve(MapStore& store, const ServiceOptions& options, const std::string& host, int port) {
    httplib::Server server;
    Api api(store, options);
    api.install(server);
    if (!server.bind_to_port(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return 1;
    }
    std::cerr << "serving on http://" << host << ":" << port << "\n";
    return server.listen_after_bind() ? 0 : 1;
}

}  // namespace cogmap

#pragma once

#include "cogmap/io.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace cogmap {

/*
 * Registry of maps by id.
 *
 * Stored entries are immutable and handed out as shared_ptr<const Entry>,
 * so a running inference keeps its map alive even if it is deleted
 * meanwhile. Reads take a shared lock; add and remove take it exclusively.
 */
class MapStore {
public:
    struct Entry {
        std::string id;
        AnyMap map;
        bool bundled = false;
    };

    enum class RemoveResult { removed, not_found, read_only };

    /// With a persistence directory, uploads found there are reloaded and new ones are written to it.
    explicit MapStore(std::optional<std::filesystem::path> persist_dir = std::nullopt);

    /// Adds every bundled dataset in dir as a read-only entry. Returns the count.
    std::size_t load_bundled(const std::filesystem::path& dir);

    [[nodiscard]] std::vector<std::shared_ptr<const Entry>> list() const;
    [[nodiscard]] std::shared_ptr<const Entry> get(const std::string& id) const;

    /// Stores an uploaded map and returns its new id ("user-1", "user-2", ...).
    std::string add(AnyMap map);
    RemoveResult remove(const std::string& id);

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<const Entry>> entries_;
    std::optional<std::filesystem::path> persist_dir_;
    std::size_t next_id_ = 1;
};

struct ServiceOptions {
    std::chrono::milliseconds timeout{5000};
    std::size_t max_nodes = 512;
    std::optional<std::filesystem::path> static_dir;
};

struct ApiResponse {
    int status = 200;
    Json body;
};

/// Endpoint logic, independent of the HTTP transport.
class Api {
public:
    Api(MapStore& store, ServiceOptions options) : store_(store), options_(std::move(options)) {}

    [[nodiscard]] ApiResponse list_maps() const;
    [[nodiscard]] ApiResponse get_map(const std::string& id) const;
    [[nodiscard]] ApiResponse create_map(std::string_view body);
    [[nodiscard]] ApiResponse infer(const std::string& id, std::string_view body) const;
    [[nodiscard]] ApiResponse sweep(const std::string& id, std::string_view body) const;
    [[nodiscard]] ApiResponse delete_map(const std::string& id);

    /// Registers the /api routes (and the static mount, if configured).
    void install(httplib::Server& server);

private:
    MapStore& store_;
    ServiceOptions options_;
};

/// Blocks serving HTTP until the process is stopped. Returns nonzero if the port cannot be bound.
int serve(MapStore& store, const ServiceOptions& options, const std::string& host, int port);

}  // namespace cogmap

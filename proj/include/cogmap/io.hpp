#pragma once

#include "cogmap/inference.hpp"
#include "cogmap/map_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cogmap {

using Json = nlohmann::ordered_json;

using AnyMap = std::variant<CognitiveMap, RelationalMap>;

[[nodiscard]] MapKind kind_of(const AnyMap& map);
[[nodiscard]] const Metadata& metadata_of(const AnyMap& map);
[[nodiscard]] bool is_relational(const AnyMap& map) noexcept;

/// A document that could not be turned into a map or scenario.
/// Every problem found is listed; messages start with their location.
class DocumentError : public std::runtime_error {
public:
    explicit DocumentError(std::vector<Finding> findings);
    DocumentError(std::string code, std::string message);

    [[nodiscard]] const std::vector<Finding>& findings() const noexcept { return findings_; }

private:
    std::vector<Finding> findings_;
};

// Map documents (.cogmap.json).

/// Throws DocumentError. The returned map always passes validate().
[[nodiscard]] AnyMap load_map(const Json& document);
[[nodiscard]] AnyMap load_map_text(std::string_view text);
[[nodiscard]] AnyMap load_map_file(const std::filesystem::path& path);

/// Canonical document: zero weights omitted, edges ordered by (from, to) node id.
[[nodiscard]] Json save_map(const AnyMap& map);
void save_map_file(const AnyMap& map, const std::filesystem::path& path);

// Scenario documents (.scenario.json).

struct ClampSpec {
    enum class Mode { automatic, none, labels };
    Mode mode = Mode::automatic;
    std::vector<std::string> labels;
};

struct ScenarioDocument {
    std::optional<std::string> map;
    std::vector<std::string> on;
    /// Nodes that start at I. Never clamped unless listed explicitly in clamp.
    std::vector<std::string> indeterminate;
    ClampSpec clamp;
    std::optional<Side> side;
    std::optional<Rational> threshold;
    std::optional<std::size_t> max_iters;
};

/// Throws DocumentError.
[[nodiscard]] ScenarioDocument parse_scenario(const Json& document);
[[nodiscard]] ScenarioDocument load_scenario_file(const std::filesystem::path& path);
[[nodiscard]] Json scenario_to_json(const ScenarioDocument& scenario);

struct ResolvedScenario {
    StateVector initial;
    Side side = Side::domain;
    RunOptions options;
};

/// Resolves labels against the map. Throws LabelError for unknown labels and
/// DocumentError for settings that do not apply to the map.
[[nodiscard]] ResolvedScenario resolve(const ScenarioDocument& scenario, const AnyMap& map);

// CSV import.

struct CsvOptions {
    /// First row and first column carry labels.
    bool header = true;
    /// Labels when header is false (domain labels for relational maps).
    std::vector<std::string> labels;
    std::vector<std::string> range_labels;
    bool relational = false;
};

/// Rows are separated by newlines or ';', cells by ','. Throws DocumentError.
[[nodiscard]] AnyMap import_csv(std::string_view text, const CsvOptions& options = {});

// DOT export.

[[nodiscard]] std::string export_dot(const AnyMap& map);

// Bundled datasets.

struct BundledMap {
    std::string id;
    std::filesystem::path path;
    AnyMap map;
};

/// COGMAP_DATA_DIR if set, else the directory compiled into the build.
[[nodiscard]] std::filesystem::path data_dir();

/// Every *.cogmap.json directly inside dir, sorted by id (file name minus the extension).
[[nodiscard]] std::vector<BundledMap> load_dataset_dir(const std::filesystem::path& dir);

/// A path to a document, or the id of a bundled dataset.
[[nodiscard]] AnyMap load_map_ref(const std::string& ref);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cogmap

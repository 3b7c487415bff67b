#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "trust_pomdp/simulator.hpp"

namespace trust_pomdp {

inline constexpr int kConfigSchemaVersion = 1;

enum class ExperimentKind { kSolve, kSimulate, kExperiment1, kExperiment2 };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

/// Display extent of exported policy grids; spacing follows the trust gains.
struct GridExtent {
    double alpha_min = 10.0;
    double alpha_max = 300.0;
    double beta_min = 10.0;
    double beta_max = 300.0;

    friend bool operator==(const GridExtent&, const GridExtent&) = default;
};

struct RunConfig {
    ScenarioConfig scenario;
    GridExtent grid;
    std::filesystem::path output_dir = "out";
    ExperimentKind experiment = ExperimentKind::kSimulate;
    int solve_site = 1;  // site solved by the `solve` command

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Base of all configuration failures; `field()` is a dotted JSON path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Malformed document: wrong type, unknown key, unsupported version.
class SchemaError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Well-formed value that violates a model constraint.
class ConstraintError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Parses and validates a configuration document. Missing fields take the
/// defaults; unknown fields are rejected.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads `path`; an empty file yields the default configuration.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace trust_pomdp

#pragma once

#include "majorana/floquet.hpp"
#include "majorana/model.hpp"
#include "majorana/topology.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace majorana::cli {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DriveConfig {
    enum class Type { none, step, sine };
    Type type = Type::none;
    floquet::StepDrive step;
    floquet::SineDrive sine;
};

struct RunConfig {
    std::string task;
    std::optional<model::ChainSpec> chain;
    DriveConfig drive;
    std::vector<topology::AxisSpec> axes;
    std::string out_dir = ".";
    int kgrid = 1001;
    int threads = 0;
    nlohmann::json options;   // task-specific knobs
    nlohmann::json raw;       // parsed config, hashed into the manifest

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
};

/// FNV-1a hash of the canonical (key-sorted) config dump.
std::string config_hash(const nlohmann::json& j);

}  // namespace majorana::cli

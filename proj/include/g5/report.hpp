#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "g5/common.hpp"

namespace g5::report {

inline constexpr const char* VERSION = "0.1.0";
inline constexpr int SCHEMA = 1;

// One run, one JSON document. The content digest covers schema, command,
// params, result and version; timestamps and timing never enter it, so equal
// inputs give equal digests across machines and runs.
struct Manifest {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json result = nlohmann::json::object();
    std::string verdict;  // pass | fail | candidate | indeterminate
    std::string started_utc, finished_utc;
    double elapsed_ms = 0;
};

std::string now_utc();
u64 content_digest(const Manifest& m);
nlohmann::json to_json(const Manifest& m);

// stdout when out_path is empty
void write(const Manifest& m, const std::optional<std::string>& out_path);

}  // namespace g5::report

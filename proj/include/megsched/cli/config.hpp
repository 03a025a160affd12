#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "megsched/coordinator/horizon.hpp"
#include "megsched/harness/cases.hpp"
#include "megsched/harness/traces.hpp"

namespace megsched {

struct TraceSource {
    std::optional<std::filesystem::path> file;  ///< CSV; otherwise synthetic
    std::uint64_t seed = 42;
    std::size_t slots = 480;
    SynthProfile profile;
};

struct RunConfig {
    ParkParams park;
    std::optional<std::vector<MegpState>> initial_storage;  ///< default: mid-level
    TraceSource traces;
    InnerLoopConfig inner;
    OuterLoopConfig outer;
    PolicyCase policy = PolicyCase::Proposed;
    std::filesystem::path output_dir = "out";

    std::vector<MegpState> initial() const;
};

/// Defaults reproducing the benchmark: two plants, three factories, 480
/// synthetic slots, smoothed fast scheme with cold starts.
RunConfig default_config();

struct ConfigLoad {
    RunConfig config;
    std::vector<std::string> errors;  ///< every violation found; empty when valid
};

/// Parses JSON text. Relative trace paths resolve against `base_dir`.
/// Missing keys keep their defaults; unknown keys are violations.
ConfigLoad parse_config(const std::string& text, const std::filesystem::path& base_dir);
ConfigLoad load_config(const std::filesystem::path& path);

/// Parameter, storage and trace-source checks that need no simulation.
std::vector<std::string> check_config(const RunConfig& cfg);

/// Traces described by the source, validated against the park.
TraceSet materialize_traces(const RunConfig& cfg);

} // namespace megsched

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "megsched/cli/config.hpp"

namespace megsched {

/// Command-line overrides applied on top of the config file.
struct CliOptions {
    std::optional<std::filesystem::path> config;  ///< absent: built-in benchmark defaults
    std::optional<std::uint64_t> seed;            ///< synthetic trace seed
    std::optional<std::filesystem::path> out;
    std::optional<InnerMode> mode;
    std::optional<bool> warm_start;
};

/// Config with overrides applied; violations are appended to `errors`.
RunConfig resolve_config(const CliOptions& opts, std::vector<std::string>& errors);

// Each command returns the process exit status: 0 on success, 1 on any error.
// Diagnostics go to `err`, progress and tables to `out`.
int cmd_run(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err);

} // namespace megsched

#pragma once

#include "ffgs/error.hpp"

#include <string>
#include <vector>

namespace ffgs::cli {

enum ExitCode { Ok = 0, Invalid = 1, Precision = 2, Indeterminate = 3 };

struct Report {
    std::string text;
    /// Empty unless --json was given.
    std::string json;
    int exit_code = Ok;
};

int exit_code_for(ErrorCode code);

/// args excludes the program name.
Report run(const std::vector<std::string>& args);

/// Directory holding the bundled packets ($FFGS_PACKET_DIR overrides).
std::string packet_dir();
std::vector<std::string> bundled_packets();
/// A file path, a bundled name ("k3_supersingular"), or examples/<name>.json.
std::string resolve_packet(const std::string& arg);

} // namespace ffgs::cli

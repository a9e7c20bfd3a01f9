#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace dampresp::cli {

// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_io = 1,
    exit_config = 2,
    exit_numeric = 3,
};

struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

inline constexpr const char* manifest_file = "manifest.json";
inline constexpr const char* summary_file = "summary.txt";

int run_command(const std::string& config_path, const RunOverrides& overrides, std::ostream& out,
                std::ostream& err);
int validate_command(const std::string& config_path, std::ostream& out, std::ostream& err);
int list_scenarios_command(std::ostream& out);

std::string sha256_hex(const std::string& bytes);

}  // namespace dampresp::cli

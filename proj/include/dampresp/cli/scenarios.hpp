#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dampresp/cli/config.hpp"

namespace dampresp::cli {

struct CsvTable {
    std::string file;  // name inside the output directory
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct ScenarioOutput {
    std::vector<CsvTable> tables;
    std::vector<std::pair<std::string, std::string>> summary;  // key = value lines, in order
};

// Evaluates a validated configuration. Library exceptions propagate.
ScenarioOutput compute_scenario(const ScenarioConfig& config);

// printf %.17g; "nan"/"inf" are never produced by a successful run.
std::string format_number(double value);
std::string render_csv(const CsvTable& table);
std::string render_summary(const ScenarioOutput& output);

}  // namespace dampresp::cli

#include "dampresp/cli/runner.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "dampresp/cli/config.hpp"
#include "dampresp/cli/scenarios.hpp"
#include "dampresp/errors.hpp"

namespace dampresp::cli {

namespace fs = std::filesystem;

namespace {

bool readable(const std::string& path)
{
    std::ifstream in(path);
    return static_cast<bool>(in);
}

void write_file(const fs::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

void remove_quietly(const fs::path& path)
{
    std::error_code ec;
    fs::remove(path, ec);
}

}  // namespace

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

int validate_command(const std::string& config_path, std::ostream& out, std::ostream& err)
{
    if (!readable(config_path)) {
        err << config_path << ": cannot read configuration file\n";
        return exit_io;
    }
    const LoadResult loaded = load_config(config_path);
    for (const auto& v : loaded.violations) out << format_violation(config_path, v) << "\n";
    if (!loaded.violations.empty()) {
        out << loaded.violations.size() << " violation(s)\n";
        return exit_config;
    }
    out << config_path << ": valid (" << loaded.config->scenario << ")\n";
    return exit_ok;
}

int list_scenarios_command(std::ostream& out)
{
    for (const auto& s : registered_scenarios()) {
        out << s.name << "\n    " << s.description << "\n    sweep: ";
        for (std::size_t i = 0; i < s.sweep_parameters.size(); ++i) {
            out << (i ? ", " : "") << s.sweep_parameters[i];
        }
        out << "\n";
    }
    return exit_ok;
}

int run_command(const std::string& config_path, const RunOverrides& overrides, std::ostream& out,
                std::ostream& err)
{
    const auto started = std::chrono::steady_clock::now();
    if (!readable(config_path)) {
        err << config_path << ": cannot read configuration file\n";
        return exit_io;
    }
    LoadResult loaded = load_config(config_path);
    if (!loaded.config) {
        for (const auto& v : loaded.violations) err << format_violation(config_path, v) << "\n";
        return exit_config;
    }
    ScenarioConfig config = std::move(*loaded.config);
    if (overrides.output_dir) config.output_dir = *overrides.output_dir;
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.threads) config.threads = std::max(1u, *overrides.threads);

    ScenarioOutput result;
    try {
        result = compute_scenario(config);
    } catch (const NumericError& e) {
        err << "numeric failure in " << e.operation() << ": " << e.what() << "\n";
        return exit_numeric;
    } catch (const InvalidArgument& e) {
        err << config_path << ": rejected by " << e.operation() << ": " << e.what() << "\n";
        return exit_config;
    } catch (const Error& e) {
        err << "failure in " << e.operation() << ": " << e.what() << "\n";
        return exit_numeric;
    }

    const fs::path dir(config.output_dir);
    std::vector<fs::path> written;
    auto rollback = [&] {
        for (const auto& p : written) remove_quietly(p);
        remove_quietly(dir / (std::string(manifest_file) + ".tmp"));
    };

    try {
        fs::create_directories(dir);
        nlohmann::json outputs = nlohmann::json::array();
        auto emit = [&](const std::string& name, const std::string& bytes) {
            const fs::path p = dir / name;
            written.push_back(p);
            write_file(p, bytes);
            outputs.push_back({{"file", name}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
        };
        for (const auto& table : result.tables) emit(table.file, render_csv(table));
        emit(summary_file, render_summary(result));

        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        nlohmann::json manifest = {
            {"tool_version", tool_version},
            {"scenario", config.scenario},
            {"config", to_yaml(config)},
            {"wall_clock_seconds", seconds},
            {"outputs", outputs},
        };
        const fs::path tmp = dir / (std::string(manifest_file) + ".tmp");
        write_file(tmp, manifest.dump(2) + "\n");
        fs::rename(tmp, dir / manifest_file);
    } catch (const std::exception& e) {
        rollback();
        err << "output error: " << e.what() << "\n";
        return exit_io;
    }

    out << "wrote " << written.size() << " file(s) and " << manifest_file << " to " << dir.string() << "\n";
    return exit_ok;
}

}  // namespace dampresp::cli

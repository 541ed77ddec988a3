#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "opnorm/suites.hpp"
#include "opnorm/version.hpp"

namespace {

// OPNORM_SEED overrides the config's master seed. Must be a bare
// nonnegative integer; anything else is invalid input (exit 2).
bool apply_seed_env(opnorm::SuiteConfig& cfg) {
    const char* env = std::getenv("OPNORM_SEED");
    if (!env) return true;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
        std::cerr << "error: OPNORM_SEED must be a nonnegative integer, got \"" << env
                  << "\"\n";
        return false;
    }
    cfg.master_seed = static_cast<std::uint64_t>(v);
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for operator-valued norms"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    std::string describe_name;

    CLI::App* run_cmd = app.add_subcommand("run", "execute suites from a JSON config");
    run_cmd->add_option("config", config_path, "path to the JSON config")->required();
    run_cmd->add_option("--output", output_override,
                        "write the report here, overriding the config's output path");

    CLI::App* desc_cmd =
        app.add_subcommand("describe", "explain a suite or constructor by name");
    desc_cmd->add_option("name", describe_name, "suite or constructor name")->required();

    CLI::App* ver_cmd = app.add_subcommand("version", "print the tool version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ver_cmd->parsed()) {
            std::cout << opnorm::kVersion << "\n";
            return 0;
        }
        if (desc_cmd->parsed()) {
            std::cout << opnorm::describe(describe_name);
            return 0;
        }

        opnorm::SuiteConfig cfg = opnorm::SuiteConfig::from_file(config_path);
        if (!apply_seed_env(cfg)) return 2;
        // The override only redirects the write; the report's config echo keeps
        // the config's own output path so reruns stay byte-comparable.
        const std::string out_path =
            output_override.empty() ? cfg.output_path : output_override;

        const opnorm::RunReport report = opnorm::run_suites(cfg);
        const std::string payload = (cfg.format == "json")
                                        ? report.to_json().dump(2) + "\n"
                                        : report.to_text();
        if (out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return 2;
            }
            out << payload;
            if (!out) {
                std::cerr << "error: short write to '" << out_path << "'\n";
                return 2;
            }
            std::cout << (report.passed ? "PASS" : "FAIL") << " (report: " << out_path
                      << ")\n";
        }
        return report.passed ? 0 : 1;
    } catch (const opnorm::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dicke/landscape.hpp"
#include "dicke/oracle.hpp"
#include "dicke/phase.hpp"

namespace dicke::cli {

inline constexpr std::string_view kVersion = "dicke_phase 1.0.0";

inline const std::vector<std::string> kCommands = {
    "eval-omega", "find-max",        "sweep",           "phase-map",       "hysteresis",      "oracle-chain",
    "oracle-full", "reproduce-fig1", "reproduce-fig2", "reproduce-fig3", "reproduce-fig4"};

inline const std::vector<std::pair<std::string, std::string>> kCommandHelp = {
    {"eval-omega", "Omega(x), I(x) and g(x) on an x grid"},
    {"find-max", "local and global maxima of Omega"},
    {"sweep", "global maximiser and Theta along one parameter"},
    {"phase-map", "phase over a grid of two parameters"},
    {"hysteresis", "branch-following sweeps in both directions"},
    {"oracle-chain", "exact chain free energy vs the landscape"},
    {"oracle-full", "exact spin-boson free energy and photon number"},
    {"reproduce-fig1", "landscapes for a few couplings around the transition"},
    {"reproduce-fig2", "lambda sweeps for two spin couplings (two files)"},
    {"reproduce-fig3", "J x epsilon phase map"},
    {"reproduce-fig4", "Theta along beta"}};

// Everything a run depends on. Unset optionals take per-command defaults in
// resolve(); the resolved config is what gets echoed into CSV metadata.
struct RunConfig {
    std::string command;
    std::optional<double> lambda;
    std::optional<double> spin_coupling;
    std::optional<double> epsilon;
    std::optional<double> beta;
    std::optional<double> x;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<int> points;
    std::vector<std::string> sweep;
    std::vector<double> compare_j;
    std::string out;
    int nodes = 4096;
    int grid = 2001;
    double refine_tol = 1e-8;
    double tie_tol = 1e-9;
    double quad_tol = 1e-10;
    std::optional<int> sites;
    std::optional<int> cutoff;
    int memory_mib = 2048;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Registers every run option on `app`, bound to `cfg`.
void bind_options(CLI::App& app, RunConfig& cfg);

// Fills per-command defaults and validates; throws ConfigError naming the field.
RunConfig resolve(RunConfig cfg);

// "key = value" lines, one per set option, reals at 17 significant digits.
std::string to_config_text(const RunConfig& cfg);

// Inverse of to_config_text (command supplied separately).
RunConfig parse_config_text(const std::string& command, const std::string& text);

// Recovers the config echoed into a CSV metadata header.
RunConfig parse_metadata(const std::string& csv_text);

// Parsed `param:start:stop:steps`.
SweepSpec parse_sweep(const std::string& text, const ModelParams& fixed);

ModelParams model_params(const RunConfig& cfg);
LandscapeOptions landscape_options(const RunConfig& cfg);
OracleOptions oracle_options(const RunConfig& cfg);

std::string format_real(double v);

} // namespace dicke::cli

#include "run_config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "dicke/error.hpp"

namespace dicke::cli {

namespace {

struct Defaults {
    double lambda = 0.9;
    double J = 1.0;
    double epsilon = 1.1;
    double beta = 100.0;
    std::vector<std::string> sweep;
};

Defaults defaults_for(const std::string& command) {
    Defaults d;
    if (command == "sweep") {
        d.sweep = {"lambda:0:2:201"};
    } else if (command == "hysteresis") {
        d.sweep = {"lambda:0.85:0.95:101"};
    } else if (command == "phase-map" || command == "reproduce-fig3") {
        d.lambda = 1.3;
        d.sweep = {"J:0.1:2:100", "epsilon:0.1:3:100"};
    } else if (command == "oracle-chain") {
        d.beta = 1.0;
    } else if (command == "oracle-full") {
        d.beta = 4.0;
    } else if (command == "reproduce-fig1") {
        d.sweep = {"lambda:0.85:0.95:5"};
    } else if (command == "reproduce-fig2") {
        d.sweep = {"lambda:0:2:401"};
    } else if (command == "reproduce-fig4") {
        d.sweep = {"beta:10:0.5:191"};
    }
    return d;
}

double parse_real(const std::string& s, const char* field) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(field, "cannot parse '" + s + "' as a number");
    }
    return v;
}

template <typename T>
void emit(std::ostringstream& os, const char* key, const std::optional<T>& v) {
    if (v) {
        if constexpr (std::is_floating_point_v<T>) {
            os << key << " = " << format_real(*v) << '\n';
        } else {
            os << key << " = " << *v << '\n';
        }
    }
}

} // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void bind_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--lambda", cfg.lambda, "qubit-field coupling");
    app.add_option("--spin-coupling", cfg.spin_coupling, "nearest-neighbour Y-Y coupling J");
    app.add_option("--epsilon", cfg.epsilon, "qubit splitting");
    app.add_option("--beta", cfg.beta, "inverse temperature");
    app.add_option("--x", cfg.x, "field amplitude (oracle-chain)");
    app.add_option("--x-min", cfg.x_min, "landscape start (eval-omega, reproduce-fig1)");
    app.add_option("--x-max", cfg.x_max, "landscape stop");
    app.add_option("--points", cfg.points, "landscape resolution");
    app.add_option("--sweep", cfg.sweep, "param:start:stop:steps (repeat for phase-map)");
    app.add_option("--compare-j", cfg.compare_j, "J values for reproduce-fig2");
    app.add_option("--out", cfg.out, "output path (stdout if empty)");
    app.add_option("--nodes", cfg.nodes, "quadrature intervals on [0, pi]");
    app.add_option("--grid", cfg.grid, "landscape scan points");
    app.add_option("--refine-tol", cfg.refine_tol, "maximum refinement tolerance");
    app.add_option("--tie-tol", cfg.tie_tol, "coexistence tie tolerance");
    app.add_option("--quad-tol", cfg.quad_tol, "quadrature relative tolerance");
    app.add_option("--sites", cfg.sites, "oracle chain length");
    app.add_option("--cutoff", cfg.cutoff, "boson Fock cutoff");
    app.add_option("--memory-mib", cfg.memory_mib, "oracle memory budget in MiB");
}

RunConfig resolve(RunConfig cfg) {
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
        throw ConfigError("command", "unknown subcommand '" + cfg.command + "'");
    }
    const auto d = defaults_for(cfg.command);
    if (!cfg.lambda) cfg.lambda = d.lambda;
    if (!cfg.spin_coupling) cfg.spin_coupling = d.J;
    if (!cfg.epsilon) cfg.epsilon = d.epsilon;
    if (!cfg.beta) cfg.beta = d.beta;
    if (cfg.sweep.empty()) cfg.sweep = d.sweep;

    const auto params = model_params(cfg);
    validate(params);
    validate(landscape_options(cfg));
    if (cfg.memory_mib <= 0) {
        throw ConfigError("memory-mib", "must be positive");
    }

    const auto& c = cfg.command;
    if (c == "eval-omega" || c == "reproduce-fig1") {
        if (!cfg.x_min) cfg.x_min = 0.0;
        if (!cfg.x_max) cfg.x_max = c == "eval-omega" ? scan_bound(params) : 1.5;
        if (!cfg.points) cfg.points = 201;
        if (!std::isfinite(*cfg.x_min) || !std::isfinite(*cfg.x_max) || !(*cfg.x_max > *cfg.x_min)) {
            throw ConfigError("x-max", "landscape range needs finite x-min < x-max");
        }
        if (*cfg.points < 2) {
            throw ConfigError("points", "must be >= 2");
        }
    }
    if (c == "oracle-chain") {
        if (!cfg.x) cfg.x = 0.3;
        if (!cfg.sites) cfg.sites = 10;
        if (!std::isfinite(*cfg.x)) {
            throw ConfigError("x", "must be finite");
        }
        validate(ChainSpec{*cfg.sites});
    }
    if (c == "oracle-full") {
        if (!cfg.sites) cfg.sites = 4;
        if (!cfg.cutoff) cfg.cutoff = 24;
        validate(SpinBosonSpec{*cfg.sites, *cfg.cutoff});
    }
    if (c == "reproduce-fig2" && cfg.compare_j.empty()) {
        cfg.compare_j = {1.0, 0.8};
    }
    if (c == "reproduce-fig2" && cfg.out.empty()) {
        throw ConfigError("out", "reproduce-fig2 writes two files and needs an output stem");
    }

    const bool two_axes = c == "phase-map" || c == "reproduce-fig3";
    const bool one_axis = c == "sweep" || c == "hysteresis" || c == "reproduce-fig1" || c == "reproduce-fig2" ||
                          c == "reproduce-fig4";
    if (two_axes && cfg.sweep.size() != 2) {
        throw ConfigError("sweep", "phase map needs exactly two --sweep axes");
    }
    if (one_axis && cfg.sweep.size() != 1) {
        throw ConfigError("sweep", "expected exactly one --sweep");
    }
    if (one_axis || two_axes) {
        for (const auto& s : cfg.sweep) {
            validate(parse_sweep(s, params));
        }
    }
    if (c == "reproduce-fig2") {
        for (double j : cfg.compare_j) {
            validate(parse_sweep(cfg.sweep.front(), with(params, Parameter::J, j)));
        }
    }
    return cfg;
}

SweepSpec parse_sweep(const std::string& text, const ModelParams& fixed) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (;;) {
        const auto colon = text.find(':', begin);
        parts.push_back(text.substr(begin, colon - begin));
        if (colon == std::string::npos) break;
        begin = colon + 1;
    }
    if (parts.size() != 4) {
        throw ConfigError("sweep", "expected param:start:stop:steps, got '" + text + "'");
    }
    const auto which = parse_parameter(parts[0]);
    if (!which) {
        throw ConfigError("sweep", "unknown parameter '" + parts[0] + "'");
    }
    SweepSpec spec;
    spec.swept = *which;
    spec.start = parse_real(parts[1], "sweep");
    spec.stop = parse_real(parts[2], "sweep");
    const double steps = parse_real(parts[3], "sweep");
    if (steps != std::floor(steps) || steps < 1 || steps > 1e7) {
        throw ConfigError("sweep", "steps must be a positive integer");
    }
    spec.steps = static_cast<int>(steps);
    spec.fixed = fixed;
    return spec;
}

std::string to_config_text(const RunConfig& cfg) {
    std::ostringstream os;
    emit(os, "lambda", cfg.lambda);
    emit(os, "spin-coupling", cfg.spin_coupling);
    emit(os, "epsilon", cfg.epsilon);
    emit(os, "beta", cfg.beta);
    emit(os, "x", cfg.x);
    emit(os, "x-min", cfg.x_min);
    emit(os, "x-max", cfg.x_max);
    emit(os, "points", cfg.points);
    if (!cfg.sweep.empty()) {
        os << "sweep = [";
        for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
            os << (i ? ", " : "") << '"' << cfg.sweep[i] << '"';
        }
        os << "]\n";
    }
    if (!cfg.compare_j.empty()) {
        os << "compare-j = [";
        for (std::size_t i = 0; i < cfg.compare_j.size(); ++i) {
            os << (i ? ", " : "") << format_real(cfg.compare_j[i]);
        }
        os << "]\n";
    }
    if (!cfg.out.empty()) {
        os << "out = \"" << cfg.out << "\"\n";
    }
    os << "nodes = " << cfg.nodes << '\n';
    os << "grid = " << cfg.grid << '\n';
    os << "refine-tol = " << format_real(cfg.refine_tol) << '\n';
    os << "tie-tol = " << format_real(cfg.tie_tol) << '\n';
    os << "quad-tol = " << format_real(cfg.quad_tol) << '\n';
    emit(os, "sites", cfg.sites);
    emit(os, "cutoff", cfg.cutoff);
    os << "memory-mib = " << cfg.memory_mib << '\n';
    return os.str();
}

RunConfig parse_config_text(const std::string& command, const std::string& text) {
    RunConfig cfg;
    cfg.command = command;
    CLI::App app;
    bind_options(app, cfg);
    std::istringstream in(text);
    app.parse_from_stream(in);
    return cfg;
}

RunConfig parse_metadata(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::string command;
    std::ostringstream config;
    bool in_config = false;
    while (std::getline(in, line) && line.rfind('#', 0) == 0) {
        std::string body = line.size() > 2 ? line.substr(2) : "";
        if (body.rfind("command = ", 0) == 0) {
            command = body.substr(10);
        } else if (body == "[config]") {
            in_config = true;
        } else if (!body.empty() && body.front() == '[') {
            in_config = false;
        } else if (in_config) {
            config << body << '\n';
        }
    }
    return parse_config_text(command, config.str());
}

ModelParams model_params(const RunConfig& cfg) {
    return {cfg.lambda.value_or(0.0), cfg.spin_coupling.value_or(0.0), cfg.epsilon.value_or(0.0),
            cfg.beta.value_or(1.0)};
}

LandscapeOptions landscape_options(const RunConfig& cfg) {
    LandscapeOptions o;
    o.grid = cfg.grid;
    o.refine_tol = cfg.refine_tol;
    o.tie_tol = cfg.tie_tol;
    o.quadrature.nodes = cfg.nodes;
    o.quadrature.rel_tol = cfg.quad_tol;
    o.quadrature.max_nodes = std::max(o.quadrature.max_nodes, cfg.nodes);
    return o;
}

OracleOptions oracle_options(const RunConfig& cfg) {
    OracleOptions o;
    o.memory_budget_bytes = static_cast<std::size_t>(cfg.memory_mib) << 20;
    return o;
}

} // namespace dicke::cli

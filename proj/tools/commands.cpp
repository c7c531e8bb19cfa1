#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dicke/error.hpp"

namespace dicke::cli {

namespace {

class CsvWriter {
public:
    CsvWriter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    void result(const std::string& key, const std::string& value) { results_.push_back(key + " = " + value); }

    void header(const std::vector<std::string>& columns) {
        out_ << "# " << kVersion << '\n';
        out_ << "# command = " << cfg_.command << '\n';
        out_ << "# [config]\n";
        std::istringstream cfg_lines(to_config_text(cfg_));
        for (std::string line; std::getline(cfg_lines, line);) {
            out_ << "# " << line << '\n';
        }
        if (!results_.empty()) {
            out_ << "# [results]\n";
            for (const auto& r : results_) {
                out_ << "# " << r << '\n';
            }
        }
        row(columns);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? "," : "") << cells[i];
        }
        out_ << '\n';
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::vector<std::string> results_;
};

// Output sink: the named file, or the console when no path was given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& console) : console_(console) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw ConfigError("out", "cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : console_; }

private:
    std::ostream& console_;
    std::ofstream file_;
};

std::string fmt(double v) { return format_real(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "1" : "0"; }

std::string quoted(const std::string& s) { return '"' + s + '"'; }

std::string describe(const TransitionRecord& t) {
    return quoted("critical=" + fmt(t.critical_value) + " order=" + std::string(to_string(t.order)) +
                  " jump=" + fmt(t.jump) + " bracket_jump=" + fmt(t.bracket_jump) + " drift=" + fmt(t.drift) +
                  " coexistence_width=" + fmt(t.coexistence_width));
}

double linear(double lo, double hi, int i, int n) {
    const double t = static_cast<double>(i) / (n - 1);
    const double s = static_cast<double>(n - 1 - i) / (n - 1);
    return lo * s + hi * t;
}

void write_sweep(const RunConfig& cfg, const SweepResult& result, const std::vector<TransitionRecord>& transitions,
                 std::ostream& out) {
    CsvWriter csv(cfg, out);
    csv.result("transitions", fmt(static_cast<int>(transitions.size())));
    for (const auto& t : transitions) {
        csv.result("transition", describe(t));
    }
    csv.header({std::string(to_string(result.spec.swept)), "x_star", "theta", "omega_star", "tie", "n_maxima"});
    for (const auto& r : result.records) {
        csv.row({fmt(r.value), fmt(r.x_star), fmt(r.theta), fmt(r.omega_star), fmt(r.tie), fmt(r.n_maxima)});
    }
}

void write_phase_map(const RunConfig& cfg, const PhaseMap& map, std::ostream& out) {
    CsvWriter csv(cfg, out);
    int n_first = 0;
    int n_second = 0;
    for (const auto& row : map.transitions) {
        for (const auto& t : row) {
            (t.order == TransitionOrder::first ? n_first : n_second) += 1;
        }
    }
    csv.result("first_order_transitions", fmt(n_first));
    csv.result("second_order_transitions", fmt(n_second));
    csv.header({std::string(to_string(map.axis_a.swept)), std::string(to_string(map.axis_b.swept)), "x_star",
                "omega_star", "n_maxima", "phase", "boundary"});
    for (const auto& c : map.cells) {
        csv.row({fmt(c.a), fmt(c.b), fmt(c.x_star), fmt(c.omega_star), fmt(c.n_maxima),
                 c.phase == Phase::super_radiant ? "super" : "sub", std::string(to_string(c.boundary))});
    }
}

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
    const auto params = model_params(cfg);
    const auto opt = landscape_options(cfg);
    CsvWriter csv(cfg, out);
    csv.header({"x", "omega", "I", "g"});
    for (int i = 0; i < *cfg.points; ++i) {
        const double x = linear(*cfg.x_min, *cfg.x_max, i, *cfg.points);
        const double integral = landscape_I(params, x, opt.quadrature);
        const double g = params.J > 0 ? effective_field_g(params, x) : std::numeric_limits<double>::quiet_NaN();
        csv.row({fmt(x), fmt(-params.beta * x * x + integral), fmt(integral), fmt(g)});
    }
}

void cmd_find_max(const RunConfig& cfg, std::ostream& out) {
    const auto params = model_params(cfg);
    const auto report = find_local_maxima(params, landscape_options(cfg));
    const auto& top = report.global();
    CsvWriter csv(cfg, out);
    csv.result("coexistence_gap", fmt(report.coexistence_gap));
    csv.result("tie_flag", fmt(report.tie_flag));
    csv.result("theta", fmt(top.x * top.x + 1.0 / (2.0 * params.beta)));
    csv.header({"x", "omega", "is_global"});
    for (const auto& p : report.maxima) {
        csv.row({fmt(p.x), fmt(p.omega_value), fmt(p.is_global)});
    }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto spec = parse_sweep(cfg.sweep.front(), model_params(cfg));
    PhaseOptions popt;
    popt.landscape = landscape_options(cfg);
    const auto result = sweep(spec, popt.landscape);
    write_sweep(cfg, result, classify_transition(result, popt), out);
}

void cmd_phase_map(const RunConfig& cfg, std::ostream& out) {
    const auto params = model_params(cfg);
    PhaseOptions popt;
    popt.landscape = landscape_options(cfg);
    const auto map = phase_map(parse_sweep(cfg.sweep[0], params), parse_sweep(cfg.sweep[1], params), params, popt);
    write_phase_map(cfg, map, out);
}

void cmd_hysteresis(const RunConfig& cfg, std::ostream& out) {
    const auto spec = parse_sweep(cfg.sweep.front(), model_params(cfg));
    const auto h = hysteresis_branches(spec, landscape_options(cfg));
    const auto n = h.forward.records.size();
    CsvWriter csv(cfg, out);
    int disagree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        disagree += std::abs(h.forward.records[i].x_star - h.backward.records[n - 1 - i].x_star) > 1e-6;
    }
    csv.result("disagreeing_steps", fmt(disagree));
    csv.header({std::string(to_string(spec.swept)), "x_forward", "x_backward", "theta_forward", "theta_backward",
                "n_maxima"});
    for (std::size_t i = 0; i < n; ++i) {
        const auto& f = h.forward.records[i];
        const auto& b = h.backward.records[n - 1 - i];
        csv.row({fmt(f.value), fmt(f.x_star), fmt(b.x_star), fmt(f.theta), fmt(b.theta), fmt(f.n_maxima)});
    }
}

void cmd_oracle_chain(const RunConfig& cfg, std::ostream& out) {
    const auto params = model_params(cfg);
    const ChainSpec spec{*cfg.sites};
    const double x = *cfg.x;
    const double exact = chain_log_Z_exact(params, x, spec, oracle_options(cfg));
    const double limit = landscape_I(params, x, landscape_options(cfg).quadrature) + std::numbers::ln2;
    const bool has_product = params.J > 0;
    const double product = has_product ? chain_log_Z_product_formula(params, x, spec)
                                       : std::numeric_limits<double>::quiet_NaN();
    CsvWriter csv(cfg, out);
    csv.header({"sites", "x", "log_z_exact", "log_z_product", "log_z_limit", "gap_exact_limit",
                "gap_exact_product"});
    csv.row({fmt(spec.n_sites), fmt(x), fmt(exact), fmt(product), fmt(limit), fmt(std::abs(exact - limit)),
             fmt(std::abs(exact - product))});
}

void cmd_oracle_full(const RunConfig& cfg, std::ostream& out) {
    const auto params = model_params(cfg);
    const auto report = full_ed(params, SpinBosonSpec{*cfg.sites, *cfg.cutoff}, oracle_options(cfg));
    const auto& meta = report.free_energy.metadata;
    CsvWriter csv(cfg, out);
    for (const auto& [k, v] : meta) {
        csv.result(k, fmt(v));
    }
    csv.header({"sites", "cutoff", "log_z_exact", "log_z_predicted", "log_z_gap", "photon_exact", "theta",
                "photon_gap"});
    csv.row({fmt(*cfg.sites), fmt(*cfg.cutoff), fmt(report.free_energy.exact_value),
             fmt(report.free_energy.predicted_value), fmt(report.free_energy.gap),
             fmt(report.photon_number.exact_value), fmt(report.photon_number.predicted_value),
             fmt(report.photon_number.gap)});
}

void cmd_fig1(const RunConfig& cfg, std::ostream& out) {
    const auto base = model_params(cfg);
    const auto spec = parse_sweep(cfg.sweep.front(), base);
    const auto opt = landscape_options(cfg);
    CsvWriter csv(cfg, out);
    for (int i = 0; i < spec.steps; ++i) {
        const auto params = with(base, spec.swept, spec.value(i));
        const auto report = find_local_maxima(params, opt);
        std::string maxima;
        for (const auto& m : report.maxima) {
            maxima += (maxima.empty() ? "" : " ") + fmt(m.x);
        }
        csv.result("maxima", quoted(std::string(to_string(spec.swept)) + "=" + fmt(spec.value(i)) + " x=" + maxima +
                                    " global=" + fmt(report.global().x)));
    }
    csv.header({std::string(to_string(spec.swept)), "x", "omega"});
    for (int i = 0; i < spec.steps; ++i) {
        const auto params = with(base, spec.swept, spec.value(i));
        for (int k = 0; k < *cfg.points; ++k) {
            const double x = linear(*cfg.x_min, *cfg.x_max, k, *cfg.points);
            csv.row({fmt(spec.value(i)), fmt(x), fmt(omega(params, x, opt.quadrature))});
        }
    }
}

void cmd_fig2(const RunConfig& cfg, std::ostream& console) {
    auto stem = std::filesystem::path(cfg.out);
    if (stem.extension() == ".csv") {
        stem.replace_extension();
    }
    PhaseOptions popt;
    popt.landscape = landscape_options(cfg);
    for (double j : cfg.compare_j) {
        const auto spec = parse_sweep(cfg.sweep.front(), with(model_params(cfg), Parameter::J, j));
        const auto result = sweep(spec, popt.landscape);
        const auto transitions = classify_transition(result, popt);
        char label[32];
        std::snprintf(label, sizeof label, "%g", j);
        const auto path = stem.string() + "_J" + label + ".csv";
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw ConfigError("out", "cannot open '" + path + "' for writing");
        }
        write_sweep(cfg, result, transitions, file);
        console << "J=" << fmt(j) << " file=" << path;
        for (const auto& t : transitions) {
            console << " critical=" << fmt(t.critical_value) << " order=" << to_string(t.order);
        }
        console << '\n';
    }
}

} // namespace

void run(const RunConfig& cfg, std::ostream& console) {
    const auto& c = cfg.command;
    if (c == "reproduce-fig2") {
        cmd_fig2(cfg, console);
        return;
    }
    Sink sink(cfg.out, console);
    auto& out = sink.stream();
    if (c == "eval-omega") {
        cmd_eval(cfg, out);
    } else if (c == "find-max") {
        cmd_find_max(cfg, out);
    } else if (c == "sweep" || c == "reproduce-fig4") {
        cmd_sweep(cfg, out);
    } else if (c == "phase-map" || c == "reproduce-fig3") {
        cmd_phase_map(cfg, out);
    } else if (c == "hysteresis") {
        cmd_hysteresis(cfg, out);
    } else if (c == "oracle-chain") {
        cmd_oracle_chain(cfg, out);
    } else if (c == "oracle-full") {
        cmd_oracle_full(cfg, out);
    } else if (c == "reproduce-fig1") {
        cmd_fig1(cfg, out);
    } else {
        throw ConfigError("command", "unknown subcommand '" + c + "'");
    }
    out.flush();
}

} // namespace dicke::cli

#include "dicke/phase.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "dicke/parallel.hpp"

namespace dicke {

std::string_view to_string(Parameter p) {
    switch (p) {
    case Parameter::lambda: return "lambda";
    case Parameter::J: return "J";
    case Parameter::epsilon: return "epsilon";
    case Parameter::beta: return "beta";
    }
    return "?";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
    if (name == "lambda") return Parameter::lambda;
    if (name == "J" || name == "spin-coupling") return Parameter::J;
    if (name == "epsilon") return Parameter::epsilon;
    if (name == "beta") return Parameter::beta;
    return std::nullopt;
}

std::string_view to_string(TransitionOrder order) {
    switch (order) {
    case TransitionOrder::none: return "none";
    case TransitionOrder::first: return "first";
    case TransitionOrder::second: return "second";
    }
    return "?";
}

double get(const ModelParams& p, Parameter which) {
    switch (which) {
    case Parameter::lambda: return p.lambda;
    case Parameter::J: return p.J;
    case Parameter::epsilon: return p.epsilon;
    case Parameter::beta: return p.beta;
    }
    return 0.0;
}

ModelParams with(ModelParams p, Parameter which, double value) {
    switch (which) {
    case Parameter::lambda: p.lambda = value; break;
    case Parameter::J: p.J = value; break;
    case Parameter::epsilon: p.epsilon = value; break;
    case Parameter::beta: p.beta = value; break;
    }
    return p;
}

double SweepSpec::value(int i) const {
    if (steps <= 1) {
        return start;
    }
    // start*s + stop*t is symmetric under reversal, so both directions hit
    // bit-identical grid values
    const double t = static_cast<double>(i) / (steps - 1);
    const double s = static_cast<double>(steps - 1 - i) / (steps - 1);
    return start * s + stop * t;
}

SweepSpec SweepSpec::reversed() const {
    SweepSpec r = *this;
    std::swap(r.start, r.stop);
    return r;
}

void validate(const SweepSpec& spec) {
    if (spec.steps < 1) {
        throw ConfigError("sweep", "steps must be >= 1");
    }
    if (!std::isfinite(spec.start) || !std::isfinite(spec.stop)) {
        throw ConfigError("sweep", "start and stop must be finite");
    }
    if (spec.steps >= 2 && spec.start == spec.stop) {
        throw ConfigError("sweep", "start and stop must differ when steps >= 2");
    }
    const auto name = std::string(to_string(spec.swept));
    for (double v : {spec.start, spec.stop}) {
        try {
            validate(with(spec.fixed, spec.swept, v));
        } catch (const ConfigError& e) {
            throw ConfigError("sweep", "range leaves the valid domain (" + std::string(e.what()) + ")");
        }
    }
}

bool is_super_radiant(double x_star, const PhaseOptions& options) {
    return x_star > options.super_threshold;
}

double order_parameter(const ModelParams& params, const LandscapeOptions& options) {
    const double x = global_maximizer(params, options).x;
    return x * x + 1.0 / (2.0 * params.beta);
}

SweepRecord evaluate_step(const ModelParams& params, double value, const LandscapeOptions& options) {
    const auto report = find_local_maxima(params, options);
    const auto& top = report.global();
    return {value,
            top.x,
            top.omega_value,
            top.x * top.x + 1.0 / (2.0 * params.beta),
            report.tie_flag,
            static_cast<int>(report.maxima.size())};
}

SweepResult sweep(const SweepSpec& spec, const LandscapeOptions& options) {
    validate(spec);
    SweepResult result{spec, options, std::vector<SweepRecord>(static_cast<std::size_t>(spec.steps))};
    parallel_for(result.records.size(), [&](std::size_t i) {
        const double v = spec.value(static_cast<int>(i));
        try {
            result.records[i] = evaluate_step(with(spec.fixed, spec.swept, v), v, options);
        } catch (const std::exception& e) {
            throw SweepError(i, e.what());
        }
    });
    return result;
}

namespace {

// Run of records with >= 2 maxima touching records[i] or records[i + 1].
int coexistence_run(const std::vector<SweepRecord>& recs, std::size_t i) {
    int count = 0;
    for (std::size_t k = i + 1; k-- > 0 && recs[k].n_maxima >= 2;) {
        ++count;
    }
    for (std::size_t k = i + 1; k < recs.size() && recs[k].n_maxima >= 2; ++k) {
        ++count;
    }
    return count;
}

} // namespace

std::vector<TransitionRecord> classify_transition(const SweepResult& result, const PhaseOptions& opt) {
    std::vector<TransitionRecord> out;
    const auto& recs = result.records;
    if (recs.size() < 2) {
        return out;
    }
    const auto& spec = result.spec;
    const double step = std::abs(spec.value(1) - spec.value(0));

    auto eval = [&](double v) -> std::optional<SweepRecord> {
        const auto p = with(spec.fixed, spec.swept, v);
        try {
            validate(p);
        } catch (const ConfigError&) {
            return std::nullopt;
        }
        return evaluate_step(p, v, result.options);
    };
    auto super = [&](const SweepRecord& r) { return is_super_radiant(r.x_star, opt); };

    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        const auto& l = recs[i];
        const auto& r = recs[i + 1];
        const bool regime_change = super(l) != super(r);
        if (!regime_change) {
            if (!super(l)) {
                continue;
            }
            // jump between two non-zero maxima
            double neighbour = 0.0;
            bool have_neighbour = false;
            if (i > 0 && super(recs[i - 1])) {
                neighbour = std::max(neighbour, std::abs(l.x_star - recs[i - 1].x_star));
                have_neighbour = true;
            }
            if (i + 2 < recs.size() && super(recs[i + 2])) {
                neighbour = std::max(neighbour, std::abs(recs[i + 2].x_star - r.x_star));
                have_neighbour = true;
            }
            const bool coexist = l.n_maxima >= 2 || r.n_maxima >= 2;
            if (!have_neighbour || !coexist || std::abs(r.x_star - l.x_star) <= opt.jump_factor * neighbour) {
                continue;
            }
        }

        SweepRecord lo = l;
        SweepRecord hi = r;
        auto on_left = [&](const SweepRecord& m) {
            if (regime_change) {
                return super(m) == super(l);
            }
            return std::abs(m.x_star - lo.x_star) <= std::abs(m.x_star - hi.x_star);
        };
        for (int it = 0; it < opt.bisection_max_iter; ++it) {
            const double scale = std::max(std::abs(lo.value), std::abs(hi.value));
            if (std::abs(hi.value - lo.value) <= opt.bisection_rel_tol * scale) {
                break;
            }
            const double mid = 0.5 * (lo.value + hi.value);
            auto m = eval(mid);
            if (on_left(*m)) {
                lo = *m;
            } else {
                hi = *m;
            }
        }

        const double w = hi.value - lo.value;
        double drift = 0.0;
        if (auto before = eval(lo.value - w)) {
            drift = std::max(drift, std::abs(lo.x_star - before->x_star));
        }
        if (auto after = eval(hi.value + w)) {
            drift = std::max(drift, std::abs(after->x_star - hi.x_star));
        }

        TransitionRecord t;
        t.bracket_lo = lo.value;
        t.bracket_hi = hi.value;
        t.critical_value = 0.5 * (lo.value + hi.value);
        t.grid_index = i;
        t.bracket_jump = std::abs(hi.x_star - lo.x_star);
        t.drift = drift;

        const int run = coexistence_run(recs, i);
        const bool coexist_refined = lo.n_maxima >= 2 || hi.n_maxima >= 2;
        double width = run * step;
        if (run == 0 && coexist_refined) {
            width = std::abs(w);
        }
        t.coexistence_width = width;

        const bool jumped = t.bracket_jump > opt.jump_factor * drift;
        if (jumped && width > 0.0) {
            t.order = TransitionOrder::first;
            t.jump = t.bracket_jump;
        } else {
            t.order = TransitionOrder::second;
            t.jump = 0.0;
        }
        out.push_back(t);
    }
    return out;
}

SweepResult follow_branch(const SweepSpec& spec, const LandscapeOptions& options) {
    validate(spec);
    SweepResult result{spec, options, {}};
    result.records.reserve(static_cast<std::size_t>(spec.steps));

    double previous = 0.0;
    for (int i = 0; i < spec.steps; ++i) {
        const double v = spec.value(i);
        const auto params = with(spec.fixed, spec.swept, v);
        try {
            const auto report = find_local_maxima(params, options);
            LandscapePoint point = report.global();
            if (i > 0) {
                const double h = scan_bound(params) / (options.grid - 1);
                const auto local = climb_to_maximum(params, previous, h, options);
                if (std::abs(local.x - previous) <= std::max(10.0 * h, 0.05)) {
                    point = local;
                }
            }
            previous = point.x;
            result.records.push_back({v,
                                      point.x,
                                      point.omega_value,
                                      point.x * point.x + 1.0 / (2.0 * params.beta),
                                      report.tie_flag,
                                      static_cast<int>(report.maxima.size())});
        } catch (const std::exception& e) {
            throw SweepError(static_cast<std::size_t>(i), e.what());
        }
    }
    return result;
}

HysteresisResult hysteresis_branches(const SweepSpec& spec, const LandscapeOptions& options) {
    return {follow_branch(spec, options), follow_branch(spec.reversed(), options)};
}

PhaseMap phase_map(const SweepSpec& axis_a, const SweepSpec& axis_b, const ModelParams& fixed,
                   const PhaseOptions& opt) {
    if (axis_a.swept == axis_b.swept) {
        throw ConfigError("sweep", "phase map axes must sweep two distinct parameters");
    }
    SweepSpec a = axis_a;
    SweepSpec b = axis_b;
    a.fixed = fixed;
    b.fixed = fixed;
    validate(a);
    validate(b);

    PhaseMap map{a, b, {}, {}};
    const auto na = static_cast<std::size_t>(a.steps);
    const auto nb = static_cast<std::size_t>(b.steps);
    map.cells.resize(na * nb);
    parallel_for(na * nb, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / nb);
        const int j = static_cast<int>(idx % nb);
        const double va = a.value(i);
        const double vb = b.value(j);
        const auto params = with(with(fixed, a.swept, va), b.swept, vb);
        SweepRecord rec;
        try {
            rec = evaluate_step(params, vb, opt.landscape);
        } catch (const std::exception& e) {
            throw SweepError(idx, e.what());
        }
        auto& cell = map.cells[idx];
        cell.a = va;
        cell.b = vb;
        cell.x_star = rec.x_star;
        cell.omega_star = rec.omega_star;
        cell.n_maxima = rec.n_maxima;
        cell.phase = is_super_radiant(rec.x_star, opt) ? Phase::super_radiant : Phase::sub_radiant;
    });

    map.transitions.resize(na);
    parallel_for(na, [&](std::size_t i) {
        SweepResult row;
        row.spec = b;
        row.spec.fixed = with(fixed, a.swept, a.value(static_cast<int>(i)));
        row.options = opt.landscape;
        row.records.reserve(nb);
        for (std::size_t j = 0; j < nb; ++j) {
            const auto& c = map.cells[i * nb + j];
            const auto p = with(row.spec.fixed, b.swept, c.b);
            row.records.push_back({c.b, c.x_star, c.omega_star, c.x_star * c.x_star + 1.0 / (2.0 * p.beta), false,
                                   c.n_maxima});
        }
        map.transitions[i] = classify_transition(row, opt);
    });

    for (std::size_t i = 0; i < na; ++i) {
        for (const auto& t : map.transitions[i]) {
            for (std::size_t j : {t.grid_index, t.grid_index + 1}) {
                auto& cell = map.cells[i * nb + j];
                if (cell.boundary != TransitionOrder::first) {
                    cell.boundary = t.order;
                }
            }
        }
    }
    return map;
}

} // namespace dicke

// phase.hpp: Sweeps of the landscape maximiser over one control parameter,
// transition detection and classification, hysteresis branches and 2-D maps.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dicke/landscape.hpp"

namespace dicke {

enum class Parameter { lambda, J, epsilon, beta };

std::string_view to_string(Parameter p);
// Accepts lambda, J / spin-coupling, epsilon, beta.
std::optional<Parameter> parse_parameter(std::string_view name);

double get(const ModelParams& params, Parameter which);
ModelParams with(ModelParams params, Parameter which, double value);

struct SweepSpec {
    Parameter swept = Parameter::lambda;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;       // >= 1; steps == 1 samples only `start`
    ModelParams fixed;   // the swept field is ignored

    double value(int i) const;
    SweepSpec reversed() const;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

void validate(const SweepSpec& spec);

struct SweepRecord {
    double value = 0.0;
    double x_star = 0.0;
    double omega_star = 0.0;
    double theta = 0.0;
    bool tie = false;
    int n_maxima = 0;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct SweepResult {
    SweepSpec spec;
    LandscapeOptions options;
    std::vector<SweepRecord> records;
};

enum class TransitionOrder { none, first, second };
std::string_view to_string(TransitionOrder order);

struct TransitionRecord {
    double critical_value = 0.0;     // midpoint of the refined bracket
    double bracket_lo = 0.0;         // refined bracket, in sweep direction
    double bracket_hi = 0.0;
    std::size_t grid_index = 0;      // records[grid_index], records[grid_index + 1] straddle it
    TransitionOrder order = TransitionOrder::none;
    double jump = 0.0;               // |dx*| across the refined bracket when first-order, else 0
    double bracket_jump = 0.0;       // |dx*| across the refined bracket, always
    double drift = 0.0;              // |dx*| one bracket width beyond either end (max)
    double coexistence_width = 0.0;  // parameter span with >= 2 coexisting maxima
};

struct PhaseOptions {
    double super_threshold = 1e-6;   // x* above this is super-radiant
    double jump_factor = 20.0;       // first-order jump must exceed factor * drift
    double bisection_rel_tol = 1e-4;
    int bisection_max_iter = 40;
    LandscapeOptions landscape;
};

bool is_super_radiant(double x_star, const PhaseOptions& options = {});

// Theta = <a^dag a / N> = x*^2 + 1 / (2 beta).
double order_parameter(const ModelParams& params, const LandscapeOptions& options = {});

SweepRecord evaluate_step(const ModelParams& params, double value, const LandscapeOptions& options);

// Global maximiser at every step. Steps are independent and may run in parallel.
SweepResult sweep(const SweepSpec& spec, const LandscapeOptions& options = {});

// Zero <-> non-zero changes of x* and jumps on the super-radiant branch,
// refined by bisection on the swept parameter.
std::vector<TransitionRecord> classify_transition(const SweepResult& result, const PhaseOptions& options = {});

struct HysteresisResult {
    SweepResult forward;   // traversal order start -> stop
    SweepResult backward;  // traversal order stop -> start
};

// Branch-following sweeps in both directions. Each step starts from the
// previous step's maximiser and falls back to the global scan when that local
// maximum has disappeared.
HysteresisResult hysteresis_branches(const SweepSpec& spec, const LandscapeOptions& options = {});

// Follow one branch along `spec`, seeded from the global maximiser at step 0.
SweepResult follow_branch(const SweepSpec& spec, const LandscapeOptions& options = {});

enum class Phase { sub_radiant, super_radiant };

struct PhaseCell {
    double a = 0.0;
    double b = 0.0;
    double x_star = 0.0;
    double omega_star = 0.0;
    int n_maxima = 0;
    Phase phase = Phase::sub_radiant;
    TransitionOrder boundary = TransitionOrder::none;  // set on cells next to a transition along b
};

// cells[i * axis_b.steps + j] is (axis_a.value(i), axis_b.value(j)).
struct PhaseMap {
    SweepSpec axis_a;
    SweepSpec axis_b;
    std::vector<PhaseCell> cells;
    std::vector<std::vector<TransitionRecord>> transitions;  // per row i, along b

    const PhaseCell& at(int i, int j) const { return cells[static_cast<std::size_t>(i * axis_b.steps + j)]; }
};

// axis_a and axis_b sweep two distinct parameters; `fixed` supplies the other two.
PhaseMap phase_map(const SweepSpec& axis_a, const SweepSpec& axis_b, const ModelParams& fixed,
                   const PhaseOptions& options = {});

} // namespace dicke

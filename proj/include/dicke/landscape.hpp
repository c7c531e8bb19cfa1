#pragma once

#include <limits>
#include <vector>

#include "dicke/model.hpp"

namespace dicke {

struct LandscapeOptions {
    int grid = 2001;              // scan points on [0, x_max]
    double refine_tol = 1e-8;     // bracket width at which refinement stops
    double tie_tol = 1e-9;        // |dOmega| below which two maxima coexist as a tie
    QuadratureOptions quadrature;

    friend bool operator==(const LandscapeOptions&, const LandscapeOptions&) = default;
};

void validate(const LandscapeOptions& options);

struct LandscapePoint {
    double x = 0.0;
    double omega_value = 0.0;
    bool is_global = false;
    bool tied = false;  // set on the global point when the top two maxima tie
};

// Local maxima of Omega on [0, x_max], sorted by descending omega_value.
struct MaximaReport {
    std::vector<LandscapePoint> maxima;
    double coexistence_gap = std::numeric_limits<double>::infinity();
    bool tie_flag = false;

    const LandscapePoint& global() const;
};

// x_max = 2 lambda + eps + 1. Omega'(x) < 0 for all x > lambda, so every
// maximiser lies well inside.
double scan_bound(const ModelParams& params);

MaximaReport find_local_maxima(const ModelParams& params, const LandscapeOptions& options = {});

// Head of the maxima report; on a tie the smaller x wins and `tied` is set.
LandscapePoint global_maximizer(const ModelParams& params, const LandscapeOptions& options = {});

// Golden-section search for the maximum of Omega on [lo, hi] (0 <= lo < hi).
// Returns x = 0 exactly when Omega(0) is not beaten beyond rounding.
LandscapePoint refine_maximum(const ModelParams& params, double lo, double hi,
                              const LandscapeOptions& options = {});

// Uphill walk from `seed` with initial step `step`, then refinement. Used for
// branch following; the result is the local maximum the seed drains into.
LandscapePoint climb_to_maximum(const ModelParams& params, double seed, double step,
                                const LandscapeOptions& options = {});

} // namespace dicke

#include "dicke/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

// Omega(0) counts as the maximum unless beaten by more than rounding noise.
bool zero_dominates(double omega_zero, double omega_x) {
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(omega_zero));
    return omega_zero >= omega_x - noise;
}

} // namespace

void validate(const LandscapeOptions& o) {
    if (o.grid < 3) {
        throw ConfigError("grid", "must be >= 3");
    }
    if (!(o.refine_tol > 0) || !(o.tie_tol >= 0)) {
        throw ConfigError("tolerance", "refinement and tie tolerances must be positive");
    }
    validate(o.quadrature);
}

const LandscapePoint& MaximaReport::global() const {
    auto it = std::find_if(maxima.begin(), maxima.end(), [](const auto& p) { return p.is_global; });
    if (it == maxima.end()) {
        throw DomainError("MaximaReport: empty report");
    }
    return *it;
}

double scan_bound(const ModelParams& p) {
    return 2.0 * p.lambda + p.epsilon + 1.0;
}

LandscapePoint refine_maximum(const ModelParams& params, double lo, double hi, const LandscapeOptions& opt) {
    auto f = [&](double x) { return omega(params, x, opt.quadrature); };

    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > opt.refine_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    LandscapePoint best{fc >= fd ? c : d, std::max(fc, fd), false, false};
    if (lo == 0.0) {
        const double f0 = f(0.0);
        if (zero_dominates(f0, best.omega_value)) {
            best = {0.0, f0, false, false};
        }
    }
    return best;
}

MaximaReport find_local_maxima(const ModelParams& params, const LandscapeOptions& opt) {
    validate(params);
    validate(opt);
    MaximaReport report;

    if (params.lambda == 0.0) {
        // I does not depend on x: Omega = -beta x^2 + const
        report.maxima.push_back({0.0, omega(params, 0.0, opt.quadrature), true, false});
        return report;
    }

    const int n = opt.grid;
    const double x_max = scan_bound(params);
    const double h = x_max / (n - 1);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] = omega(params, i * h, opt.quadrature);
    }

    std::vector<LandscapePoint> found;
    if (values[0] >= values[1]) {
        found.push_back(refine_maximum(params, 0.0, h, opt));
    }
    for (int i = 1; i + 1 < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (values[k] > values[k - 1] && values[k] > values[k + 1]) {
            found.push_back(refine_maximum(params, (i - 1) * h, (i + 1) * h, opt));
        }
    }
    if (found.empty()) {
        // flat to rounding everywhere near the top; fall back to the best sample
        const auto best = std::max_element(values.begin(), values.end()) - values.begin();
        found.push_back({best * h, values[static_cast<std::size_t>(best)], false, false});
    }

    std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
    const double merge = 10.0 * opt.refine_tol;
    for (const auto& p : found) {
        if (!report.maxima.empty() && std::abs(p.x - report.maxima.back().x) < merge) {
            if (p.omega_value > report.maxima.back().omega_value) {
                report.maxima.back() = p;
            }
            continue;
        }
        report.maxima.push_back(p);
    }

    std::stable_sort(report.maxima.begin(), report.maxima.end(),
                     [](const auto& l, const auto& r) { return l.omega_value > r.omega_value; });

    std::size_t global = 0;
    if (report.maxima.size() >= 2) {
        report.coexistence_gap = report.maxima[0].omega_value - report.maxima[1].omega_value;
        report.tie_flag = report.coexistence_gap < opt.tie_tol;
        if (report.tie_flag && report.maxima[1].x < report.maxima[0].x) {
            global = 1;
        }
    }
    report.maxima[global].is_global = true;
    report.maxima[global].tied = report.tie_flag;
    return report;
}

LandscapePoint global_maximizer(const ModelParams& params, const LandscapeOptions& options) {
    return find_local_maxima(params, options).global();
}

LandscapePoint climb_to_maximum(const ModelParams& params, double seed, double step, const LandscapeOptions& opt) {
    auto f = [&](double x) { return omega(params, std::abs(x), opt.quadrature); };
    const double x_max = scan_bound(params);

    double b = std::clamp(seed, 0.0, x_max);
    double h = step;
    double fb = f(b);
    double a = std::max(b - h, 0.0);
    double c = b + h;
    double fa = f(a);
    double fc = f(c);

    if (fc > fb) {
        while (fc > fb && c < 2.0 * x_max) {
            a = b;
            b = c;
            fb = fc;
            h *= 2.0;
            c = b + h;
            fc = f(c);
        }
    } else if (fa > fb) {
        while (fa > fb && a > 0.0) {
            c = b;
            b = a;
            fb = fa;
            h *= 2.0;
            a = std::max(b - h, 0.0);
            fa = f(a);
        }
        if (fa > fb) {
            // walked into the x = 0 edge
            c = b;
        }
    }
    return refine_maximum(params, a, c, opt);
}

} // namespace dicke

#include "dicke/model.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace dicke {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) {
        throw ConfigError(field, what);
    }
}

// sin^2(k_j / 2) on the trapezoid nodes k_j = pi j / n, j = 0..n.
const std::vector<double>& half_angle_table(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const std::vector<double>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto table = std::make_unique<std::vector<double>>(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            const double s = std::sin(std::numbers::pi * j / (2.0 * n));
            (*table)[static_cast<std::size_t>(j)] = s * s;
        }
        slot = std::move(table);
    }
    return *slot;
}

} // namespace

void validate(const ModelParams& p) {
    require(std::isfinite(p.lambda) && p.lambda >= 0, "lambda", "must be finite and >= 0");
    require(std::isfinite(p.J) && p.J >= 0, "spin-coupling", "must be finite and >= 0");
    require(std::isfinite(p.epsilon) && p.epsilon >= 0, "epsilon", "must be finite and >= 0");
    require(std::isfinite(p.beta) && p.beta > 0, "beta", "must be finite and > 0");
}

void validate(const QuadratureOptions& o) {
    require(o.nodes >= 4 && o.nodes % 2 == 0, "nodes", "must be an even integer >= 4");
    require(o.max_nodes >= o.nodes, "max_nodes", "must be >= nodes");
    require(o.rel_tol > 0 && o.abs_tol >= 0, "tolerance", "must be positive");
}

IntegralEstimate landscape_I_estimate(const ModelParams& p, double x, const QuadratureOptions& opt) {
    const double G = transverse_field(p, x);
    if (p.J == 0.0) {
        // xi_k -> 2 G for every k
        return {stable_log_cosh(p.beta * G), 0.0, 0};
    }

    // log cosh(beta xi / 2) with xi / 2 = sqrt((J - G)^2 + 4 J G s)
    const double d2 = (p.J - G) * (p.J - G);
    const double c = 4.0 * p.J * G;
    auto f = [&](double s) { return stable_log_cosh(p.beta * std::sqrt(d2 + c * s)); };

    int n = opt.nodes;
    const auto& table = half_angle_table(n);
    const double ends = 0.5 * (f(table.front()) + f(table.back()));
    double even = 0.0;  // interior nodes shared with the n/2 grid
    double odd = 0.0;
    for (int j = 1; j < n; ++j) {
        const double v = f(table[static_cast<std::size_t>(j)]);
        (j % 2 == 0 ? even : odd) += v;
    }
    double interior = even + odd;
    double coarse = (ends + even) / (n / 2);
    double fine = (ends + interior) / n;

    for (;;) {
        const double residual = std::abs(fine - coarse);
        if (residual <= opt.rel_tol * std::abs(fine) + opt.abs_tol) {
            return {fine, residual, n};
        }
        if (2 * static_cast<long long>(n) > opt.max_nodes) {
            throw NumericalError("landscape_I: quadrature not converged at " + std::to_string(n) +
                                     " nodes (residual " + std::to_string(residual) + ")",
                                 residual);
        }
        n *= 2;
        double added = 0.0;
        for (int j = 1; j < n; j += 2) {
            const double s = std::sin(std::numbers::pi * j / (2.0 * n));
            added += f(s * s);
        }
        coarse = fine;
        interior += added;
        fine = (ends + interior) / n;
    }
}

double landscape_I(const ModelParams& params, double x, const QuadratureOptions& options) {
    return landscape_I_estimate(params, x, options).value;
}

double omega(const ModelParams& params, double x, const QuadratureOptions& options) {
    return -params.beta * x * x + landscape_I(params, x, options);
}

} // namespace dicke

// Test-only oracles and generators. Nothing here calls the code under test.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "dicke/model.hpp"

namespace dicke::test {

// Omega for J = 0 written out independently: -beta x^2 + log cosh(beta sqrt(4 l^2 x^2 + e^2/4)).
inline long double omega_j0(double lambda, double epsilon, double beta, double x) {
    const long double y = beta * std::sqrt(4.0L * lambda * lambda * x * x + epsilon * epsilon / 4.0L);
    // log cosh y = y - log 2 + log(1 + e^{-2y}), y >= 0
    return -static_cast<long double>(beta) * x * x + y - std::log(2.0L) + std::log1p(std::exp(-2.0L * y));
}

// dOmega/dx for J = 0.
inline double d_omega_j0(double lambda, double epsilon, double beta, double x) {
    const double G = std::sqrt(4.0 * lambda * lambda * x * x + epsilon * epsilon / 4.0);
    return -2.0 * beta * x + beta * std::tanh(beta * G) * 4.0 * lambda * lambda * x / G;
}

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Second derivative at x = 0 of the J = 0 closed form, by central differences in long double.
inline long double curvature_at_zero_j0(double lambda, double epsilon, double beta) {
    const double h = 1e-4;
    return (omega_j0(lambda, epsilon, beta, h) - 2.0L * omega_j0(lambda, epsilon, beta, 0.0) +
            omega_j0(lambda, epsilon, beta, -h)) /
           (static_cast<long double>(h) * h);
}

// Critical lambda of the J = 0 model from the sign change of the curvature at x = 0.
inline double critical_lambda_j0(double epsilon, double beta) {
    return bisect([&](double l) { return static_cast<double>(curvature_at_zero_j0(l, epsilon, beta)); }, 1e-3, 10.0,
                  80);
}

struct ParamGen {
    std::mt19937_64 rng;
    explicit ParamGen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    ModelParams params(double beta_max) {
        return {uniform(0.0, 2.0), uniform(0.0, 2.0), uniform(0.0, 3.0), log_uniform(1e-3, beta_max)};
    }
};

} // namespace dicke::test

// model.hpp: Free-energy landscape of the Dicke model with nearest-neighbour
// Y-Y spin coupling.
//
// Energies are in units of the photon energy. With x the scaled coherent-field
// amplitude, the frozen-field spin chain is a transverse-field Ising chain with
// field G(x) = sqrt((2 lambda x)^2 + (eps/2)^2) and dimensionless ratio
// g = G / J. Its quasiparticles have
//
//     xi_k = 2 J sqrt(1 + g^2 - 2 g cos k),
//
// and the per-spin landscape whose maximum controls Z is
//
//     Omega(x) = -beta x^2 + I(x),  I(x) = (1/2pi) int_0^2pi log cosh(beta xi_k / 2) dk.
//
// The constant log 2 per spin is left out of I throughout.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "dicke/error.hpp"

namespace dicke {

template <typename Scalar>
struct BasicModelParams {
    Scalar lambda{0};   // qubit-field coupling
    Scalar J{0};        // nearest-neighbour Y-Y coupling
    Scalar epsilon{0};  // qubit splitting
    Scalar beta{1};     // inverse temperature

    friend bool operator==(const BasicModelParams&, const BasicModelParams&) = default;
};

using ModelParams = BasicModelParams<double>;

// Throws ConfigError naming the first offending field.
void validate(const ModelParams& params);

// log(cosh(y)) without overflow. Exact to rounding for every finite y.
template <typename Scalar>
Scalar stable_log_cosh(Scalar y) {
    using std::abs;
    using std::exp;
    using std::log1p;
    using std::sinh;
    const Scalar a = abs(y);
    if (a < Scalar(1)) {
        // cosh(a) - 1 = 2 sinh^2(a/2), no cancellation near zero
        const Scalar s = sinh(a / 2);
        return log1p(2 * s * s);
    }
    // past this point log1p(exp(-2a)) is below half an ulp of a - log 2
    constexpr Scalar cutoff = Scalar(std::numeric_limits<Scalar>::digits + 2) * std::numbers::ln2_v<Scalar> / 2;
    if (a > cutoff) {
        return a - std::numbers::ln2_v<Scalar>;
    }
    return a + log1p(exp(-2 * a)) - std::numbers::ln2_v<Scalar>;
}

// G(x) = sqrt((2 lambda x)^2 + (eps/2)^2), the rotated transverse field J g.
template <typename Scalar>
Scalar transverse_field(const BasicModelParams<Scalar>& p, Scalar x) {
    using std::hypot;
    return hypot(2 * p.lambda * x, p.epsilon / 2);
}

// g(x) = G(x) / J. J = 0 has no finite g; callers take the closed form instead.
template <typename Scalar>
Scalar effective_field_g(const BasicModelParams<Scalar>& p, Scalar x) {
    if (!(p.J > 0)) {
        throw DomainError("effective_field_g: J = 0, use J=0 closed form");
    }
    return transverse_field(p, x) / p.J;
}

// xi_k written as 2 sqrt((J - G)^2 + 4 J G sin^2(k/2)); same value, no
// cancellation when g is close to 1.
template <typename Scalar>
Scalar dispersion_from_half_angle(Scalar J, Scalar G, Scalar sin2_half_k) {
    using std::sqrt;
    const Scalar d = J - G;
    return 2 * sqrt(d * d + 4 * J * G * sin2_half_k);
}

template <typename Scalar>
Scalar quasiparticle_energy_xi(const BasicModelParams<Scalar>& p, Scalar x, Scalar k) {
    using std::sin;
    if (!(p.J > 0)) {
        throw DomainError("quasiparticle_energy_xi: J = 0, use J=0 closed form");
    }
    const Scalar s = sin(k / 2);
    return dispersion_from_half_angle(p.J, transverse_field(p, x), s * s);
}

struct QuadratureOptions {
    int nodes = 4096;             // trapezoid intervals on [0, pi]; even
    double rel_tol = 1e-10;       // accepted |I_n - I_{n/2}| relative to |I_n|
    double abs_tol = 1e-15;
    int max_nodes = 1 << 22;

    friend bool operator==(const QuadratureOptions&, const QuadratureOptions&) = default;
};

void validate(const QuadratureOptions& options);

struct IntegralEstimate {
    double value = 0.0;
    double residual = 0.0;  // |I_n - I_{n/2}| at the accepted level
    int nodes = 0;
};

// I(x) with convergence diagnostics. The J = 0 branch is closed form
// (nodes = 0, residual = 0). Throws NumericalError if max_nodes is reached.
IntegralEstimate landscape_I_estimate(const ModelParams& params, double x,
                                      const QuadratureOptions& options = {});

double landscape_I(const ModelParams& params, double x, const QuadratureOptions& options = {});

// Omega(x) = -beta x^2 + I(x).
double omega(const ModelParams& params, double x, const QuadratureOptions& options = {});

} // namespace dicke

#include "dicke/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "dicke/landscape.hpp"

namespace dicke {

namespace {

using cplx = std::complex<double>;

int rotate(int s, int n_sites) {
    const int mask = (1 << n_sites) - 1;
    return ((s << 1) | (s >> (n_sites - 1))) & mask;
}

double z_sum(int s, int n_sites) {
    return n_sites - 2.0 * std::popcount(static_cast<unsigned>(s));
}

// Y_i Y_j on |b_i b_j>: -1 if the bits agree, +1 otherwise (always flips both).
double yy_sign(int s, int i, int j) {
    return ((s >> i) & 1) == ((s >> j) & 1) ? -1.0 : 1.0;
}

void check_budget(std::size_t bytes, const OracleOptions& opt, const std::string& what) {
    if (bytes > opt.memory_budget_bytes) {
        throw MemoryBudgetError(what + " needs " + std::to_string(bytes) + " bytes, budget is " +
                                std::to_string(opt.memory_budget_bytes));
    }
}

std::size_t eigensolve_bytes(std::size_t dim) {
    // matrix, eigenvectors, tridiagonalisation workspace
    return 3 * dim * dim * sizeof(cplx);
}

struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd weights;  // |v_ib|^2, rows = basis, cols = eigenstates
};

// Blocks with real phases (m = 0, N/2) go through the real solver.
Spectrum diagonalize(const Eigen::MatrixXcd& block, bool real, bool vectors) {
    const auto mode = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    Spectrum out;
    if (real) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.real(), mode);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigensolver failed", 0.0);
        }
        out.values = solver.eigenvalues();
        if (vectors) {
            out.weights = solver.eigenvectors().array().square().matrix();
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, mode);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("eigensolver failed", 0.0);
        }
        out.values = solver.eigenvalues();
        if (vectors) {
            out.weights = solver.eigenvectors().cwiseAbs2();
        }
    }
    return out;
}

bool real_sector(int m, int n_sites) {
    return m == 0 || 2 * m == n_sites;
}

} // namespace

void validate(const ChainSpec& spec) {
    if (spec.n_sites < 2 || spec.n_sites > 14) {
        throw ConfigError("sites", "chain oracle needs 2 <= sites <= 14");
    }
}

void validate(const SpinBosonSpec& spec) {
    if (spec.n_sites < 2 || spec.n_sites > 8) {
        throw ConfigError("sites", "spin-boson oracle needs 2 <= sites <= 8");
    }
    if (spec.boson_cutoff < 4) {
        throw ConfigError("cutoff", "boson cutoff must be >= 4");
    }
}

Eigen::MatrixXd chain_hamiltonian_dense(const ModelParams& p, double x, int n_sites, std::span<const int> site_order) {
    std::vector<int> order(static_cast<std::size_t>(n_sites));
    std::iota(order.begin(), order.end(), 0);
    if (!site_order.empty()) {
        if (site_order.size() != order.size()) {
            throw DomainError("chain_hamiltonian_dense: site_order has the wrong length");
        }
        order.assign(site_order.begin(), site_order.end());
    }
    const int dim = 1 << n_sites;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        h(s, s) += 0.5 * p.epsilon * z_sum(s, n_sites);
        for (int j = 0; j < n_sites; ++j) {
            const int a = order[static_cast<std::size_t>(j)];
            const int b = order[static_cast<std::size_t>((j + 1) % n_sites)];
            h(s ^ (1 << a), s) += 2.0 * p.lambda * x;
            h(s ^ (1 << a) ^ (1 << b), s) += -p.J * yy_sign(s, a, b);
        }
    }
    return h;
}

Eigen::MatrixXd spin_boson_hamiltonian_dense(const ModelParams& p, int n_sites, int cutoff) {
    const int ns = 1 << n_sites;
    const int dim = ns * (cutoff + 1);
    const double g = p.lambda / std::sqrt(static_cast<double>(n_sites));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= cutoff; ++n) {
        for (int s = 0; s < ns; ++s) {
            const int col = n * ns + s;
            h(col, col) += n + 0.5 * p.epsilon * z_sum(s, n_sites);
            for (int j = 0; j < n_sites; ++j) {
                const int t = s ^ (1 << j);
                if (n < cutoff) h((n + 1) * ns + t, col) += g * std::sqrt(n + 1.0);
                if (n > 0) h((n - 1) * ns + t, col) += g * std::sqrt(static_cast<double>(n));
                const int k = (j + 1) % n_sites;
                h(n * ns + (s ^ (1 << j) ^ (1 << k)), col) += -p.J * yy_sign(s, j, k);
            }
        }
    }
    return h;
}

MomentumBasis::MomentumBasis(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 1 || n_sites > 20) {
        throw DomainError("MomentumBasis: unsupported number of sites");
    }
    const int dim = 1 << n_sites;
    rep_of_.assign(static_cast<std::size_t>(dim), -1);
    shift_of_.assign(static_cast<std::size_t>(dim), 0);
    period_.assign(static_cast<std::size_t>(dim), 0);
    sectors_.resize(static_cast<std::size_t>(n_sites));
    for (int s = 0; s < dim; ++s) {
        if (rep_of_[static_cast<std::size_t>(s)] >= 0) {
            continue;
        }
        // s is the smallest member of a new orbit
        int t = s;
        int l = 0;
        do {
            if (rep_of_[static_cast<std::size_t>(t)] < 0) {
                rep_of_[static_cast<std::size_t>(t)] = s;
                shift_of_[static_cast<std::size_t>(t)] = l;
            }
            t = rotate(t, n_sites);
            ++l;
        } while (t != s);
        period_[static_cast<std::size_t>(s)] = l;
        for (int m = 0; m < n_sites; ++m) {
            if ((m * l) % n_sites == 0) {
                sectors_[static_cast<std::size_t>(m)].push_back(s);
            }
        }
    }
}

Eigen::MatrixXcd chain_momentum_block(const ModelParams& p, double x, const MomentumBasis& basis, int m) {
    const int n_sites = basis.n_sites();
    const auto& reps = basis.sector(m);
    const auto d = static_cast<Eigen::Index>(reps.size());
    std::vector<int> index(std::size_t{1} << n_sites, -1);
    for (Eigen::Index i = 0; i < d; ++i) {
        index[static_cast<std::size_t>(reps[static_cast<std::size_t>(i)])] = static_cast<int>(i);
    }
    const double q = 2.0 * std::numbers::pi * m / n_sites;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    auto add = [&](Eigen::Index col, int ra, int s, double amp) {
        const int rb = basis.representative(s);
        const int row = index[static_cast<std::size_t>(rb)];
        if (row < 0) {
            return;
        }
        const double norm = std::sqrt(static_cast<double>(basis.period(ra)) / basis.period(rb));
        h(row, col) += amp * norm * std::polar(1.0, q * basis.shift(s));
    };
    for (Eigen::Index col = 0; col < d; ++col) {
        const int ra = reps[static_cast<std::size_t>(col)];
        h(col, col) += 0.5 * p.epsilon * z_sum(ra, n_sites);
        for (int j = 0; j < n_sites; ++j) {
            const int k = (j + 1) % n_sites;
            add(col, ra, ra ^ (1 << j), 2.0 * p.lambda * x);
            add(col, ra, ra ^ (1 << j) ^ (1 << k), -p.J * yy_sign(ra, j, k));
        }
    }
    return h;
}

Eigen::MatrixXcd spin_boson_block(const ModelParams& p, const MomentumBasis& basis, int cutoff, int m, int parity,
                                  std::vector<double>* photon_number) {
    const int n_sites = basis.n_sites();
    const int ns = 1 << n_sites;
    const auto& reps = basis.sector(m);

    std::vector<int> index(static_cast<std::size_t>(ns * (cutoff + 1)), -1);
    std::vector<std::pair<int, int>> states;  // (n, rep)
    for (int n = 0; n <= cutoff; ++n) {
        for (int r : reps) {
            const int sign = ((n + std::popcount(static_cast<unsigned>(r))) % 2 == 0) ? 1 : -1;
            if (sign == parity) {
                index[static_cast<std::size_t>(n * ns + r)] = static_cast<int>(states.size());
                states.emplace_back(n, r);
            }
        }
    }
    const auto d = static_cast<Eigen::Index>(states.size());
    if (photon_number != nullptr) {
        photon_number->resize(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            (*photon_number)[i] = states[i].first;
        }
    }

    const double q = 2.0 * std::numbers::pi * m / n_sites;
    const double g = p.lambda / std::sqrt(static_cast<double>(n_sites));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    auto add = [&](Eigen::Index col, int ra, int n_to, int s, double amp) {
        const int rb = basis.representative(s);
        const int row = index[static_cast<std::size_t>(n_to * ns + rb)];
        if (row < 0) {
            return;
        }
        const double norm = std::sqrt(static_cast<double>(basis.period(ra)) / basis.period(rb));
        h(row, col) += amp * norm * std::polar(1.0, q * basis.shift(s));
    };
    for (Eigen::Index col = 0; col < d; ++col) {
        const auto [n, ra] = states[static_cast<std::size_t>(col)];
        h(col, col) += n + 0.5 * p.epsilon * z_sum(ra, n_sites);
        for (int j = 0; j < n_sites; ++j) {
            const int k = (j + 1) % n_sites;
            const int flipped = ra ^ (1 << j);
            if (n < cutoff) add(col, ra, n + 1, flipped, g * std::sqrt(n + 1.0));
            if (n > 0) add(col, ra, n - 1, flipped, g * std::sqrt(static_cast<double>(n)));
            add(col, ra, n, ra ^ (1 << j) ^ (1 << k), -p.J * yy_sign(ra, j, k));
        }
    }
    return h;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd chain_spectrum(const ModelParams& params, double x, const ChainSpec& spec,
                               const OracleOptions& options) {
    validate(params);
    validate(spec);
    const MomentumBasis basis(spec.n_sites);
    std::vector<double> all;
    all.reserve(std::size_t{1} << spec.n_sites);
    for (int m = 0; m < spec.n_sites; ++m) {
        check_budget(eigensolve_bytes(basis.sector(m).size()), options, "chain block");
        const auto block = chain_momentum_block(params, x, basis, m);
        if (!is_hermitian(block)) {
            throw NumericalError("chain block is not Hermitian", 0.0);
        }
        const auto spec_m = diagonalize(block, real_sector(m, spec.n_sites), false);
        all.insert(all.end(), spec_m.values.data(), spec_m.values.data() + spec_m.values.size());
    }
    std::sort(all.begin(), all.end());
    return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

double log_partition(std::span<const double> energies, double beta) {
    if (energies.empty()) {
        throw DomainError("log_partition: empty spectrum");
    }
    const double e0 = *std::min_element(energies.begin(), energies.end());
    double sum = 0.0;
    for (double e : energies) {
        sum += std::exp(-beta * (e - e0));
    }
    return -beta * e0 + std::log(sum);
}

double chain_log_Z_exact(const ModelParams& params, double x, const ChainSpec& spec, const OracleOptions& options) {
    const auto spectrum = chain_spectrum(params, x, spec, options);
    return log_partition({spectrum.data(), static_cast<std::size_t>(spectrum.size())}, params.beta) / spec.n_sites;
}

double chain_log_Z_product_formula(const ModelParams& params, double x, const ChainSpec& spec) {
    validate(params);
    validate(spec);
    double sum = 0.0;
    for (int m = 0; m < spec.n_sites; ++m) {
        const double k = 2.0 * std::numbers::pi * m / spec.n_sites;
        // J = 0: flat band xi = 2G
        const double xi = params.J > 0 ? quasiparticle_energy_xi(params, x, k) : 2.0 * transverse_field(params, x);
        sum += stable_log_cosh(0.5 * params.beta * xi) + std::numbers::ln2;
    }
    return sum / spec.n_sites;
}

SpinBosonResult spin_boson_thermal(const ModelParams& params, const SpinBosonSpec& spec,
                                   const OracleOptions& options) {
    validate(params);
    validate(spec);
    const MomentumBasis basis(spec.n_sites);
    const auto levels = static_cast<std::size_t>(spec.boson_cutoff) + 1;
    for (int m = 0; m < spec.n_sites; ++m) {
        // a parity sector holds at most half the (n, rep) pairs, rounded up per n
        const auto bound = levels * ((basis.sector(m).size() + 1) / 2 + 1);
        check_budget(eigensolve_bytes(bound), options, "spin-boson block");
    }

    std::vector<double> energies;
    std::vector<double> photons;
    for (int m = 0; m < spec.n_sites; ++m) {
        for (int parity : {1, -1}) {
            std::vector<double> n_of;
            const auto block = spin_boson_block(params, basis, spec.boson_cutoff, m, parity, &n_of);
            if (block.rows() == 0) {
                continue;
            }
            if (!is_hermitian(block)) {
                throw NumericalError("spin-boson block is not Hermitian", 0.0);
            }
            const auto s = diagonalize(block, real_sector(m, spec.n_sites), true);
            const Eigen::Map<const Eigen::VectorXd> n_vec(n_of.data(), static_cast<Eigen::Index>(n_of.size()));
            const Eigen::VectorXd occupation = s.weights.transpose() * n_vec;
            for (Eigen::Index i = 0; i < s.values.size(); ++i) {
                energies.push_back(s.values(i));
                photons.push_back(occupation(i));
            }
        }
    }

    const double log_z = log_partition(energies, params.beta);
    const double e0 = *std::min_element(energies.begin(), energies.end());
    double z = 0.0;
    double n_avg = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double w = std::exp(-params.beta * (energies[i] - e0));
        z += w;
        n_avg += w * photons[i];
    }
    return {log_z / spec.n_sites, n_avg / z / spec.n_sites};
}

FullEdReport full_ed(const ModelParams& params, const SpinBosonSpec& spec, const OracleOptions& options) {
    const auto base = spin_boson_thermal(params, spec, options);
    SpinBosonSpec wider = spec;
    wider.boson_cutoff += options.cutoff_check_increment;
    const auto check = spin_boson_thermal(params, wider, options);

    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); };
    const double res_z = rel(base.log_z_per_site, check.log_z_per_site);
    const double res_n = rel(base.photon_per_site, check.photon_per_site);
    const double residual = std::max(res_z, res_n);
    if (!(residual < options.cutoff_rel_tol)) {
        throw CutoffUnconvergedError("full_ed: boson cutoff " + std::to_string(spec.boson_cutoff) +
                                         " not converged (relative change " + std::to_string(residual) + ")",
                                     residual);
    }

    const auto top = global_maximizer(params);
    const double theta = top.x * top.x + 1.0 / (2.0 * params.beta);

    std::map<std::string, double> meta{{"n_sites", spec.n_sites},
                                       {"boson_cutoff", spec.boson_cutoff},
                                       {"check_cutoff", wider.boson_cutoff},
                                       {"cutoff_residual_log_z", res_z},
                                       {"cutoff_residual_photon", res_n},
                                       {"x_star", top.x}};
    FullEdReport report;
    report.free_energy = {base.log_z_per_site, top.omega_value + std::numbers::ln2,
                          std::abs(base.log_z_per_site - top.omega_value - std::numbers::ln2), meta};
    report.photon_number = {base.photon_per_site, theta, std::abs(base.photon_per_site - theta), meta};
    return report;
}

} // namespace dicke

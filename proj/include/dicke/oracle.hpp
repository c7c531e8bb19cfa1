// oracle.hpp: Finite-N exact diagonalisation used to validate the
// thermodynamic-limit landscape.
//
// Two problems are solved exactly:
//  * the frozen-field chain  H' = sum_j 2 lambda x X_j + (eps/2) Z_j - J Y_j Y_{j+1}
//  * the full spin-boson     H  = a^dag a + sum_j (lambda/sqrt N)(a + a^dag) X_j
//                                 + (eps/2) Z_j - J Y_j Y_{j+1}
// both on a periodic ring. Both Hamiltonians commute with the cyclic site shift,
// and the spin-boson one also with (-1)^n prod_j Z_j, so they are diagonalised
// block by block with dense eigensolvers.
#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/model.hpp"

namespace dicke {

struct OracleOptions {
    std::size_t memory_budget_bytes = std::size_t{2} << 30;
    int cutoff_check_increment = 8;   // full_ed re-runs at M + increment
    double cutoff_rel_tol = 1e-6;
};

struct ChainSpec {
    int n_sites = 8;  // 2..14
};

struct SpinBosonSpec {
    int n_sites = 4;       // 2..8
    int boson_cutoff = 24; // Fock states 0..M, M >= 4
};

void validate(const ChainSpec& spec);
void validate(const SpinBosonSpec& spec);

struct OracleReport {
    double exact_value = 0.0;
    double predicted_value = 0.0;
    double gap = 0.0;  // |exact - predicted|
    std::map<std::string, double> metadata;
};

// Spin basis: bit j of a state index is site j, 0 = Z eigenvalue +1.

// Dense 2^N x 2^N chain Hamiltonian. `site_order[j]` relabels site j; the
// default is the identity. Used to cross-check the block solver.
Eigen::MatrixXd chain_hamiltonian_dense(const ModelParams& params, double x, int n_sites,
                                        std::span<const int> site_order = {});

// Dense spin-boson Hamiltonian on Fock(0..M) (x) spins; index = n * 2^N + s.
Eigen::MatrixXd spin_boson_hamiltonian_dense(const ModelParams& params, int n_sites, int cutoff);

// Translation-symmetry sectors of an N-site ring.
class MomentumBasis {
public:
    explicit MomentumBasis(int n_sites);

    int n_sites() const { return n_sites_; }
    // representatives compatible with momentum 2 pi m / N
    const std::vector<int>& sector(int m) const { return sectors_[static_cast<std::size_t>(m)]; }
    int period(int rep) const { return period_[static_cast<std::size_t>(rep)]; }
    int representative(int state) const { return rep_of_[static_cast<std::size_t>(state)]; }
    // state = T^shift(representative), T moving site j to j + 1
    int shift(int state) const { return shift_of_[static_cast<std::size_t>(state)]; }

private:
    int n_sites_;
    std::vector<int> rep_of_;
    std::vector<int> shift_of_;
    std::vector<int> period_;
    std::vector<std::vector<int>> sectors_;
};

// Chain Hamiltonian restricted to momentum sector m.
Eigen::MatrixXcd chain_momentum_block(const ModelParams& params, double x, const MomentumBasis& basis, int m);

// Spin-boson Hamiltonian in momentum sector m and parity sector (+1 / -1).
// `photon_number` receives n for each basis state of the block.
Eigen::MatrixXcd spin_boson_block(const ModelParams& params, const MomentumBasis& basis, int cutoff, int m,
                                  int parity, std::vector<double>* photon_number = nullptr);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

// Full chain spectrum, sorted ascending.
Eigen::VectorXd chain_spectrum(const ModelParams& params, double x, const ChainSpec& spec,
                               const OracleOptions& options = {});

// log sum_i exp(-beta E_i) without overflow.
double log_partition(std::span<const double> energies, double beta);

// (1/N) log Tr exp(-beta H') from the exact spectrum.
double chain_log_Z_exact(const ModelParams& params, double x, const ChainSpec& spec,
                         const OracleOptions& options = {});

// (1/N) sum_k log[2 cosh(beta xi_k / 2)] over k = 2 pi m / N.
double chain_log_Z_product_formula(const ModelParams& params, double x, const ChainSpec& spec);

struct SpinBosonResult {
    double log_z_per_site = 0.0;
    double photon_per_site = 0.0;  // <a^dag a> / N
};

// Exact thermal values at a single cutoff, no convergence check.
SpinBosonResult spin_boson_thermal(const ModelParams& params, const SpinBosonSpec& spec,
                                   const OracleOptions& options = {});

struct FullEdReport {
    OracleReport free_energy;    // (1/N) log Z vs Omega(x*) + log 2
    OracleReport photon_number;  // <a^dag a>/N vs Theta
};

// Exact spin-boson thermodynamics, cutoff-checked at M + increment.
// Throws CutoffUnconvergedError or MemoryBudgetError.
FullEdReport full_ed(const ModelParams& params, const SpinBosonSpec& spec, const OracleOptions& options = {});

} // namespace dicke

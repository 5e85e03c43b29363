#ifndef QUDITCUT_ORACLE_HPP
#define QUDITCUT_ORACLE_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "quditcut/mindcut.hpp"
#include "quditcut/product_state.hpp"

namespace quditcut::oracle {

// Exact, slow reference algebra on the full d^N Hilbert space. Everything
// here is the ground truth the closed-form fast path is certified against;
// none of it is built for scale. Basis index convention: qudit 0 is the
// most significant digit, b = sum_i x_i d^(N-1-i).

using DenseState = Eigen::VectorXcd;
using DenseOperator = Eigen::MatrixXcd;

/// d^N as a guarded size; throws std::invalid_argument beyond `limit`.
std::int64_t dense_dimension(int num_qudits, int dim, std::int64_t limit);

/// Kronecker product of the per-qudit amplitude vectors.
DenseState lift_product_state(const ProductState& state);

/// I x ... x m x ... x I with `m` acting on `qudit`.
DenseOperator lift_single_qudit(int num_qudits, int dim, int qudit,
                                const DenseOperator& m);

/// G_l = i A_l as a dim x dim complex matrix.
DenseOperator pool_operator_matrix(const PoolOperator& op);

/// Cut plus penalty Hamiltonian assembled from Kronecker-lifted projectors.
DenseOperator build_hamiltonian(const MinDCutInstance& instance);

std::complex<double> expectation(const DenseState& psi, const DenseOperator& a);
std::complex<double> commutator_expectation(const DenseState& psi,
                                            const DenseOperator& a,
                                            const DenseOperator& b);

/// Normalized e^{-tau H} |psi0> via eigendecomposition of H.
DenseState exact_ite(const DenseOperator& hamiltonian, const DenseState& psi0,
                     double tau);

/// Minimum-norm least-squares solution of S a = b with
/// S_ij = Re<G_i G_j> and b_j = Re(-(i/2) <[G_j, H]>), the stationarity
/// system of the first-order imaginary-time residual.
Eigen::VectorXd solve_linear_system(const DenseState& psi,
                                    const std::vector<DenseOperator>& generators,
                                    const DenseOperator& hamiltonian);

/// || (1 - i dt G) |psi> - (1 - dt H) |psi> ||, the first-order residual.
double residual_delta(const DenseState& psi, const DenseOperator& generator,
                      const DenseOperator& hamiltonian, double delta_tau);

struct BruteForceResult {
  std::vector<int> assignment;
  double cost = 0.0;
};

/// Exhaustive minimum of the penalized total cost over all d^N assignments.
/// Guarded at d^N <= 1e7.
BruteForceResult brute_force_optimum(const MinDCutInstance& instance);

/// Exhaustive minimum of the cut cost over capacity-feasible assignments.
/// Throws std::runtime_error when no assignment is feasible.
BruteForceResult brute_force_feasible_optimum(const MinDCutInstance& instance);

}  // namespace quditcut::oracle

#endif  // QUDITCUT_ORACLE_HPP

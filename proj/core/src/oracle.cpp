#include "quditcut/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quditcut::oracle {

namespace {

constexpr std::int64_t kMaxOperatorDim = 4096;
constexpr std::int64_t kMaxBruteForce = 10'000'000;

using Cx = std::complex<double>;

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

DenseOperator projector(int dim, int level) {
  DenseOperator p = DenseOperator::Zero(dim, dim);
  p(level, level) = 1.0;
  return p;
}

void decode(std::int64_t index, int num_qudits, int dim,
            std::vector<int>& labels) {
  for (int i = num_qudits - 1; i >= 0; --i) {
    labels[i] = static_cast<int>(index % dim);
    index /= dim;
  }
}

}  // namespace

std::int64_t dense_dimension(int num_qudits, int dim, std::int64_t limit) {
  std::int64_t total = 1;
  for (int i = 0; i < num_qudits; ++i) {
    total *= dim;
    if (total > limit) {
      throw std::invalid_argument(
          "dense oracle size d^N exceeds the guard of " + std::to_string(limit));
    }
  }
  return total;
}

DenseState lift_product_state(const ProductState& state) {
  const auto total =
      dense_dimension(state.num_qudits, state.dim, std::int64_t{1} << 20);
  DenseState psi = DenseState::Ones(1);
  for (int i = 0; i < state.num_qudits; ++i) {
    auto v = state.qudit(i);
    DenseState factor(state.dim);
    for (int k = 0; k < state.dim; ++k) factor(k) = v[k];
    DenseState next(psi.size() * state.dim);
    for (Eigen::Index r = 0; r < psi.size(); ++r) {
      next.segment(r * state.dim, state.dim) = psi(r) * factor;
    }
    psi = std::move(next);
  }
  if (psi.size() != total) throw std::logic_error("lift size mismatch");
  return psi;
}

DenseOperator lift_single_qudit(int num_qudits, int dim, int qudit,
                                const DenseOperator& m) {
  dense_dimension(num_qudits, dim, kMaxOperatorDim);
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("single-qudit matrix has wrong dimensions");
  }
  if (qudit < 0 || qudit >= num_qudits) {
    throw std::out_of_range("qudit index out of range");
  }
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (int i = 0; i < num_qudits; ++i) {
    out = kron(out, i == qudit ? m : DenseOperator::Identity(dim, dim));
  }
  return out;
}

DenseOperator pool_operator_matrix(const PoolOperator& op) {
  const auto a = op.antisym();
  DenseOperator g(op.dim, op.dim);
  for (int r = 0; r < op.dim; ++r) {
    for (int c = 0; c < op.dim; ++c) {
      g(r, c) = Cx(0.0, a[static_cast<std::size_t>(r) * op.dim + c]);
    }
  }
  return g;
}

DenseOperator build_hamiltonian(const MinDCutInstance& instance) {
  const int n = instance.graph.num_vertices;
  const int d = instance.num_partitions;
  const auto total = dense_dimension(n, d, kMaxOperatorDim);

  DenseOperator h = DenseOperator::Zero(total, total);
  const DenseOperator id = DenseOperator::Identity(total, total);

  for (const auto& e : instance.graph.edges) {
    DenseOperator same = DenseOperator::Zero(total, total);
    for (int k = 0; k < d; ++k) {
      same += lift_single_qudit(n, d, e.i, projector(d, k)) *
              lift_single_qudit(n, d, e.j, projector(d, k));
    }
    h += static_cast<double>(e.weight) * (id - same);
  }

  const double l1 = instance.penalty.lambda1;
  const double l2 = instance.penalty.lambda2;
  const double cmax = static_cast<double>(instance.penalty.c_max);
  for (int k = 0; k < d; ++k) {
    DenseOperator occupation = DenseOperator::Zero(total, total);
    for (int i = 0; i < n; ++i) {
      occupation += lift_single_qudit(n, d, i, projector(d, k));
    }
    const DenseOperator slack = cmax * id - occupation;
    h += -l1 * slack + l2 * slack * slack;
  }
  return h;
}

std::complex<double> expectation(const DenseState& psi, const DenseOperator& a) {
  return (psi.adjoint() * (a * psi))(0);
}

std::complex<double> commutator_expectation(const DenseState& psi,
                                            const DenseOperator& a,
                                            const DenseOperator& b) {
  return expectation(psi, a * b - b * a);
}

DenseState exact_ite(const DenseOperator& hamiltonian, const DenseState& psi0,
                     double tau) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const auto& evals = es.eigenvalues();
  const double ground = evals.minCoeff();
  // Shift by the ground energy before exponentiating; the normalization
  // cancels the shift and keeps large tau from underflowing to zero.
  DenseState coeffs = es.eigenvectors().adjoint() * psi0;
  for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
    coeffs(r) *= std::exp(-tau * (evals(r) - ground));
  }
  DenseState psi = es.eigenvectors() * coeffs;
  const double nrm = psi.norm();
  if (nrm == 0.0) {
    throw std::runtime_error("initial state has no overlap with the retained spectrum");
  }
  return psi / nrm;
}

Eigen::VectorXd solve_linear_system(const DenseState& psi,
                                    const std::vector<DenseOperator>& generators,
                                    const DenseOperator& hamiltonian) {
  const auto m = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXd s(m, m);
  Eigen::VectorXd b(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      s(i, j) = expectation(psi, generators[i] * generators[j]).real();
    }
    const Cx comm = commutator_expectation(psi, generators[j], hamiltonian);
    b(j) = (Cx(0.0, -0.5) * comm).real();
  }
  // S can be singular at symmetric states; the complete orthogonal
  // decomposition yields the minimum-norm least-squares solution.
  return s.completeOrthogonalDecomposition().solve(b);
}

double residual_delta(const DenseState& psi, const DenseOperator& generator,
                      const DenseOperator& hamiltonian, double delta_tau) {
  const DenseState unitary_branch =
      psi - Cx(0.0, delta_tau) * (generator * psi);
  const DenseState ite_branch = psi - delta_tau * (hamiltonian * psi);
  return (unitary_branch - ite_branch).norm();
}

BruteForceResult brute_force_optimum(const MinDCutInstance& instance) {
  const int n = instance.graph.num_vertices;
  const int d = instance.num_partitions;
  const auto total = dense_dimension(n, d, kMaxBruteForce);
  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (std::int64_t b = 0; b < total; ++b) {
    decode(b, n, d, labels);
    const double cost = total_cost(instance, labels);
    if (cost < best.cost) {
      best.cost = cost;
      best.assignment = labels;
    }
  }
  return best;
}

BruteForceResult brute_force_feasible_optimum(const MinDCutInstance& instance) {
  const int n = instance.graph.num_vertices;
  const int d = instance.num_partitions;
  const auto total = dense_dimension(n, d, kMaxBruteForce);
  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (std::int64_t b = 0; b < total; ++b) {
    decode(b, n, d, labels);
    if (!is_feasible(instance, labels).feasible) continue;
    const double cost = classical_cut_cost(instance, labels);
    if (cost < best.cost) {
      best.cost = cost;
      best.assignment = labels;
    }
  }
  if (best.assignment.empty()) {
    throw std::runtime_error("no capacity-feasible assignment exists");
  }
  return best;
}

}  // namespace quditcut::oracle

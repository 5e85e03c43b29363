#ifndef QUDITCUT_EXPECTATION_HPP
#define QUDITCUT_EXPECTATION_HPP

#include <span>
#include <vector>

#include "quditcut/mindcut.hpp"
#include "quditcut/product_state.hpp"

namespace quditcut {

/// Instance view with per-vertex adjacency, so commutator expectations only
/// touch the edges incident to the rotated qudit. Non-owning: the instance
/// must outlive the spec.
class HamiltonianSpec {
 public:
  struct Neighbor {
    int vertex;
    double weight;
  };

  explicit HamiltonianSpec(const MinDCutInstance& instance);

  const MinDCutInstance& instance() const { return *instance_; }
  int num_qudits() const { return instance_->graph.num_vertices; }
  int dim() const { return instance_->num_partitions; }
  std::span<const Neighbor> neighbors(int vertex) const {
    return {adjacency_.data() + offsets_[vertex],
            static_cast<std::size_t>(offsets_[vertex + 1] - offsets_[vertex])};
  }

 private:
  const MinDCutInstance* instance_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// Per-qudit occupation probabilities p_{i,k} = c_{i,k}^2 together with the
/// per-level accumulators S_k = sum_i p_{i,k} and Q_k = sum_i p_{i,k}^2 that
/// the quadratic penalty needs. The accumulators are what keep a full sweep
/// at O(|E| d + N d) instead of O(N^2 d).
struct MarginalTable {
  int num_qudits = 0;
  int dim = 0;
  std::vector<double> probs;            // num_qudits * dim
  std::vector<double> level_sums;       // S_k
  std::vector<double> level_square_sums;  // Q_k

  std::span<const double> row(int i) const {
    return {probs.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }

  /// O(d) refresh of row i and the accumulators after qudit i changed.
  void update_qudit(int i, std::span<const double> amplitudes);
};

MarginalTable marginals(const ProductState& state);

/// <H> on a product state, in closed form:
///   cut:     sum_e W_e (1 - sum_k p_{i,k} p_{j,k})
///   penalty: sum_k -l1 (C - S_k) + l2 (C^2 - 2 C S_k + S_k + S_k^2 - Q_k)
/// using <n_k^2> = S_k + S_k^2 - Q_k for independent qudits and projector
/// idempotence. Edges accumulate in ascending index order so sums are
/// reproducible run to run.
double expected_energy(const HamiltonianSpec& spec, const MarginalTable& table);
double expected_energy(const HamiltonianSpec& spec, const ProductState& state);

/// The real number m with <[G, H]> = i m for pool generator `op` on `qudit`.
/// Purely imaginary by structure: the state is real and G has imaginary
/// entries. Only edges incident to the qudit and the level accumulators
/// enter. -m is the derivative of <H> along the rotation exp(angle A_l).
double commutator_expectation(const HamiltonianSpec& spec,
                              const ProductState& state,
                              const MarginalTable& table, int qudit,
                              const PoolOperator& op);
double commutator_expectation(const HamiltonianSpec& spec,
                              const ProductState& state, int qudit,
                              const PoolOperator& op);

/// m for every pool pivot at once; shares the per-level work across the d
/// operators so a sweep over all qudits and pivots is O(|E| d + N d).
void commutator_row(const HamiltonianSpec& spec, const ProductState& state,
                    const MarginalTable& table, int qudit,
                    std::span<double> out);

/// <G^2> = |A_l c|^2 = (d - 1) c_l^2 + (sum_{j != l} c_j)^2.
double generator_second_moment(const ProductState& state, int qudit,
                               const PoolOperator& op);

}  // namespace quditcut

#endif  // QUDITCUT_EXPECTATION_HPP

#ifndef QUDITCUT_SOLVER_HPP
#define QUDITCUT_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "quditcut/expectation.hpp"
#include "quditcut/mindcut.hpp"
#include "quditcut/product_state.hpp"

namespace quditcut {

struct SolverConfig {
  double delta_tau = 5e-3;  // imaginary-time step
  int max_steps = 10000;
  int plateau_window = 500;  // stop after this many steps without a change
                             // in the rounded cost
  int record_every = 1;      // trajectory down-sampling
  std::int64_t seed = 0;     // bookkeeping only; the loop is deterministic

  void validate() const;
};

struct TrajectoryPoint {
  int step = 0;
  double energy = 0.0;        // <H> after the step
  double rounded_cost = 0.0;  // total cost of the rounded assignment
  std::vector<int> selected_ops;      // pool pivot chosen per qudit
  std::vector<int> partition_counts;  // n_k of the rounded assignment
};

struct RunRecord {
  SolverConfig config;
  std::int64_t instance_seed = 0;
  int num_vertices = 0;
  int num_partitions = 0;
  int c_max = 0;

  std::vector<TrajectoryPoint> trajectory;

  // Best rounded assignment seen anywhere along the trajectory.
  std::vector<int> final_assignment;
  double best_cost = 0.0;
  double best_cut_cost = 0.0;
  int best_step = 0;
  bool feasible = false;
  int violated_partitions = 0;
  int max_violation = 0;

  double final_energy = 0.0;  // <H> at the last state
  int steps_executed = 0;
  double wall_ms = 0.0;
};

struct StepInfo {
  std::vector<int> selected_ops;
  std::vector<double> coefficients;
};

/// For each qudit, the pool pivot maximizing |m| where <[G_l, H]> = i m,
/// ties broken toward the lowest pivot.
std::vector<int> select_generators(const HamiltonianSpec& spec,
                                   const ProductState& state,
                                   const std::vector<PoolOperator>& pool);

/// Step coefficient a = m / (2 <G^2>), the minimizer of the first-order
/// imaginary-time residual restricted to this generator; 0 when <G^2> is
/// degenerate (below 1e-14, the qudit is a fixed point of the generator).
/// Throws std::runtime_error on non-finite intermediates.
double compute_coefficient(const HamiltonianSpec& spec,
                           const ProductState& state, int qudit,
                           const PoolOperator& op);

/// One optimization step: selects a generator per qudit, computes every
/// coefficient against the pre-step state, then applies all rotations with
/// angles a_i * delta_tau and re-asserts normalization within 1e-12.
StepInfo step(const HamiltonianSpec& spec, ProductState& state,
              double delta_tau);

/// Full run: symmetry-broken uniform start, up to max_steps steps, early
/// stop once the rounded cost has not changed for plateau_window consecutive
/// steps. Returns the best rounded assignment seen over the whole run.
RunRecord solve(const MinDCutInstance& instance, const SolverConfig& config);

/// Versioned JSON round-trip for run records.
std::string run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const std::string& text);

}  // namespace quditcut

#endif  // QUDITCUT_SOLVER_HPP

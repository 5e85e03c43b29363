#ifndef QUDITCUT_QUBO_HPP
#define QUDITCUT_QUBO_HPP

#include <string>
#include <vector>

#include "quditcut/mindcut.hpp"

namespace quditcut {

/// How the capacity constraint appears in the exported binary model:
/// `penalized` adds the same parabolic penalty terms the qudit solver uses,
/// `hard` emits per-partition inequality rows instead.
enum class ConstraintMode { penalized, hard };

std::string to_string(ConstraintMode mode);
ConstraintMode constraint_mode_from_string(const std::string& name);

/// Binary encoding of a Min-d-Cut instance over N*d one-hot variables
/// x_{i,k} (index i*d + k, name "x{i}_{k}"): x_{i,k} = 1 places vertex i in
/// partition k. One-hot rows sum_k x_{i,k} = 1 are always hard constraints;
/// capacity handling follows `mode`. In penalized mode the objective equals
/// the integer total cost on every one-hot-feasible bitstring.
struct QuboModel {
  int num_vertices = 0;
  int num_partitions = 0;
  int c_max = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  ConstraintMode mode = ConstraintMode::penalized;

  double constant = 0.0;
  std::vector<double> linear;  // size num_vertices * num_partitions
  struct QuadraticTerm {
    int a;
    int b;  // variable indices, a < b
    double coefficient;
  };
  std::vector<QuadraticTerm> quadratic;  // sorted by (a, b), coalesced

  int variable_index(int vertex, int level) const {
    return vertex * num_partitions + level;
  }
  std::string variable_name(int index) const;
};

QuboModel build_qubo(const MinDCutInstance& instance, ConstraintMode mode);

/// Objective value for a full 0/1 vector of length N*d.
double qubo_objective(const QuboModel& model, const std::vector<int>& bits);

/// True iff every vertex has exactly one active level.
bool satisfies_one_hot(const QuboModel& model, const std::vector<int>& bits);

/// Integer assignment encoded by a one-hot bitstring.
std::vector<int> decode_assignment(const QuboModel& model,
                                   const std::vector<int>& bits);

/// LP text format (minimize; quadratic terms in the doubled [ ... ] / 2
/// convention; Binary section lists every variable). Deterministic output.
std::string to_lp_string(const QuboModel& model);

/// JSON export of the same model (schema documented in README).
std::string to_qubo_json_string(const QuboModel& model);

}  // namespace quditcut

#endif  // QUDITCUT_QUBO_HPP

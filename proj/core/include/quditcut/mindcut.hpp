#ifndef QUDITCUT_MINDCUT_HPP
#define QUDITCUT_MINDCUT_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace quditcut {

/// Undirected weighted graph with canonical edges (i < j, unique, sorted)
/// and strictly positive integer weights. Coordinates are optional and kept
/// only for provenance and visual checks of generated instances.
struct WeightedGraph {
  int num_vertices = 0;
  struct Edge {
    int i = 0;
    int j = 0;
    std::int64_t weight = 1;
  };
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> coordinates;  // empty when not generated
};

/// Penalty scalars of the parabolic capacity penalty. `from_ratio` applies
/// the fixed ratio lambda1 / lambda2 = 2 c_max, which places the parabola
/// minimum at an empty partition, with lambda1 = 5, 20, 30 for d = 3, 5, 7
/// and 30 otherwise.
struct PenaltyConfig {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int c_max = 1;

  static double default_lambda1(int num_partitions);
  static PenaltyConfig from_ratio(int num_partitions, int c_max);
  static PenaltyConfig from_ratio(double lambda1, int c_max);
};

/// A capacity-constrained Min-d-Cut instance.
struct MinDCutInstance {
  WeightedGraph graph;
  int num_partitions = 2;
  PenaltyConfig penalty;
  std::int64_t seed = 0;  // generator seed, 0 for hand-built instances
};

struct Feasibility {
  bool feasible = true;
  std::vector<int> counts;  // vertices per partition, sums to N
  int violated_partitions = 0;
  int max_violation = 0;  // largest count - c_max over violated partitions
};

/// Total weight of edges whose endpoints land in different partitions.
/// Throws std::invalid_argument on length mismatch or out-of-range labels.
double classical_cut_cost(const MinDCutInstance& instance,
                          const std::vector<int>& assignment);

/// Sum over partitions of -lambda1 (c_max - n_k) + lambda2 (c_max - n_k)^2.
double penalty_cost(const MinDCutInstance& instance,
                    const std::vector<int>& assignment);

/// classical_cut_cost + penalty_cost; the quantity the solver minimizes.
double total_cost(const MinDCutInstance& instance,
                  const std::vector<int>& assignment);

/// Checks n_k <= c_max for every partition and reports the counts.
Feasibility is_feasible(const MinDCutInstance& instance,
                        const std::vector<int>& assignment);

struct GenerateOptions {
  int num_vertices = 50;
  int neighbors = 10;
  int num_partitions = 3;
  std::int64_t seed = 1;
  std::optional<int> c_max;        // default ceil(2N / d)
  std::optional<double> lambda1;   // default by partition count
};

/// Random geometric instance: vertices uniform in [-1, 1]^2, each vertex
/// joined to its `neighbors` nearest peers (union, deduplicated), weights
/// round(1 / distance) clamped to >= 1. Deterministic per seed, including
/// across platforms. Throws std::invalid_argument unless
/// num_vertices > neighbors >= 1.
MinDCutInstance generate_instance(const GenerateOptions& options);

/// Lossless JSON round-trip of an instance (schema documented in README).
std::string instance_to_json_string(const MinDCutInstance& instance);
MinDCutInstance instance_from_json_string(const std::string& text);
void save_instance(const MinDCutInstance& instance,
                   const std::filesystem::path& path);
MinDCutInstance load_instance(const std::filesystem::path& path);

}  // namespace quditcut

#endif  // QUDITCUT_MINDCUT_HPP

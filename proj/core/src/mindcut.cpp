#include "quditcut/mindcut.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace quditcut {

namespace {

void check_assignment(const MinDCutInstance& instance,
                      const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != instance.graph.num_vertices) {
    throw std::invalid_argument("assignment length does not match vertex count");
  }
  for (int x : assignment) {
    if (x < 0 || x >= instance.num_partitions) {
      throw std::invalid_argument("partition label " + std::to_string(x) +
                                  " out of range");
    }
  }
}

std::vector<int> partition_counts(const MinDCutInstance& instance,
                                  const std::vector<int>& assignment) {
  std::vector<int> counts(static_cast<std::size_t>(instance.num_partitions), 0);
  for (int x : assignment) ++counts[x];
  return counts;
}

// Uniform double in [0, 1) from the top 53 bits of a mt19937_64 draw; keeps
// generated instances byte-identical across standard library implementations
// (uniform_real_distribution is not pinned by the standard).
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double PenaltyConfig::default_lambda1(int num_partitions) {
  switch (num_partitions) {
    case 3: return 5.0;
    case 5: return 20.0;
    case 7: return 30.0;
    default: return 30.0;
  }
}

PenaltyConfig PenaltyConfig::from_ratio(int num_partitions, int c_max) {
  return from_ratio(default_lambda1(num_partitions), c_max);
}

PenaltyConfig PenaltyConfig::from_ratio(double lambda1, int c_max) {
  if (c_max < 1) throw std::invalid_argument("c_max must be at least 1");
  PenaltyConfig p;
  p.lambda1 = lambda1;
  p.lambda2 = lambda1 / (2.0 * c_max);
  p.c_max = c_max;
  return p;
}

double classical_cut_cost(const MinDCutInstance& instance,
                          const std::vector<int>& assignment) {
  check_assignment(instance, assignment);
  double cost = 0.0;
  for (const auto& e : instance.graph.edges) {
    if (assignment[e.i] != assignment[e.j]) cost += static_cast<double>(e.weight);
  }
  return cost;
}

double penalty_cost(const MinDCutInstance& instance,
                    const std::vector<int>& assignment) {
  check_assignment(instance, assignment);
  const auto counts = partition_counts(instance, assignment);
  const double l1 = instance.penalty.lambda1;
  const double l2 = instance.penalty.lambda2;
  const double cmax = static_cast<double>(instance.penalty.c_max);
  double cost = 0.0;
  for (int n : counts) {
    const double slack = cmax - static_cast<double>(n);
    cost += -l1 * slack + l2 * slack * slack;
  }
  return cost;
}

double total_cost(const MinDCutInstance& instance,
                  const std::vector<int>& assignment) {
  return classical_cut_cost(instance, assignment) +
         penalty_cost(instance, assignment);
}

Feasibility is_feasible(const MinDCutInstance& instance,
                        const std::vector<int>& assignment) {
  check_assignment(instance, assignment);
  Feasibility f;
  f.counts = partition_counts(instance, assignment);
  for (int n : f.counts) {
    if (n > instance.penalty.c_max) {
      f.feasible = false;
      ++f.violated_partitions;
      f.max_violation = std::max(f.max_violation, n - instance.penalty.c_max);
    }
  }
  return f;
}

MinDCutInstance generate_instance(const GenerateOptions& options) {
  const int n = options.num_vertices;
  const int k = options.neighbors;
  const int d = options.num_partitions;
  if (k < 1 || n <= k) {
    throw std::invalid_argument("need num_vertices > neighbors >= 1");
  }
  if (d < 2) throw std::invalid_argument("need at least 2 partitions");

  std::mt19937_64 rng(static_cast<std::uint64_t>(options.seed));
  std::vector<std::array<double, 2>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(pts.size()) < n) {
    std::array<double, 2> p{-1.0 + 2.0 * next_unit(rng),
                            -1.0 + 2.0 * next_unit(rng)};
    bool collides = false;
    for (const auto& q : pts) {
      const double dx = p[0] - q[0];
      const double dy = p[1] - q[1];
      if (std::sqrt(dx * dx + dy * dy) < 1e-9) {
        collides = true;
        break;
      }
    }
    if (!collides) pts.push_back(p);
  }

  std::set<std::pair<int, int>> edge_set;
  std::vector<std::pair<double, int>> order(static_cast<std::size_t>(n - 1));
  for (int v = 0; v < n; ++v) {
    order.clear();
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      const double dx = pts[v][0] - pts[u][0];
      const double dy = pts[v][1] - pts[u][1];
      order.emplace_back(dx * dx + dy * dy, u);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end());
    for (int t = 0; t < k; ++t) {
      const int u = order[t].second;
      edge_set.emplace(std::min(v, u), std::max(v, u));
    }
  }

  MinDCutInstance inst;
  inst.graph.num_vertices = n;
  inst.graph.coordinates = std::move(pts);
  inst.graph.edges.reserve(edge_set.size());
  for (const auto& [i, j] : edge_set) {
    const double dx = inst.graph.coordinates[i][0] - inst.graph.coordinates[j][0];
    const double dy = inst.graph.coordinates[i][1] - inst.graph.coordinates[j][1];
    const double dist = std::sqrt(dx * dx + dy * dy);
    const auto w = std::max<std::int64_t>(1, std::llround(1.0 / dist));
    inst.graph.edges.push_back({i, j, w});
  }

  inst.num_partitions = d;
  const int c_max = options.c_max.value_or((2 * n + d - 1) / d);  // ceil(2N/d)
  const double lambda1 =
      options.lambda1.value_or(PenaltyConfig::default_lambda1(d));
  inst.penalty = PenaltyConfig::from_ratio(lambda1, c_max);
  inst.seed = options.seed;
  return inst;
}

std::string instance_to_json_string(const MinDCutInstance& instance) {
  nlohmann::json j;
  j["version"] = 1;
  j["seed"] = instance.seed;
  j["num_vertices"] = instance.graph.num_vertices;
  j["d"] = instance.num_partitions;
  j["c_max"] = instance.penalty.c_max;
  j["lambda1"] = instance.penalty.lambda1;
  j["lambda2"] = instance.penalty.lambda2;
  auto coords = nlohmann::json::array();
  for (const auto& p : instance.graph.coordinates) {
    coords.push_back({p[0], p[1]});
  }
  j["coordinates"] = std::move(coords);
  auto edges = nlohmann::json::array();
  for (const auto& e : instance.graph.edges) {
    edges.push_back({e.i, e.j, e.weight});
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

MinDCutInstance instance_from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported instance schema version");
  }
  MinDCutInstance inst;
  inst.seed = j.at("seed").get<std::int64_t>();
  inst.graph.num_vertices = j.at("num_vertices").get<int>();
  inst.num_partitions = j.at("d").get<int>();
  inst.penalty.c_max = j.at("c_max").get<int>();
  inst.penalty.lambda1 = j.at("lambda1").get<double>();
  inst.penalty.lambda2 = j.at("lambda2").get<double>();
  for (const auto& p : j.at("coordinates")) {
    inst.graph.coordinates.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  for (const auto& e : j.at("edges")) {
    inst.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                                e.at(2).get<std::int64_t>()});
  }
  for (const auto& e : inst.graph.edges) {
    if (e.i < 0 || e.j <= e.i || e.j >= inst.graph.num_vertices || e.weight < 1) {
      throw std::runtime_error("malformed edge in instance file");
    }
  }
  return inst;
}

void save_instance(const MinDCutInstance& instance,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << instance_to_json_string(instance);
}

MinDCutInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_json_string(text);
}

}  // namespace quditcut

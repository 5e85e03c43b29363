#ifndef QUDITCUT_TEST_SUPPORT_HPP
#define QUDITCUT_TEST_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "quditcut/mindcut.hpp"
#include "quditcut/product_state.hpp"

namespace testsupport {

inline std::vector<double> random_unit_vector(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  double nrm2 = 0.0;
  do {
    nrm2 = 0.0;
    for (auto& x : v) {
      x = gauss(rng);
      nrm2 += x * x;
    }
  } while (nrm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(nrm2);
  for (auto& x : v) x *= inv;
  return v;
}

inline quditcut::ProductState random_product_state(std::mt19937& rng, int n,
                                                   int d) {
  quditcut::ProductState s;
  s.num_qudits = n;
  s.dim = d;
  s.amplitudes.resize(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i) {
    const auto v = random_unit_vector(rng, d);
    std::copy(v.begin(), v.end(), s.amplitudes.begin() + i * d);
  }
  return s;
}

inline quditcut::ProductState make_state(int d,
                                         std::vector<std::vector<double>> rows) {
  quditcut::ProductState s;
  s.num_qudits = static_cast<int>(rows.size());
  s.dim = d;
  for (const auto& r : rows) {
    s.amplitudes.insert(s.amplitudes.end(), r.begin(), r.end());
  }
  return s;
}

/// Random Min-d-Cut instance on a small Erdos-Renyi-like graph with integer
/// weights in [1, 5]; every edge pair is drawn once so the edge list is
/// canonical by construction.
inline quditcut::MinDCutInstance random_instance(std::mt19937& rng, int n,
                                                 int d, double edge_prob = 0.7,
                                                 bool with_penalty = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, 5);
  quditcut::MinDCutInstance inst;
  inst.graph.num_vertices = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < edge_prob) {
        inst.graph.edges.push_back({i, j, weight(rng)});
      }
    }
  }
  inst.num_partitions = d;
  if (with_penalty) {
    std::uniform_int_distribution<int> cap(1, std::max(1, n / 2));
    std::uniform_real_distribution<double> l1(0.5, 8.0);
    inst.penalty = quditcut::PenaltyConfig::from_ratio(l1(rng), cap(rng));
  } else {
    inst.penalty = quditcut::PenaltyConfig{0.0, 0.0, std::max(1, n)};
  }
  return inst;
}

inline std::vector<int> random_assignment(std::mt19937& rng, int n, int d) {
  std::uniform_int_distribution<int> label(0, d - 1);
  std::vector<int> a(static_cast<std::size_t>(n));
  for (auto& x : a) x = label(rng);
  return a;
}

}  // namespace testsupport

#endif  // QUDITCUT_TEST_SUPPORT_HPP

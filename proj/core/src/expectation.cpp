#include "quditcut/expectation.hpp"

#include <cmath>
#include <stdexcept>

namespace quditcut {

namespace {

// B_k collects everything multiplying <[G, P_{q,k}]> in <[G, H]>: the cut
// terms of edges at q and the affine part of the parabolic penalty,
//   B_k = -sum_{j in adj(q)} W_{qj} p_{j,k}
//         + l1 + l2 (1 - 2 c_max + 2 (S_k - p_{q,k})).
void level_weights(const HamiltonianSpec& spec, const MarginalTable& table,
                   int qudit, std::vector<double>& b) {
  const int d = spec.dim();
  const auto& pen = spec.instance().penalty;
  const double affine =
      pen.lambda1 + pen.lambda2 * (1.0 - 2.0 * static_cast<double>(pen.c_max));
  auto pq = table.row(qudit);
  b.assign(static_cast<std::size_t>(d), 0.0);
  for (const auto& nb : spec.neighbors(qudit)) {
    auto pj = table.row(nb.vertex);
    for (int k = 0; k < d; ++k) b[k] -= nb.weight * pj[k];
  }
  for (int k = 0; k < d; ++k) {
    b[k] += affine + 2.0 * pen.lambda2 * (table.level_sums[k] - pq[k]);
  }
}

// With g_k = -2 c_k (A_l c)_k the expectation is m = sum_k g_k B_k; for the
// pool structure this collapses to m(l) = -2 c_l (U - T B_l) with
// U = sum_k c_k B_k and T = sum_k c_k, so all d pivots cost O(d) together.
double pivot_value(std::span<const double> c, const std::vector<double>& b,
                   double u, double t, int l) {
  return -2.0 * c[l] * (u - t * b[l]);
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(const MinDCutInstance& instance)
    : instance_(&instance) {
  const int n = instance.graph.num_vertices;
  std::vector<std::size_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : instance.graph.edges) {
    if (e.i < 0 || e.j <= e.i || e.j >= n) {
      throw std::invalid_argument("edge endpoints out of range");
    }
    ++degree[e.i + 1];
    ++degree[e.j + 1];
  }
  offsets_.assign(degree.begin(), degree.end());
  for (int v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : instance.graph.edges) {
    const double w = static_cast<double>(e.weight);
    adjacency_[cursor[e.i]++] = {e.j, w};
    adjacency_[cursor[e.j]++] = {e.i, w};
  }
}

void MarginalTable::update_qudit(int i, std::span<const double> amplitudes) {
  auto* p = probs.data() + static_cast<std::size_t>(i) * dim;
  for (int k = 0; k < dim; ++k) {
    const double fresh = amplitudes[k] * amplitudes[k];
    level_sums[k] += fresh - p[k];
    level_square_sums[k] += fresh * fresh - p[k] * p[k];
    p[k] = fresh;
  }
}

MarginalTable marginals(const ProductState& state) {
  MarginalTable t;
  t.num_qudits = state.num_qudits;
  t.dim = state.dim;
  t.probs.resize(state.amplitudes.size());
  t.level_sums.assign(static_cast<std::size_t>(state.dim), 0.0);
  t.level_square_sums.assign(static_cast<std::size_t>(state.dim), 0.0);
  for (int i = 0; i < state.num_qudits; ++i) {
    auto v = state.qudit(i);
    auto* p = t.probs.data() + static_cast<std::size_t>(i) * state.dim;
    for (int k = 0; k < state.dim; ++k) {
      p[k] = v[k] * v[k];
      t.level_sums[k] += p[k];
      t.level_square_sums[k] += p[k] * p[k];
    }
  }
  return t;
}

double expected_energy(const HamiltonianSpec& spec, const MarginalTable& table) {
  if (table.num_qudits != spec.num_qudits() || table.dim != spec.dim()) {
    throw std::invalid_argument("marginal table does not match instance");
  }
  const int d = spec.dim();
  double cut = 0.0;
  for (const auto& e : spec.instance().graph.edges) {
    auto pi = table.row(e.i);
    auto pj = table.row(e.j);
    double same = 0.0;
    for (int k = 0; k < d; ++k) same += pi[k] * pj[k];
    cut += static_cast<double>(e.weight) * (1.0 - same);
  }
  const auto& pen = spec.instance().penalty;
  const double cmax = static_cast<double>(pen.c_max);
  double penalty = 0.0;
  for (int k = 0; k < d; ++k) {
    const double s = table.level_sums[k];
    const double second_moment =
        cmax * cmax - 2.0 * cmax * s + s + s * s - table.level_square_sums[k];
    penalty += -pen.lambda1 * (cmax - s) + pen.lambda2 * second_moment;
  }
  return cut + penalty;
}

double expected_energy(const HamiltonianSpec& spec, const ProductState& state) {
  return expected_energy(spec, marginals(state));
}

double commutator_expectation(const HamiltonianSpec& spec,
                              const ProductState& state,
                              const MarginalTable& table, int qudit,
                              const PoolOperator& op) {
  if (qudit < 0 || qudit >= state.num_qudits) {
    throw std::out_of_range("qudit index out of range");
  }
  if (op.dim != state.dim || state.dim != spec.dim()) {
    throw std::invalid_argument("dimension mismatch");
  }
  std::vector<double> b;
  level_weights(spec, table, qudit, b);
  auto c = state.qudit(qudit);
  double u = 0.0;
  double t = 0.0;
  for (int k = 0; k < state.dim; ++k) {
    u += c[k] * b[k];
    t += c[k];
  }
  return pivot_value(c, b, u, t, op.pivot_level);
}

double commutator_expectation(const HamiltonianSpec& spec,
                              const ProductState& state, int qudit,
                              const PoolOperator& op) {
  return commutator_expectation(spec, state, marginals(state), qudit, op);
}

void commutator_row(const HamiltonianSpec& spec, const ProductState& state,
                    const MarginalTable& table, int qudit,
                    std::span<double> out) {
  const int d = state.dim;
  if (static_cast<int>(out.size()) != d) {
    throw std::invalid_argument("output span must have one slot per pivot");
  }
  std::vector<double> b;
  level_weights(spec, table, qudit, b);
  auto c = state.qudit(qudit);
  double u = 0.0;
  double t = 0.0;
  for (int k = 0; k < d; ++k) {
    u += c[k] * b[k];
    t += c[k];
  }
  for (int l = 0; l < d; ++l) out[l] = pivot_value(c, b, u, t, l);
}

double generator_second_moment(const ProductState& state, int qudit,
                               const PoolOperator& op) {
  if (qudit < 0 || qudit >= state.num_qudits) {
    throw std::out_of_range("qudit index out of range");
  }
  if (op.dim != state.dim) {
    throw std::invalid_argument("pool operator dimension mismatch");
  }
  auto c = state.qudit(qudit);
  const int l = op.pivot_level;
  double rest = 0.0;
  for (int j = 0; j < state.dim; ++j) {
    if (j != l) rest += c[j];
  }
  return (state.dim - 1) * c[l] * c[l] + rest * rest;
}

}  // namespace quditcut

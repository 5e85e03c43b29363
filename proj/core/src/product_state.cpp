#include "quditcut/product_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quditcut {

namespace {

void check_dim(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("qudit dimension must be at least 2, got " +
                                std::to_string(dim));
  }
}

}  // namespace

std::vector<double> PoolOperator::antisym() const {
  std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
  const int l = pivot_level;
  for (int j = 0; j < dim; ++j) {
    if (j == l) continue;
    a[static_cast<std::size_t>(j) * dim + l] = 1.0;
    a[static_cast<std::size_t>(l) * dim + j] = -1.0;
  }
  return a;
}

std::vector<double> PoolOperator::antisym_apply(
    std::span<const double> c) const {
  if (static_cast<int>(c.size()) != dim) {
    throw std::invalid_argument("amplitude vector size does not match dim");
  }
  const int l = pivot_level;
  double rest = 0.0;
  for (int j = 0; j < dim; ++j) {
    if (j != l) rest += c[j];
  }
  // (A c)_j = c_l for j != l, (A c)_l = -sum_{j != l} c_j.
  std::vector<double> out(static_cast<std::size_t>(dim), c[l]);
  out[l] = -rest;
  return out;
}

ProductState init_uniform_state(int num_qudits, int dim) {
  if (num_qudits < 1) {
    throw std::invalid_argument("need at least one qudit, got " +
                                std::to_string(num_qudits));
  }
  check_dim(dim);
  ProductState s;
  s.num_qudits = num_qudits;
  s.dim = dim;
  s.amplitudes.assign(static_cast<std::size_t>(num_qudits) * dim,
                      1.0 / std::sqrt(static_cast<double>(dim)));
  // Qudit 0 starts in the first basis state; the cost is invariant under
  // label permutations, so this breaks the symmetry without losing overlap
  // with the optimum subspace.
  for (int k = 0; k < dim; ++k) s.amplitudes[k] = (k == 0) ? 1.0 : 0.0;
  return s;
}

std::vector<PoolOperator> build_pool(int dim) {
  check_dim(dim);
  std::vector<PoolOperator> pool;
  pool.reserve(dim);
  for (int l = 0; l < dim; ++l) pool.push_back(PoolOperator{dim, l});
  return pool;
}

void apply_generator_rotation(ProductState& state, int qudit,
                              const PoolOperator& op, double angle) {
  if (qudit < 0 || qudit >= state.num_qudits) {
    throw std::out_of_range("qudit index " + std::to_string(qudit) +
                            " out of range");
  }
  if (op.dim != state.dim) {
    throw std::invalid_argument("pool operator dimension mismatch");
  }
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  const int d = state.dim;
  const int l = op.pivot_level;
  auto v = state.qudit(qudit);

  // A_l acts as a rotation in span{e_l, w/|w|} with angular speed sqrt(d-1);
  // the orthogonal complement is untouched.
  const double root = std::sqrt(static_cast<double>(d - 1));
  const double theta = angle * root;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  double rest = 0.0;
  for (int j = 0; j < d; ++j) {
    if (j != l) rest += v[j];
  }
  const double u = rest / root;  // component along w/|w|
  const double vl = v[l];

  const double shift = ((c - 1.0) * u + s * vl) / root;
  for (int j = 0; j < d; ++j) {
    if (j != l) v[j] += shift;
  }
  v[l] = c * vl - s * u;
}

std::vector<int> round_state(const ProductState& state) {
  std::vector<int> labels(static_cast<std::size_t>(state.num_qudits));
  for (int i = 0; i < state.num_qudits; ++i) {
    auto v = state.qudit(i);
    int best = 0;
    double best_p = v[0] * v[0];
    for (int k = 1; k < state.dim; ++k) {
      const double p = v[k] * v[k];
      if (p > best_p) {
        best_p = p;
        best = k;
      }
    }
    labels[i] = best;
  }
  return labels;
}

std::vector<double> rotation_matrix(const PoolOperator& op, double angle) {
  const int d = op.dim;
  const int l = op.pivot_level;
  const double root = std::sqrt(static_cast<double>(d - 1));
  const double theta = angle * root;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
  auto at = [&](int r, int cidx) -> double& {
    return m[static_cast<std::size_t>(r) * d + cidx];
  };
  const double offdiag = (c - 1.0) / (d - 1);
  for (int r = 0; r < d; ++r) {
    for (int q = 0; q < d; ++q) {
      if (r == l && q == l) {
        at(r, q) = c;
      } else if (r == l) {
        at(r, q) = -s / root;
      } else if (q == l) {
        at(r, q) = s / root;
      } else {
        at(r, q) = (r == q ? 1.0 : 0.0) + offdiag;
      }
    }
  }
  return m;
}

std::vector<double> exp_real_matrix(std::vector<double> m, int n) {
  if (static_cast<std::size_t>(n) * n != m.size()) {
    throw std::invalid_argument("matrix size does not match dimension");
  }
  double norm = 0.0;
  for (int r = 0; r < n; ++r) {
    double row = 0.0;
    for (int q = 0; q < n; ++q) row += std::fabs(m[r * n + q]);
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (auto& x : m) x *= scale;

  auto matmul = [n](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) {
        const double ark = a[r * n + k];
        if (ark == 0.0) continue;
        for (int q = 0; q < n; ++q) out[r * n + q] += ark * b[k * n + q];
      }
    }
    return out;
  };

  std::vector<double> result(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) result[r * n + r] = 1.0;
  std::vector<double> term = result;
  for (int order = 1; order <= 40; ++order) {
    term = matmul(term, m);
    for (auto& x : term) x /= order;
    double tnorm = 0.0;
    for (double x : term) tnorm = std::max(tnorm, std::fabs(x));
    for (std::size_t idx = 0; idx < term.size(); ++idx) result[idx] += term[idx];
    if (tnorm < 1e-20) break;
  }
  for (int sq = 0; sq < squarings; ++sq) result = matmul(result, result);
  return result;
}

bool is_normalized(const ProductState& state, double tol) {
  for (int i = 0; i < state.num_qudits; ++i) {
    auto v = state.qudit(i);
    double nrm2 = 0.0;
    for (double x : v) nrm2 += x * x;
    if (std::fabs(std::sqrt(nrm2) - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace quditcut

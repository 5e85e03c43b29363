#ifndef QUDITCUT_PRODUCT_STATE_HPP
#define QUDITCUT_PRODUCT_STATE_HPP

#include <span>
#include <vector>

namespace quditcut {

/// Product state of N independent d-level qudits with real amplitudes.
///
/// Amplitudes are stored row-major, one length-d unit vector per qudit.
/// Every generator in the pool has purely imaginary matrix entries, so its
/// unitary is a real orthogonal matrix and evolution never leaves the real
/// amplitude manifold. ProductState is a plain value type; copies are
/// independent and safe to move across threads.
struct ProductState {
  int num_qudits = 0;
  int dim = 0;
  std::vector<double> amplitudes;  // num_qudits * dim, row-major

  std::span<double> qudit(int i) {
    return {amplitudes.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<const double> qudit(int i) const {
    return {amplitudes.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
};

/// One Hermitian generator G_l = i * A_l from the single-qudit pool.
///
/// A_l is the real antisymmetric matrix with column `pivot_level` equal to +1
/// off the diagonal and row `pivot_level` equal to -1 off the diagonal; all
/// other entries vanish. The full matrix is never stored: A_l has rank 2, so
/// rotations reduce to a planar rotation in span{e_l, w}, w = sum of the
/// other basis vectors.
struct PoolOperator {
  int dim = 0;
  int pivot_level = 0;

  /// Materializes A_l as a dim x dim row-major matrix.
  std::vector<double> antisym() const;

  /// A_l * c for a real amplitude vector c.
  std::vector<double> antisym_apply(std::span<const double> c) const;
};

/// State of Algorithm start: qudit 0 pinned to the first basis vector, all
/// other qudits uniform with entries 1/sqrt(d).
/// Throws std::invalid_argument for num_qudits < 1 or dim < 2.
ProductState init_uniform_state(int num_qudits, int dim);

/// The d single-qudit generators, pivot levels 0..d-1.
/// Throws std::invalid_argument for dim < 2.
std::vector<PoolOperator> build_pool(int dim);

/// Replaces qudit vector v by exp(angle * A_l) v, evaluated in closed form
/// (exact planar rotation, not a first-order truncation). The map is
/// orthogonal, so per-qudit norm and realness are preserved. Other qudits
/// are untouched.
/// Throws std::out_of_range on bad indices, std::invalid_argument on
/// non-finite angle or dimension mismatch.
void apply_generator_rotation(ProductState& state, int qudit,
                              const PoolOperator& op, double angle);

/// Rounds each qudit to its largest-probability basis state,
/// k_i = argmax_k c_{i,k}^2, ties broken toward the lowest index.
std::vector<int> round_state(const ProductState& state);

/// exp(angle * A_l) as a dim x dim row-major matrix (closed form).
std::vector<double> rotation_matrix(const PoolOperator& op, double angle);

/// Reference matrix exponential of a real square matrix via scaling and
/// squaring with a Taylor series. Slow; used to validate the closed-form
/// rotation and to lift generators in oracle checks.
std::vector<double> exp_real_matrix(std::vector<double> m, int n);

/// Sanity check used by tests and the solver: true iff every qudit vector
/// has unit norm within `tol`.
bool is_normalized(const ProductState& state, double tol = 1e-12);

}  // namespace quditcut

#endif  // QUDITCUT_PRODUCT_STATE_HPP

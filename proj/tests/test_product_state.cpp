#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "quditcut/product_state.hpp"
#include "test_support.hpp"

using namespace quditcut;

namespace {

std::vector<double> apply_matrix(const std::vector<double>& m,
                                 std::span<const double> v, int d) {
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) out[r] += m[r * d + c] * v[c];
  }
  return out;
}

}  // namespace

TEST_CASE("init_uniform_state pins qudit 0 and spreads the rest") {
  const auto s1 = init_uniform_state(1, 3);
  CHECK(s1.qudit(0)[0] == 1.0);
  CHECK(s1.qudit(0)[1] == 0.0);
  CHECK(s1.qudit(0)[2] == 0.0);

  const auto s2 = init_uniform_state(2, 2);
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK(s2.qudit(0)[0] == 1.0);
  CHECK(s2.qudit(1)[0] == doctest::Approx(r2).epsilon(1e-15));
  CHECK(s2.qudit(1)[1] == doctest::Approx(r2).epsilon(1e-15));

  const auto s3 = init_uniform_state(3, 3);
  const double r3 = 1.0 / std::sqrt(3.0);
  for (int i = 1; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(s3.qudit(i)[k] == doctest::Approx(r3).epsilon(1e-15));
    }
  }
  CHECK(is_normalized(s3));

  CHECK_THROWS_AS(init_uniform_state(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(init_uniform_state(2, 1), std::invalid_argument);
}

TEST_CASE("build_pool reproduces the qutrit generators") {
  const auto pool = build_pool(3);
  REQUIRE(pool.size() == 3);

  // Imaginary parts of the three d = 3 generators, row-major.
  const std::vector<std::vector<double>> expected = {
      {0, -1, -1, 1, 0, 0, 1, 0, 0},
      {0, 1, 0, -1, 0, -1, 0, 1, 0},
      {0, 0, 1, 0, 0, 1, -1, -1, 0},
  };
  for (int l = 0; l < 3; ++l) {
    CHECK(pool[l].pivot_level == l);
    const auto a = pool[l].antisym();
    for (int idx = 0; idx < 9; ++idx) CHECK(a[idx] == expected[l][idx]);
  }
}

TEST_CASE("build_pool for d = 2 gives the Pauli-Y pattern") {
  const auto pool = build_pool(2);
  REQUIRE(pool.size() == 2);
  const auto a0 = pool[0].antisym();
  CHECK(a0 == std::vector<double>{0, -1, 1, 0});
  const auto a1 = pool[1].antisym();
  CHECK(a1 == std::vector<double>{0, 1, -1, 0});
  CHECK_THROWS_AS(build_pool(1), std::invalid_argument);
}

TEST_CASE("pool operators are exactly antisymmetric with the pivot pattern") {
  for (int d = 2; d <= 6; ++d) {
    for (const auto& op : build_pool(d)) {
      const auto a = op.antisym();
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          CHECK(a[r * d + c] == -a[c * d + r]);
          const bool in_pattern = (c == op.pivot_level && r != op.pivot_level) ||
                                  (r == op.pivot_level && c != op.pivot_level);
          if (!in_pattern) CHECK(a[r * d + c] == 0.0);
        }
      }
    }
  }
}

TEST_CASE("antisym_apply matches the materialized matrix") {
  std::mt19937 rng(7);
  for (int d = 2; d <= 5; ++d) {
    for (const auto& op : build_pool(d)) {
      const auto v = testsupport::random_unit_vector(rng, d);
      const auto direct = op.antisym_apply(v);
      const auto dense = apply_matrix(op.antisym(), v, d);
      for (int k = 0; k < d; ++k) {
        CHECK(direct[k] == doctest::Approx(dense[k]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("zero-angle rotation is the identity") {
  auto s = init_uniform_state(3, 4);
  const auto before = s.amplitudes;
  apply_generator_rotation(s, 1, PoolOperator{4, 2}, 0.0);
  CHECK(s.amplitudes == before);
}

TEST_CASE("qubit rotation from the basis state traces the circle") {
  auto s = testsupport::make_state(2, {{1.0, 0.0}});
  const double theta = std::numbers::pi / 4.0;
  apply_generator_rotation(s, 0, PoolOperator{2, 0}, theta);
  // Independent oracle: truncated Taylor series of exp(theta A).
  const auto ref = apply_matrix(
      exp_real_matrix([&] {
        auto a = PoolOperator{2, 0}.antisym();
        for (auto& x : a) x *= theta;
        return a;
      }(), 2),
      std::vector<double>{1.0, 0.0}, 2);
  CHECK(s.qudit(0)[0] == doctest::Approx(std::cos(theta)).epsilon(1e-12));
  CHECK(s.qudit(0)[1] == doctest::Approx(std::sin(theta)).epsilon(1e-12));
  CHECK(s.qudit(0)[0] == doctest::Approx(ref[0]).epsilon(1e-12));
  CHECK(s.qudit(0)[1] == doctest::Approx(ref[1]).epsilon(1e-12));
}

TEST_CASE("closed-form rotation agrees with the series exponential") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const PoolOperator op{d, trial % d};
      const double theta = angle(rng);
      const auto closed = rotation_matrix(op, theta);
      auto scaled = op.antisym();
      for (auto& x : scaled) x *= theta;
      const auto series = exp_real_matrix(scaled, d);
      for (int idx = 0; idx < d * d; ++idx) {
        CHECK(closed[idx] == doctest::Approx(series[idx]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("rotation matrices are orthogonal and invert cleanly") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    const PoolOperator op{d, trial % d};
    const double theta = angle(rng);

    auto s = testsupport::random_product_state(rng, 1, d);
    const auto before = s.amplitudes;
    apply_generator_rotation(s, 0, op, theta);
    double nrm2 = 0.0;
    for (double x : s.qudit(0)) nrm2 += x * x;
    CHECK(std::fabs(std::sqrt(nrm2) - 1.0) < 1e-12);

    apply_generator_rotation(s, 0, op, -theta);
    for (int k = 0; k < d; ++k) {
      CHECK(s.amplitudes[k] == doctest::Approx(before[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("norm survives 1e5 sequential rotations without drift") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> angle(-0.3, 0.3);
  auto s = init_uniform_state(1, 3);
  for (int iter = 0; iter < 100000; ++iter) {
    apply_generator_rotation(s, 0, PoolOperator{3, iter % 3}, angle(rng));
  }
  double nrm2 = 0.0;
  for (double x : s.qudit(0)) nrm2 += x * x;
  CHECK(std::fabs(std::sqrt(nrm2) - 1.0) < 1e-12);
}

TEST_CASE("rotation argument checks") {
  auto s = init_uniform_state(2, 3);
  CHECK_THROWS_AS(apply_generator_rotation(s, 2, PoolOperator{3, 0}, 0.1),
                  std::out_of_range);
  CHECK_THROWS_AS(apply_generator_rotation(s, 0, PoolOperator{4, 0}, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_generator_rotation(s, 0, PoolOperator{3, 0},
                                           std::nan("")),
                  std::invalid_argument);
}

TEST_CASE("round_state picks the dominant level with low-index ties") {
  CHECK(round_state(testsupport::make_state(3, {{1, 0, 0}})) ==
        std::vector<int>{0});

  const double rest = std::sqrt(1.0 - 0.81 - 0.09);
  CHECK(round_state(testsupport::make_state(3, {{0.3, 0.9, rest}})) ==
        std::vector<int>{1});

  const double r3 = 1.0 / std::sqrt(3.0);
  CHECK(round_state(testsupport::make_state(3, {{r3, r3, r3}})) ==
        std::vector<int>{0});

  // Tie between levels 1 and 2 resolves to 1.
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK(round_state(testsupport::make_state(3, {{0.0, r2, r2}})) ==
        std::vector<int>{1});
}

TEST_CASE("round_state ignores a global sign flip of any qudit") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = testsupport::random_product_state(rng, 4, 3);
    const auto labels = round_state(s);
    auto flipped = s;
    const int target = trial % 4;
    for (auto& x : flipped.qudit(target)) x = -x;
    CHECK(round_state(flipped) == labels);
  }
}

// Nonnegative least squares on hand-solvable systems and random instances
// checked against the first-order optimality conditions.
#include "doctest.h"

#include "trussopt/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace trussopt;

TEST_CASE("unconstrained optimum is returned when it is nonnegative") {
  Mat a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  Vec b(3);
  b << 1, 2, 3;
  const NnlsResult r = nnls(a, b);
  REQUIRE(r.converged);
  // Normal equations: [2 1; 1 2] x = [4; 5], so x = (1, 2).
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(2.0));
  CHECK(r.residual <= 1e-9);
}

TEST_CASE("negative least-squares components are clamped to the boundary") {
  Mat a = Mat::Identity(2, 2);
  Vec b(2);
  b << 1, -1;
  const NnlsResult r = nnls(a, b);
  REQUIRE(r.converged);
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(0.0));
  CHECK(r.residual == doctest::Approx(1.0));
}

TEST_CASE("zero right-hand side gives the zero solution") {
  Mat a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  const NnlsResult r = nnls(a, Vec::Zero(2));
  REQUIRE(r.converged);
  CHECK(r.x.norm() == doctest::Approx(0.0));
}

TEST_CASE("overdetermined consistent system is solved exactly") {
  Mat a(3, 1);
  a << 1, 1, 1;
  Vec b(3);
  b << 2, 2, 2;
  const NnlsResult r = nnls(a, b);
  REQUIRE(r.converged);
  CHECK(r.x(0) == doctest::Approx(2.0));
  CHECK(r.residual <= 1e-9);
}

TEST_CASE("random instances satisfy the KKT conditions") {
  std::mt19937 rng(42);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 6);
    const int cols = 1 + static_cast<int>(rng() % 6);
    Mat a(rows, cols);
    Vec b(rows);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) a(i, j) = normal(rng);
      b(i) = normal(rng);
    }

    const NnlsResult r = nnls(a, b);
    REQUIRE(r.converged);
    REQUIRE(r.x.size() == cols);
    CHECK(r.x.minCoeff() >= 0.0);
    CHECK(r.residual == doctest::Approx((a * r.x - b).norm()).epsilon(1e-10));

    // Gradient of 0.5||Ax - b||^2: zero on the support, nonnegative off it.
    const Vec grad = a.transpose() * (a * r.x - b);
    const double scale = std::max(1.0, b.norm());
    for (int j = 0; j < cols; ++j) {
      if (r.x(j) > 1e-12) {
        CHECK(std::abs(grad(j)) <= 1e-8 * scale);
      } else {
        CHECK(grad(j) >= -1e-8 * scale);
      }
    }
  }
}

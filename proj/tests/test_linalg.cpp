#include <doctest.h>

#include <stdexcept>

#include <random>

#include "redchain/linalg.hpp"

using namespace redchain;

TEST_CASE("dense solve recovers a known solution") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (int n : {1, 2, 5, 20, 60}) {
    DenseMatrix a(n, n);
    std::vector<double> x_true(n);
    for (int r = 0; r < n; ++r) {
      x_true[r] = u(rng);
      for (int c = 0; c < n; ++c) a(r, c) = u(rng) + (r == c ? 3.0 : 0.0);
    }
    std::vector<double> b(n, 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b[r] += a(r, c) * x_true[c];

    const auto x = solve_dense(a, b);
    for (int r = 0; r < n; ++r) CHECK(x[r] == doctest::Approx(x_true[r]).epsilon(1e-10));
    CHECK(max_residual(a, x, b) < 1e-10);
  }
}

TEST_CASE("dense solve needs pivoting to survive a zero leading entry") {
  DenseMatrix a(2, 2);
  a(0, 0) = 0.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 0.0;
  const auto x = solve_dense(a, {2.0, 3.0});
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("dense solve rejects a singular matrix") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(solve_dense(a, {1.0, 1.0}), std::runtime_error);
}

TEST_CASE("tridiagonal solve matches the dense path") {
  const int n = 12;
  std::vector<double> sub(n, 1.0), diag(n, -2.5), super(n, 1.0), rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = 0.3 * i - 1.0;

  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = diag[i];
    if (i > 0) a(i, i - 1) = sub[i];
    if (i + 1 < n) a(i, i + 1) = super[i];
  }
  const auto dense = solve_dense(a, rhs);
  const auto tri = solve_tridiagonal(sub, diag, super, rhs);
  for (int i = 0; i < n; ++i) CHECK(tri[i] == doctest::Approx(dense[i]).epsilon(1e-12));
}

TEST_CASE("least squares reproduces an exactly representable target") {
  DenseMatrix a(6, 2);
  std::vector<double> b(6);
  for (int r = 0; r < 6; ++r) {
    a(r, 0) = 1.0;
    a(r, 1) = r;
    b[r] = 0.5 - 2.0 * r;
  }
  const auto x = solve_least_squares(a, b);
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-2.0).epsilon(1e-12));
}

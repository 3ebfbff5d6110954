#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "redchain/closed_form.hpp"
#include "redchain/profile.hpp"
#include "test_util.hpp"

using namespace redchain;
using redchain::test::params_with_prescription;

TEST_CASE("coefficient c evaluates the printed expression") {
  // c = (T_R - T_L) T_L / (N+1) at N=4, T_L=1, T_R=2.
  const auto p = params_with_prescription(4, 0.3, 0.1, 1.0, 2.0);
  const auto coeffs = theorem_coefficients(p, 0.1);
  CHECK(coeffs.c == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("equilibrium collapses all slope coefficients") {
  for (double t : {1.0, 3.5}) {
    for (double lambda : {0.0, 0.4}) {
      const double alpha = 1.0 / 6.0;
      const auto p = params_with_prescription(6, lambda, alpha, t, t);
      const auto coeffs = theorem_coefficients(p, alpha);
      CHECK(coeffs.a == doctest::Approx(t * t).epsilon(1e-14));
      CHECK(coeffs.b == doctest::Approx(0.0));
      CHECK(coeffs.c == doctest::Approx(0.0));
      CHECK(coeffs.d == doctest::Approx(0.0));
      CHECK(coeffs.f == doctest::Approx(0.0));
      CHECK(coeffs.g == doctest::Approx(0.0));
      const double s = shared_factor_s(alpha, lambda);
      CHECK(coeffs.e ==
            doctest::Approx(t * t + (1.0 - 4.0 * alpha) * (1.0 - lambda) * t * t / s)
                .epsilon(1e-13));
    }
  }
}

TEST_CASE("d is strictly positive whenever the reservoirs disagree") {
  for (double lambda : {0.0, 0.3, 0.9}) {
    for (double alpha : {0.05, 1.0 / 6.0, 0.25}) {
      const auto p = params_with_prescription(5, lambda, alpha, 1.0, 2.0);
      CHECK(theorem_coefficients(p, alpha).d > 0.0);
    }
  }
}

TEST_CASE("second-moment prescription hand checks") {
  // alpha=1/4, lambda=0, N=3, T_L=1, T_R=0: L^2 = 1 + 1/32.
  {
    const auto p = params_with_prescription(3, 0.0, 0.25, 1.0, 0.0);
    const auto bm = second_moment_prescription(p, 0.25);
    CHECK(bm.l2 == doctest::Approx(1.0 + 1.0 / 32.0).epsilon(1e-14));
    CHECK(bm.r2 == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  }
  // equilibrium: the correction vanishes and L^2 = R^2 = (B/S) T^2.
  {
    const double alpha = 0.1, lambda = 0.6, t = 2.0;
    const auto p = params_with_prescription(7, lambda, alpha, t, t);
    const auto bm = second_moment_prescription(p, alpha);
    const double b = 1.0 - 2.0 * alpha * (1.0 - lambda);
    CHECK(bm.l2 == doctest::Approx(b / shared_factor_s(alpha, lambda) * t * t).epsilon(1e-14));
    CHECK(bm.r2 == doctest::Approx(bm.l2).epsilon(1e-15));
  }
}

TEST_CASE("prescribed variances are nonnegative across a parameter grid") {
  for (int n : {3, 5, 12, 40}) {
    for (double lambda : {0.0, 0.2, 0.5, 0.9, 0.99}) {
      for (double alpha : {0.01, 0.1, 1.0 / 6.0, 0.25}) {
        for (auto [tl, tr] : {std::pair{1.0, 2.0}, std::pair{0.0, 4.0}, std::pair{3.0, 3.0}}) {
          const auto p = params_with_prescription(n, lambda, alpha, tl, tr);
          const auto bm = second_moment_prescription(p, alpha);
          CHECK(bm.l2 >= tl * tl - 1e-14);
          CHECK(bm.r2 >= tr * tr - 1e-14);
          // (B/S) >= 1 exactly when alpha <= 1/4.
          const double ratio = (1.0 - 2.0 * alpha * (1.0 - lambda)) / shared_factor_s(alpha, lambda);
          CHECK(ratio >= 1.0 - 1e-14);
        }
      }
    }
  }
}

TEST_CASE("correlation hand checks") {
  // lambda=0, alpha=1/6 (the uniform-redistribution limit), N=3, dT^2=1:
  // C(1,2) = (1/(N+2)) * (1/4) * (1/2) = 1/40.
  const double alpha = 1.0 / 6.0;
  const auto p = params_with_prescription(3, 0.0, alpha, 1.0, 0.0);
  CHECK(correlation(p, alpha, 1, 2) == doctest::Approx(1.0 / 40.0).epsilon(1e-13));

  // Degenerate redistribution: all off-diagonal correlations vanish.
  const auto pd = params_with_prescription(5, 0.3, 0.25, 1.0, 2.0);
  for (int i = 1; i < 5; ++i)
    for (int j = i + 1; j <= 5; ++j) CHECK(correlation(pd, 0.25, i, j) == doctest::Approx(0.0));

  // Equal reservoirs: the squared difference factor kills the off-diagonal.
  const auto pe = params_with_prescription(5, 0.3, 0.1, 2.0, 2.0);
  CHECK(correlation(pe, 0.1, 2, 4) == doctest::Approx(0.0));

  // Ghost conventions.
  const auto bm = second_moment_prescription(p, alpha);
  CHECK(correlation(p, alpha, 0, 2) == 0.0);
  CHECK(correlation(p, alpha, 1, 4) == 0.0);
  CHECK(correlation(p, alpha, 0, 4) == 0.0);
  CHECK(correlation(p, alpha, 0, 0) == doctest::Approx(bm.l2 - 1.0).epsilon(1e-13));
  CHECK(correlation(p, alpha, 4, 4) == doctest::Approx(bm.r2).epsilon(1e-13));
  CHECK_THROWS_AS(correlation(p, alpha, 2, 1), std::out_of_range);
  CHECK_THROWS_AS(correlation(p, alpha, 1, 5), std::out_of_range);
}

TEST_CASE("ansatz evaluation uses the right branch") {
  ClosedFormCoefficients coeffs;
  coeffs.a = 1.0;
  CHECK(moment_from_ansatz(coeffs, 6, 2, 5) == doctest::Approx(1.0));
  coeffs.e = 3.0;
  coeffs.f = 1.0;
  coeffs.g = 0.5;
  CHECK(moment_from_ansatz(coeffs, 6, 4, 4) == doctest::Approx(3.0 + 4.0 + 8.0));
  CHECK_THROWS_AS(moment_from_ansatz(coeffs, 6, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(moment_from_ansatz(coeffs, 6, 3, 7), std::out_of_range);
}

TEST_CASE("ansatz minus profile product reproduces the correlation display") {
  for (int n : {5, 9}) {
    for (double lambda : {0.0, 0.3, 0.7}) {
      for (double alpha : {0.1, 1.0 / 6.0, 0.25}) {
        for (auto [tl, tr] : {std::pair{1.0, 2.0}, std::pair{0.0, 4.0}}) {
          const auto p = params_with_prescription(n, lambda, alpha, tl, tr);
          const auto coeffs = theorem_coefficients(p, alpha);
          const auto prof = profile_closed_form(p);
          double scale = 1.0;
          for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j)
              scale = std::max(scale, std::abs(moment_from_ansatz(coeffs, n, i, j)));
          for (int i = 1; i <= n; ++i) {
            for (int j = i; j <= n; ++j) {
              const double from_ansatz = moment_from_ansatz(coeffs, n, i, j) - prof[i] * prof[j];
              CHECK(std::abs(from_ansatz - correlation(p, alpha, i, j)) <= 1e-10 * scale);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("off-diagonal correlations factor as i/(N+1) * (1 - j/(N+1))") {
  const int n = 8;
  const double alpha = 0.1;
  const auto p = params_with_prescription(n, 0.4, alpha, 1.0, 3.0);
  double ratio0 = 0.0;
  bool first = true;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double c = correlation(p, alpha, i, j);
      const double shape = (i / (n + 1.0)) * (1.0 - j / (n + 1.0));
      const double ratio = c / shape;
      if (first) {
        ratio0 = ratio;
        first = false;
      }
      CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-10));
    }
  }
  CHECK(ratio0 > 0.0);
}

TEST_CASE("swapping reservoirs mirrors the correlations") {
  const int n = 6;
  const double alpha = 1.0 / 6.0;
  const auto p = params_with_prescription(n, 0.3, alpha, 1.0, 2.0);
  const auto q = params_with_prescription(n, 0.3, alpha, 2.0, 1.0);
  for (int i = 0; i <= n + 1; ++i)
    for (int j = i; j <= n + 1; ++j)
      CHECK(correlation(p, alpha, i, j) ==
            doctest::Approx(correlation(q, alpha, n + 1 - j, n + 1 - i)).epsilon(1e-12));
}

TEST_CASE("positivity below the degenerate alpha") {
  for (double lambda : {0.0, 0.5, 0.9}) {
    for (double alpha : {0.05, 1.0 / 6.0, 0.2}) {
      const auto p = params_with_prescription(7, lambda, alpha, 0.0, 4.0);
      for (int i = 1; i < 7; ++i)
        for (int j = i + 1; j <= 7; ++j) CHECK(correlation(p, alpha, i, j) > 0.0);
      for (int i = 1; i <= 7; ++i) CHECK(correlation(p, alpha, i, i) > 0.0);
    }
  }
}

TEST_CASE("theorem coefficients require unit boundary rates") {
  auto p = params_with_prescription(5, 0.3, 0.1, 1.0, 2.0, 2.0, 2.0);
  CHECK_THROWS_AS(theorem_coefficients(p, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(correlation(p, 0.1, 1, 2), std::invalid_argument);
}

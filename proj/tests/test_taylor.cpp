#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expgraph/taylor.hpp"

using namespace expgraph;

TEST_CASE("exact degree examples") {
  CHECK(select_degree_exact(1e-5) == 8);
  CHECK(select_degree_exact(1e-10) == 13);
  CHECK(select_degree_exact(1e-15) == 17);
}

TEST_CASE("bound degree") {
  CHECK(select_degree_bound(1e-5) == 24);
  // 2 ln(1e10) = 46.05, rounded up.
  CHECK(select_degree_bound(1e-10) == 47);
  CHECK(select_degree_bound(1e-15) == 70);
  CHECK(select_degree_bound(0.9) == 3);
}

TEST_CASE("degree selection rejects eps outside (0,1)") {
  for (double bad : {0.0, -1e-3, 1.0, 2.0}) {
    CHECK_THROWS_AS(select_degree_exact(bad), std::invalid_argument);
    CHECK_THROWS_AS(select_degree_bound(bad), std::invalid_argument);
  }
}

TEST_CASE("exact degree never exceeds the bound over a log sweep") {
  for (int p = 1; p <= 15; ++p) {
    for (double m : {1.0, 2.5, 5.0}) {
      const double eps = m * std::pow(10.0, -p);
      if (eps >= 1.0) continue;
      CHECK(select_degree_exact(eps) <= select_degree_bound(eps));
    }
  }
}

TEST_CASE("truncation meets half the budget at the selected degree") {
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const auto params = make_taylor_params(eps);
    CHECK(params.degree == select_degree_exact(0.5 * eps));
    CHECK(taylor_remainder(params.degree) <= 0.5 * eps);
    CHECK(taylor_remainder(params.degree - 1) > 0.5 * eps);
  }
}

TEST_CASE("psi weights: small case and recurrence/direct agreement") {
  const auto psi2 = psi_weights(2);
  REQUIRE(psi2.size() == 3);
  CHECK(psi2[0] == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(psi2[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(psi2[2] == 1.0);

  for (int n : {1, 3, 8, 13, 17, 30}) {
    const auto psi = psi_weights(n);
    CHECK(psi.back() == 1.0);
    for (int j = 0; j <= n; ++j) {
      // Direct sum of j!/(j+m)!.
      double direct = 0.0;
      double term = 1.0;
      for (int m = 0; m <= n - j; ++m) {
        if (m > 0) term /= static_cast<double>(j + m);
        direct += term;
      }
      CHECK(std::abs(psi[j] - direct) <= 1e-14);
      CHECK(psi[j] <= std::numbers::e);
      if (j < n) {
        CHECK(psi[j + 1] <= psi[j]);
        CHECK(std::abs(psi[j] - (psi[j + 1] / (j + 1) + 1.0)) <= 1e-15);
      }
    }
  }
}

TEST_CASE("psi_0 at N=17 is the degree-17 partial sum of e") {
  // sum_{l<=17} 1/l! from mpmath at 40 digits.
  CHECK(std::abs(psi_weights(17)[0] - 2.718281828459045070516) <= 1e-14);
}

TEST_CASE("queue thresholds") {
  TaylorParams p;
  p.degree = 2;
  p.psi = psi_weights(2);
  p.eps = 1e-2;
  const auto base = queue_thresholds(p);
  CHECK(base[2] == doctest::Approx(2.5e-3).epsilon(1e-14));
  for (std::size_t j = 0; j + 1 < base.size(); ++j) CHECK(base[j] <= base[j + 1]);

  const auto big = make_taylor_params(1e-12);
  const auto b = queue_thresholds(big);
  CHECK(b.back() / b.front() == doctest::Approx(big.psi[0]));
  CHECK(b.back() / b.front() == doctest::Approx(std::numbers::e).epsilon(1e-9));

  auto loose = big;
  loose.rule = ThresholdRule::kPseudocode;
  const auto l = queue_thresholds(loose);
  CHECK(l[3] / b[3] == doctest::Approx(std::numbers::e));
}

TEST_CASE("degree selection is fast") {
  // Every call of the sweep above is tiny; this just pins the cost.
  int sum = 0;
  for (int i = 0; i < 1000; ++i) sum += select_degree_exact(1e-15);
  CHECK(sum == 17000);
}

#include "expgraph/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expgraph {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
  }
}

constexpr int kMaxDegree = 200;

}  // namespace

double taylor_remainder(int k) {
  // Sum 1/l! for l > k in long double with Kahan compensation; terms past
  // 1/(k+40)! are far below the working precision.
  long double term = 1.0L;
  for (int l = 1; l <= k; ++l) term /= static_cast<long double>(l);
  long double sum = 0.0L;
  long double comp = 0.0L;
  for (int l = k + 1; l <= k + 40; ++l) {
    term /= static_cast<long double>(l);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

int select_degree_exact(double eps) {
  check_eps(eps);
  for (int k = 0; k <= kMaxDegree; ++k) {
    if (taylor_remainder(k) <= eps) return k;
  }
  throw std::invalid_argument("eps too small for Taylor degree selection");
}

int select_degree_bound(double eps) {
  check_eps(eps);
  return std::max(3, static_cast<int>(std::ceil(2.0 * std::log(1.0 / eps))));
}

std::vector<double> psi_weights(int degree) {
  if (degree < 1) throw std::invalid_argument("Taylor degree must be >= 1");
  std::vector<double> psi(static_cast<std::size_t>(degree) + 1);
  psi[degree] = 1.0;
  for (int j = degree - 1; j >= 0; --j) psi[j] = psi[j + 1] / static_cast<double>(j + 1) + 1.0;
  return psi;
}

TaylorParams make_taylor_params(double eps, ThresholdRule rule) {
  check_eps(eps);
  TaylorParams p;
  p.eps = eps;
  p.theta = kErrorSplit;
  p.rule = rule;
  p.degree = std::max(1, select_degree_exact(p.theta * eps));
  p.psi = psi_weights(p.degree);
  return p;
}

std::vector<double> queue_thresholds(const TaylorParams& params) {
  const double scale = params.rule == ThresholdRule::kPseudocode ? std::numbers::e : 1.0;
  std::vector<double> base(params.psi.size());
  for (std::size_t j = 0; j < base.size(); ++j) {
    base[j] = scale * params.theta * params.eps / (static_cast<double>(params.degree) * params.psi[j]);
  }
  return base;
}

}  // namespace expgraph

#pragma once

#include <vector>

namespace expgraph {

// Fraction of the error budget given to Taylor truncation; the solvers get
// the rest.
inline constexpr double kErrorSplit = 0.5;

enum class ThresholdRule {
  kStrict,      // theta * eps / (N psi_j)
  kPseudocode,  // same, times e
};

// Taylor degree, weights and the error budget for one solve.
struct TaylorParams {
  int degree = 0;            // N
  std::vector<double> psi;   // psi_j(1), j = 0..N
  double eps = 0.0;          // total 1-norm error requested
  double theta = kErrorSplit;
  ThresholdRule rule = ThresholdRule::kStrict;

  // theta * eps, the budget for the residual certificate.
  double solver_tolerance() const { return theta * eps; }
};

// Smallest k with e - sum_{l<=k} 1/l! <= eps. Throws for eps outside (0,1).
int select_degree_exact(double eps);

// max(3, ceil(2 ln(1/eps))). Loose; kept for comparison.
int select_degree_bound(double eps);

// Tail e - sum_{l<=k} 1/l!, summed directly from the tail terms.
double taylor_remainder(int k);

// psi_j(1) = sum_{m=0}^{N-j} j!/(j+m)!, via psi_N = 1, psi_j = psi_{j+1}/(j+1) + 1.
std::vector<double> psi_weights(int degree);

// Degree from select_degree_exact(theta * eps), psi table attached.
TaylorParams make_taylor_params(double eps, ThresholdRule rule = ThresholdRule::kStrict);

// Per-block queue thresholds before division by Z_j.
std::vector<double> queue_thresholds(const TaylorParams& params);

}  // namespace expgraph

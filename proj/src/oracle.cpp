#include "expgraph/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expgraph {

namespace {

void check_oracle_input(const CscGraph& g, node_t c, int degree) {
  if (g.num_nodes() > kOracleMaxNodes) {
    throw std::invalid_argument("dense oracle refuses n = " + std::to_string(g.num_nodes()) +
                                " (cap " + std::to_string(kOracleMaxNodes) + ")");
  }
  if (c >= g.num_nodes()) throw std::out_of_range("seed node out of range");
  if (degree < 0) throw std::invalid_argument("Taylor degree must be >= 0");
}

}  // namespace

DenseVector dense_taylor_oracle(const CscGraph& g, node_t c, int degree) {
  check_oracle_input(g, c, degree);
  const std::size_t n = g.num_nodes();
  DenseVector term(n, 0.0);
  term[c] = 1.0;
  DenseVector sum = term;
  for (int j = 0; j < degree; ++j) {
    term = matvec(g, term);
    const double s = 1.0 / static_cast<double>(j + 1);
    for (std::size_t i = 0; i < n; ++i) {
      term[i] *= s;
      sum[i] += term[i];
    }
  }
  return sum;
}

DenseVector horner_full(const CscGraph& g, node_t c, int degree) {
  check_oracle_input(g, c, degree);
  const std::size_t n = g.num_nodes();
  DenseVector x(n, 0.0);
  x[c] = 1.0;
  for (int k = 0; k < degree; ++k) {
    const double s = 1.0 / static_cast<double>(degree - k);
    for (auto& v : x) v *= s;
    x = matvec(g, x);
    x[c] += 1.0;
  }
  return x;
}

DenseVector dense_normalized_laplacian_exp(const CscGraph& g, node_t c, int degree) {
  check_oracle_input(g, c, degree);
  const std::size_t n = g.num_nodes();
  // Dense A = D^{-1/2} G D^{-1/2}, row-major.
  std::vector<double> a(n * n, 0.0);
  const auto cp = g.col_ptr();
  const auto ri = g.row_idx();
  for (std::size_t j = 0; j < n; ++j) {
    for (offset_t k = cp[j]; k < cp[j + 1]; ++k) {
      const std::size_t i = ri[k];
      const double di = static_cast<double>(g.out_degree(static_cast<node_t>(i)));
      const double dj = static_cast<double>(g.out_degree(static_cast<node_t>(j)));
      a[i * n + j] = 1.0 / std::sqrt(di * dj);
    }
  }
  DenseVector term(n, 0.0);
  term[c] = 1.0;
  DenseVector sum = term;
  DenseVector next(n);
  for (int m = 1; m <= degree; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * term[j];
      next[i] = acc / static_cast<double>(m);
    }
    term.swap(next);
    for (std::size_t i = 0; i < n; ++i) sum[i] += term[i];
  }
  const double scale = std::exp(-1.0);
  for (auto& v : sum) v *= scale;
  return sum;
}

}  // namespace expgraph

#pragma once

#include <cstddef>
#include <vector>

#include "expgraph/graph.hpp"

namespace expgraph {

// Largest n the dense references accept.
inline constexpr std::size_t kOracleMaxNodes = 1'000'000;

// Degree used when the oracle stands in for exp(P) e_c: select_degree_exact(1e-15).
inline constexpr int kOracleDegree = 17;

using DenseVector = std::vector<double>;

// sum_{j=0}^{N} v_j with v_0 = e_c, v_{j+1} = P v_j / (j+1).
DenseVector dense_taylor_oracle(const CscGraph& g, node_t c, int degree = kOracleDegree);

// Horner form: x <- P (x / (N-k)) + e_c for k = 0..N-1, no truncation.
DenseVector horner_full(const CscGraph& g, node_t c, int degree = kOracleDegree);

// Column c of exp(-L) for L = I - D^{-1/2} G D^{-1/2}, by a dense Taylor
// series on the symmetric normalized adjacency. Uses the unit-weight pattern
// of g and its out-degrees; independent of P.
DenseVector dense_normalized_laplacian_exp(const CscGraph& g, node_t c, int degree = 30);

}  // namespace expgraph

#include "expgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace expgraph {

namespace {

constexpr double kColumnSumTol = 1e-12;

}  // namespace

CscGraph::CscGraph(std::size_t n, std::vector<offset_t> col_ptr, std::vector<node_t> row_idx,
                   std::vector<double> val, std::vector<std::int64_t> labels)
    : n_(n),
      col_ptr_(std::move(col_ptr)),
      row_idx_(std::move(row_idx)),
      val_(std::move(val)),
      labels_(std::move(labels)) {
  if (col_ptr_.size() != n_ + 1) throw std::invalid_argument("col_ptr must have n+1 entries");
  if (col_ptr_.front() != 0) throw std::invalid_argument("col_ptr[0] must be 0");
  if (col_ptr_.back() != row_idx_.size()) throw std::invalid_argument("col_ptr[n] must equal nnz");
  if (val_.size() != row_idx_.size()) throw std::invalid_argument("val and row_idx differ in length");
  if (!labels_.empty() && labels_.size() != n_) throw std::invalid_argument("labels must have n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if (col_ptr_[i + 1] < col_ptr_[i]) throw std::invalid_argument("col_ptr must be nondecreasing");
  }
  for (node_t r : row_idx_) {
    if (r >= n_) throw std::invalid_argument("row index " + std::to_string(r) + " out of range");
  }
  for (double v : val_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite edge value");
  }
  finalize();
}

void CscGraph::finalize() {
  out_degree_.assign(n_, 0);
  one_norm_ = 0.0;
  nonnegative_ = true;
  stochastic_ = true;
  for (std::size_t j = 0; j < n_; ++j) {
    out_degree_[j] = col_ptr_[j + 1] - col_ptr_[j];
    double abs_sum = 0.0;
    double sum = 0.0;
    for (offset_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      abs_sum += std::abs(val_[k]);
      sum += val_[k];
      if (val_[k] < 0.0) nonnegative_ = false;
    }
    one_norm_ = std::max(one_norm_, abs_sum);
    if (out_degree_[j] > 0 && std::abs(sum - 1.0) > kColumnSumTol) stochastic_ = false;
  }
  if (!nonnegative_) stochastic_ = false;
}

CscGraph CscGraph::from_arcs(std::size_t n, std::span<const Arc> arcs, bool symmetrize) {
  std::vector<Arc> all;
  all.reserve(symmetrize ? 2 * arcs.size() : arcs.size());
  for (const auto& a : arcs) {
    if (a.src >= n || a.dst >= n) {
      throw std::invalid_argument("arc (" + std::to_string(a.src) + ", " + std::to_string(a.dst) +
                                  ") out of range for n = " + std::to_string(n));
    }
    all.push_back(a);
    if (symmetrize && a.src != a.dst) all.push_back({a.dst, a.src});
  }
  std::sort(all.begin(), all.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Arc& a, const Arc& b) { return a.src == b.src && a.dst == b.dst; }),
            all.end());

  std::vector<offset_t> col_ptr(n + 1, 0);
  std::vector<node_t> row_idx;
  row_idx.reserve(all.size());
  for (const auto& a : all) {
    ++col_ptr[a.src + 1];
    row_idx.push_back(a.dst);
  }
  for (std::size_t j = 0; j < n; ++j) col_ptr[j + 1] += col_ptr[j];
  std::vector<double> val(row_idx.size(), 1.0);
  return CscGraph(n, std::move(col_ptr), std::move(row_idx), std::move(val));
}

CscGraph normalize_to_stochastic(const CscGraph& g) {
  const auto cp = g.col_ptr();
  std::vector<double> val(g.nnz());
  for (std::size_t j = 0; j < g.num_nodes(); ++j) {
    const auto d = g.out_degree(static_cast<node_t>(j));
    if (d == 0) {
      throw std::invalid_argument("node " + std::to_string(j) + " has out-degree 0");
    }
    const double w = 1.0 / static_cast<double>(d);
    for (offset_t k = cp[j]; k < cp[j + 1]; ++k) val[k] = w;
  }
  std::vector<std::int64_t> labels(g.labels().begin(), g.labels().end());
  return CscGraph(g.num_nodes(), {cp.begin(), cp.end()}, {g.row_idx().begin(), g.row_idx().end()},
                  std::move(val), std::move(labels));
}

std::vector<Entry> column(const CscGraph& g, node_t i) {
  if (i >= g.num_nodes()) {
    throw std::out_of_range("column " + std::to_string(i) + " out of range for n = " +
                            std::to_string(g.num_nodes()));
  }
  const auto rows = g.column_rows(i);
  const auto vals = g.column_values(i);
  std::vector<Entry> out(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out[k] = {rows[k], vals[k]};
  return out;
}

DegreeStats degree_stats(const CscGraph& g) {
  DegreeStats s;
  if (g.num_nodes() == 0) return s;
  const auto deg = g.out_degree();
  const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
  s.d_min = *lo;
  s.d_max = *hi;
  s.edge_density = static_cast<double>(g.nnz()) / static_cast<double>(g.num_nodes());
  return s;
}

std::vector<double> matvec(const CscGraph& g, std::span<const double> v) {
  if (v.size() != g.num_nodes()) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> y(g.num_nodes(), 0.0);
  const auto cp = g.col_ptr();
  const auto ri = g.row_idx();
  const auto va = g.values();
  for (std::size_t j = 0; j < g.num_nodes(); ++j) {
    if (v[j] == 0.0) continue;
    for (offset_t k = cp[j]; k < cp[j + 1]; ++k) y[ri[k]] += va[k] * v[j];
  }
  return y;
}

SparseVector laplacian_column_from_exp_column(const SparseVector& x,
                                              std::span<const std::uint64_t> degrees, node_t c) {
  if (c >= degrees.size()) throw std::out_of_range("seed node out of range");
  const double dc = static_cast<double>(degrees[c]);
  SparseVector out;
  out.reserve(x.nnz());
  for (const auto& [i, v] : x) {
    if (i >= degrees.size()) throw std::out_of_range("entry outside degree table");
    const double di = static_cast<double>(degrees[i]);
    if (di <= 0.0 || dc <= 0.0) throw std::invalid_argument("zero degree in Laplacian transform");
    out.set(i, std::exp(-1.0) * std::sqrt(dc / di) * v);
  }
  return out;
}

}  // namespace expgraph

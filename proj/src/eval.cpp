#include "expgraph/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace expgraph {

const char* to_string(ExcludePolicy p) {
  return p == ExcludePolicy::kNone ? "none" : "seed+neighbors";
}

ExcludePolicy parse_exclude_policy(const std::string& s) {
  if (s == "none") return ExcludePolicy::kNone;
  if (s == "seed+neighbors") return ExcludePolicy::kSeedAndNeighbors;
  throw std::invalid_argument("unknown exclusion policy '" + s + "'");
}

std::vector<node_t> top_k_nodes(const SparseVector& v, std::size_t k,
                                std::span<const node_t> excluded) {
  const std::unordered_set<node_t> skip(excluded.begin(), excluded.end());
  std::vector<Entry> cands;
  cands.reserve(v.nnz());
  for (const auto& [i, val] : v) {
    if (val != 0.0 && !skip.count(i)) cands.push_back({i, val});
  }
  auto rank = [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value > b.value : a.node < b.node;
  };
  const std::size_t m = std::min(k, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(m), cands.end(), rank);
  std::vector<node_t> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = cands[i].node;
  return out;
}

PrecisionReport precision_at_k(const SparseVector& approx, const SparseVector& truth,
                               std::size_t k, ExcludePolicy exclude, const CscGraph& g, node_t c) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  std::vector<node_t> excluded;
  if (exclude == ExcludePolicy::kSeedAndNeighbors) {
    if (c >= g.num_nodes()) throw std::out_of_range("seed node out of range");
    excluded.push_back(c);
    for (node_t u : g.column_rows(c)) excluded.push_back(u);
  }
  const auto s = top_k_nodes(truth, k, excluded);
  PrecisionReport rep;
  rep.k = k;
  rep.excluded = exclude;
  rep.effective_k = s.size();
  if (s.empty()) return rep;
  const auto t = top_k_nodes(approx, s.size(), excluded);
  const std::unordered_set<node_t> tset(t.begin(), t.end());
  std::size_t hits = 0;
  for (node_t i : s) hits += tset.count(i);
  rep.precision = static_cast<double>(hits) / static_cast<double>(s.size());
  return rep;
}

double one_norm_error(const SparseVector& approx, const SparseVector& truth) {
  double err = 0.0;
  for (const auto& e : truth.sorted_by_node()) err += std::abs(approx.get(e.node) - e.value);
  for (const auto& e : approx.sorted_by_node()) {
    if (!truth.contains(e.node)) err += std::abs(e.value);
  }
  return err;
}

double one_norm_error(const SparseVector& approx, std::span<const double> truth) {
  double err = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    err += std::abs(approx.get(static_cast<node_t>(i)) - truth[i]);
  }
  for (const auto& e : approx.sorted_by_node()) {
    if (e.node >= truth.size()) err += std::abs(e.value);
  }
  return err;
}

std::vector<std::pair<std::size_t, double>> nnz_error_curve(const SparseVector& truth) {
  std::vector<double> mags;
  mags.reserve(truth.nnz());
  for (const auto& [i, v] : truth) {
    if (v != 0.0) mags.push_back(std::abs(v));
  }
  std::sort(mags.begin(), mags.end(), std::greater<>());
  // Tail sums from the small end, so each error is accumulated smallest-first.
  std::vector<double> tail(mags.size() + 1, 0.0);
  for (std::size_t i = mags.size(); i-- > 0;) tail[i] = tail[i + 1] + mags[i];
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(mags.size());
  for (std::size_t m = 1; m <= mags.size(); ++m) out.emplace_back(m, tail[m]);
  return out;
}

double work_accounting(const SolveReport& report, const CscGraph& g) {
  return g.nnz() ? static_cast<double>(report.edge_touches) / static_cast<double>(g.nnz()) : 0.0;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const MetricRow& row) {
  char param[32];
  char value[32];
  std::snprintf(param, sizeof param, "%.17g", row.param);
  std::snprintf(value, sizeof value, "%.17g", row.value);
  out << row.graph << ',' << row.seed << ',' << row.algorithm << ',' << param << ',' << row.metric
      << ',' << value << '\n';
}

}  // namespace expgraph

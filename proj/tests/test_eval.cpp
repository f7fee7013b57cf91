#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "expgraph/eval.hpp"
#include "expgraph/solvers.hpp"
#include "support.hpp"

using namespace expgraph;
namespace t = expgraph::testing;

namespace {

SparseVector from_list(const std::vector<double>& v) { return SparseVector::from_dense(v); }

// Brute force: sort all stored entries by (value desc, node asc).
std::set<node_t> brute_top(const SparseVector& v, std::size_t k, const std::set<node_t>& skip) {
  std::vector<std::pair<double, node_t>> all;
  for (const auto& [i, x] : v) {
    if (!skip.count(i)) all.push_back({-x, i});
  }
  std::sort(all.begin(), all.end());
  std::set<node_t> out;
  for (std::size_t r = 0; r < std::min(k, all.size()); ++r) out.insert(all[r].second);
  return out;
}

}  // namespace

TEST_CASE("precision examples") {
  const auto g = t::directed_cycle(4);
  const auto truth = from_list({0.5, 0.3, 0.2, 0.1});
  const auto approx = from_list({0.5, 0.2, 0.3, 0.1});
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(precision_at_k(truth, truth, k, ExcludePolicy::kNone, g, 0).precision == 1.0);
  }
  const auto r = precision_at_k(approx, truth, 2, ExcludePolicy::kNone, g, 0);
  CHECK(r.precision == 0.5);
  CHECK(r.effective_k == 2);

  SparseVector left, right;
  left.set(0, 1.0);
  left.set(1, 0.5);
  right.set(2, 1.0);
  right.set(3, 0.5);
  CHECK(precision_at_k(left, right, 2, ExcludePolicy::kNone, g, 0).precision == 0.0);
}

TEST_CASE("precision exclusion removes seed and out-neighbors") {
  // Star: 0 -> {1,2,3}; node 4 hangs off 1.
  const std::vector<Arc> arcs{{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}, {1, 4}, {4, 1}};
  const auto g = CscGraph::from_arcs(5, arcs);
  const auto truth = from_list({0.9, 0.8, 0.7, 0.6, 0.1});
  const auto approx = from_list({0.9, 0.8, 0.7, 0.6, 0.05});
  const auto r = precision_at_k(approx, truth, 3, ExcludePolicy::kSeedAndNeighbors, g, 0);
  CHECK(r.effective_k == 1);
  CHECK(r.precision == 1.0);
  CHECK(r.excluded == ExcludePolicy::kSeedAndNeighbors);
  CHECK_THROWS_AS(precision_at_k(approx, truth, 0, ExcludePolicy::kNone, g, 0), std::invalid_argument);
}

TEST_CASE("precision against brute-force sets, storage order irrelevant") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = t::random_digraph(60, 5, 8);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> a(60), b(60);
    for (int i = 0; i < 60; ++i) {
      a[i] = u(rng);
      b[i] = std::round(u(rng) * 8.0) / 8.0;  // coarse values force ties
    }
    const auto va = from_list(a);
    const auto vb = from_list(b);
    // Same contents, reverse insertion order.
    SparseVector vb_rev;
    for (int i = 59; i >= 0; --i) {
      if (b[i] != 0.0) vb_rev.set(static_cast<node_t>(i), b[i]);
    }
    const node_t c = static_cast<node_t>(trial % 60);
    std::set<node_t> skip{c};
    for (node_t u2 : g.column_rows(c)) skip.insert(u2);
    for (std::size_t k : {1, 5, 20}) {
      for (auto policy : {ExcludePolicy::kNone, ExcludePolicy::kSeedAndNeighbors}) {
        const auto s = brute_top(vb, k, policy == ExcludePolicy::kNone ? std::set<node_t>{} : skip);
        const auto tt = brute_top(va, k, policy == ExcludePolicy::kNone ? std::set<node_t>{} : skip);
        std::size_t hit = 0;
        for (node_t x : s) hit += tt.count(x);
        const auto r = precision_at_k(va, vb, k, policy, g, c);
        CHECK(r.effective_k == s.size());
        CHECK(r.precision == doctest::Approx(static_cast<double>(hit) / s.size()));
        CHECK(precision_at_k(va, vb_rev, k, policy, g, c).precision == r.precision);
      }
    }
  }
}

TEST_CASE("one-norm error") {
  SparseVector e0, e1;
  e0.set(0, 1.0);
  e1.set(1, 1.0);
  CHECK(one_norm_error(e0, e0) == 0.0);
  CHECK(one_norm_error(e1, e0) == 2.0);
  const std::vector<double> dense{1.0, 0.0, 0.0};
  CHECK(one_norm_error(e1, dense) == 2.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(25), b(25);
    for (int i = 0; i < 25; ++i) {
      a[i] = (i % 3 == 0) ? 0.0 : u(rng);
      b[i] = (i % 4 == 0) ? 0.0 : u(rng);
    }
    double loop = 0.0;
    for (int i = 0; i < 25; ++i) loop += std::abs(a[i] - b[i]);
    CHECK(one_norm_error(from_list(a), from_list(b)) == doctest::Approx(loop).epsilon(1e-14));
    CHECK(one_norm_error(from_list(a), b) == doctest::Approx(loop).epsilon(1e-14));
  }
}

TEST_CASE("nnz error curve") {
  const auto curve = nnz_error_curve(from_list({0.7, 0.2, 0.1}));
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].first == 1);
  CHECK(curve[0].second == doctest::Approx(0.3));
  CHECK(curve[2].second == 0.0);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v(40);
    for (double& x : v) x = u(rng);
    const auto c = nnz_error_curve(from_list(v));
    std::vector<double> mags;
    for (double x : v) mags.push_back(std::abs(x));
    std::sort(mags.rbegin(), mags.rend());
    for (std::size_t m = 0; m < c.size(); ++m) {
      double rest = 0.0;
      for (std::size_t r = m + 1; r < mags.size(); ++r) rest += mags[r];
      CHECK(c[m].second == doctest::Approx(rest).epsilon(1e-12));
      if (m > 0) CHECK(c[m].second <= c[m - 1].second);
    }
  }
}

TEST_CASE("work accounting") {
  const auto p = normalize_to_stochastic(t::star_with_back_edges());
  SolveReport none;
  CHECK(work_accounting(none, p) == 0.0);
  SolveReport full;
  full.edge_touches = p.nnz();
  CHECK(work_accounting(full, p) == 1.0);
  SolveOptions two;
  two.max_steps = 2;
  CHECK(work_accounting(gexpm(p, 0, 1e-4, two), p) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("exclusion policy names") {
  CHECK(std::string(to_string(ExcludePolicy::kNone)) == "none");
  CHECK(parse_exclude_policy("seed+neighbors") == ExcludePolicy::kSeedAndNeighbors);
  CHECK_THROWS_AS(parse_exclude_policy("all"), std::invalid_argument);
}

TEST_CASE("csv rows") {
  std::ostringstream out;
  write_csv_header(out);
  write_csv_row(out, {"ff", 3, "gexpmq", 1e-4, "precision@100", 0.99});
  CHECK(out.str() == "graph,seed,algorithm,param,metric,value\nff,3,gexpmq,0.0001,precision@100,0.98999999999999999\n");
}

#include "expgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace expgraph {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return v;
}

double parse_finite(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + std::string(tok) + "'", line);
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

struct LineReader {
  std::istream& in;
  std::string line;
  std::size_t number = 0;

  bool next() {
    if (!std::getline(in, line)) return false;
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); });
}

node_t checked_node(std::int64_t id, std::size_t n, std::size_t line) {
  if (id < 0 || static_cast<std::uint64_t>(id) >= n) {
    throw ParseError("node index " + std::to_string(id) + " out of range for n = " + std::to_string(n),
                     line);
  }
  return static_cast<node_t>(id);
}

std::size_t checked_size(std::int64_t v, std::size_t line) {
  if (v < 0 || static_cast<std::uint64_t>(v) > 0xffffffffull) {
    throw ParseError("size " + std::to_string(v) + " out of range", line);
  }
  return static_cast<std::size_t>(v);
}

CscGraph read_smat(LineReader& r, bool undirected) {
  std::size_t n = 0;
  std::size_t nnz = 0;
  bool have_header = false;
  std::vector<Arc> arcs;
  std::size_t seen = 0;
  while (r.next()) {
    if (blank(r.line)) continue;
    const auto tok = split_ws(r.line);
    if (!have_header) {
      if (tok.size() != 3) throw ParseError("SMAT header must be 'rows cols nnz'", r.number);
      const std::size_t rows = checked_size(parse_int(tok[0], r.number), r.number);
      const std::size_t cols = checked_size(parse_int(tok[1], r.number), r.number);
      if (rows != cols) throw ParseError("SMAT adjacency must be square", r.number);
      n = rows;
      nnz = static_cast<std::size_t>(parse_int(tok[2], r.number));
      arcs.reserve(nnz);
      have_header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError("SMAT entry must be 'src dst weight'", r.number);
    if (++seen > nnz) throw ParseError("more entries than the header's nnz", r.number);
    const node_t src = checked_node(parse_int(tok[0], r.number), n, r.number);
    const node_t dst = checked_node(parse_int(tok[1], r.number), n, r.number);
    if (parse_finite(tok[2], r.number) != 0.0) arcs.push_back({src, dst});
  }
  if (!have_header) throw ParseError("empty SMAT input", r.number);
  if (seen != nnz) {
    throw ParseError("header declares " + std::to_string(nnz) + " entries, found " + std::to_string(seen),
                     r.number);
  }
  return CscGraph::from_arcs(n, arcs, undirected);
}

CscGraph read_mtx(LineReader& r) {
  if (!r.next()) throw ParseError("empty MatrixMarket input", 0);
  const auto banner = split_ws(r.line);
  if (banner.size() < 5 || banner[0] != "%%MatrixMarket") {
    throw ParseError("missing %%MatrixMarket banner", r.number);
  }
  if (lower(banner[1]) != "matrix" || lower(banner[2]) != "coordinate") {
    throw ParseError("only 'matrix coordinate' MatrixMarket files are supported", r.number);
  }
  const std::string field = lower(banner[3]);
  const std::string symmetry = lower(banner[4]);
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError("unsupported MatrixMarket field '" + field + "'", r.number);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError("unsupported MatrixMarket symmetry '" + symmetry + "'", r.number);
  }
  const bool pattern = field == "pattern";

  std::size_t n = 0;
  std::size_t nnz = 0;
  bool have_size = false;
  std::size_t seen = 0;
  std::vector<Arc> arcs;
  while (r.next()) {
    if (blank(r.line) || r.line.front() == '%') continue;
    const auto tok = split_ws(r.line);
    if (!have_size) {
      if (tok.size() != 3) throw ParseError("size line must be 'rows cols nnz'", r.number);
      const std::size_t rows = checked_size(parse_int(tok[0], r.number), r.number);
      const std::size_t cols = checked_size(parse_int(tok[1], r.number), r.number);
      if (rows != cols) throw ParseError("adjacency must be square", r.number);
      n = rows;
      nnz = static_cast<std::size_t>(parse_int(tok[2], r.number));
      arcs.reserve(nnz);
      have_size = true;
      continue;
    }
    if (tok.size() != (pattern ? 2u : 3u)) throw ParseError("malformed MatrixMarket entry", r.number);
    if (++seen > nnz) throw ParseError("more entries than the size line declares", r.number);
    const node_t i = checked_node(parse_int(tok[0], r.number) - 1, n, r.number);
    const node_t j = checked_node(parse_int(tok[1], r.number) - 1, n, r.number);
    if (!pattern && parse_finite(tok[2], r.number) == 0.0) continue;
    arcs.push_back({i, j});
  }
  if (!have_size) throw ParseError("MatrixMarket size line missing", r.number);
  if (seen != nnz) {
    throw ParseError("size line declares " + std::to_string(nnz) + " entries, found " + std::to_string(seen),
                     r.number);
  }
  return CscGraph::from_arcs(n, arcs, symmetry == "symmetric");
}

CscGraph read_edgelist(LineReader& r, bool undirected) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  while (r.next()) {
    std::string_view body = r.line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    if (blank(body)) continue;
    const auto tok = split_ws(body);
    if (tok.size() != 2 && tok.size() != 3) throw ParseError("edge must be 'src dst [weight]'", r.number);
    const std::int64_t s = parse_int(tok[0], r.number);
    const std::int64_t d = parse_int(tok[1], r.number);
    if (s < 0 || d < 0) throw ParseError("negative node id", r.number);
    if (tok.size() == 3 && parse_finite(tok[2], r.number) == 0.0) continue;
    raw.emplace_back(s, d);
  }
  std::vector<std::int64_t> ids;
  ids.reserve(2 * raw.size());
  for (const auto& [s, d] : raw) {
    ids.push_back(s);
    ids.push_back(d);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > 0xffffffffull) throw ParseError("too many nodes", 0);
  const bool dense = ids.empty() || ids.back() == static_cast<std::int64_t>(ids.size()) - 1;
  auto dense_id = [&](std::int64_t id) {
    return static_cast<node_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const auto& [s, d] : raw) arcs.push_back({dense_id(s), dense_id(d)});
  CscGraph g = CscGraph::from_arcs(ids.size(), arcs, undirected);
  if (dense) return g;
  return CscGraph(g.num_nodes(), {g.col_ptr().begin(), g.col_ptr().end()},
                  {g.row_idx().begin(), g.row_idx().end()}, {g.values().begin(), g.values().end()},
                  std::move(ids));
}

void check_out_links(const CscGraph& g) {
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    if (g.out_degree(static_cast<node_t>(i)) == 0) {
      std::string name = std::to_string(i);
      if (!g.labels().empty()) name += " (id " + std::to_string(g.labels()[i]) + ")";
      throw ParseError("node " + name + " has no out-links", 0);
    }
  }
}

GraphFormat sniff(std::istream& in) {
  const auto pos = in.tellg();
  std::string first;
  while (std::getline(in, first) && blank(first)) {
  }
  in.clear();
  in.seekg(pos);
  return first.rfind("%%MatrixMarket", 0) == 0 ? GraphFormat::kMtx : GraphFormat::kEdgeList;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "auto") return GraphFormat::kAuto;
  if (name == "smat") return GraphFormat::kSmat;
  if (name == "mtx") return GraphFormat::kMtx;
  if (name == "edgelist") return GraphFormat::kEdgeList;
  throw std::invalid_argument("unknown graph format '" + name + "'");
}

CscGraph read_graph(std::istream& in, const ReadOptions& opts) {
  GraphFormat fmt = opts.format == GraphFormat::kAuto ? sniff(in) : opts.format;
  LineReader r{in, {}, 0};
  CscGraph g;
  switch (fmt) {
    case GraphFormat::kSmat:
      g = read_smat(r, opts.undirected);
      break;
    case GraphFormat::kMtx:
      g = read_mtx(r);
      break;
    default:
      g = read_edgelist(r, opts.undirected);
      break;
  }
  if (opts.require_out_links) check_out_links(g);
  return g;
}

CscGraph read_graph(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  ReadOptions o = opts;
  if (o.format == GraphFormat::kAuto) {
    const std::string ext = lower(std::filesystem::path(path).extension().string());
    if (ext == ".smat") o.format = GraphFormat::kSmat;
    else if (ext == ".mtx") o.format = GraphFormat::kMtx;
  }
  return read_graph(in, o);
}

void write_smat(const CscGraph& g, std::ostream& out) {
  const std::size_t n = g.num_nodes();
  out << n << ' ' << n << ' ' << g.nnz() << '\n';
  const auto cp = g.col_ptr();
  const auto ri = g.row_idx();
  const auto va = g.values();
  for (std::size_t j = 0; j < n; ++j) {
    for (offset_t k = cp[j]; k < cp[j + 1]; ++k) {
      out << j << ' ' << ri[k] << ' ' << format_double(va[k]) << '\n';
    }
  }
}

void write_smat(const CscGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_smat(g, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_solution(const SparseVector& x, const SolutionMeta& meta, std::ostream& out) {
  out << "# expgraph solution\n";
  out << "# graph: " << meta.graph << '\n';
  out << "# algorithm: " << meta.algorithm << '\n';
  out << "# param: " << format_double(meta.param) << '\n';
  out << "# degree: " << meta.degree << '\n';
  out << "# seed: " << meta.seed << '\n';
  for (const auto& e : x.sorted_by_value()) {
    if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite solution value");
    out << e.node << ' ' << format_double(e.value) << '\n';
  }
}

void write_solution(const SparseVector& x, const SolutionMeta& meta, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_solution(x, meta, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Solution read_solution(std::istream& in) {
  Solution sol;
  LineReader r{in, {}, 0};
  std::unordered_set<node_t> seen;
  while (r.next()) {
    if (blank(r.line)) continue;
    if (r.line.front() == '#') {
      const auto colon = r.line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = r.line.substr(1, colon - 1);
      std::string value = r.line.substr(colon + 1);
      auto trim = [](std::string& s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
      };
      trim(key);
      trim(value);
      if (key == "graph") sol.meta.graph = value;
      else if (key == "algorithm") sol.meta.algorithm = value;
      else if (key == "param") sol.meta.param = parse_finite(value, r.number);
      else if (key == "degree") sol.meta.degree = static_cast<int>(parse_int(value, r.number));
      else if (key == "seed") sol.meta.seed = static_cast<node_t>(parse_int(value, r.number));
      continue;
    }
    const auto tok = split_ws(r.line);
    if (tok.size() != 2) throw ParseError("solution row must be 'node value'", r.number);
    const std::int64_t id = parse_int(tok[0], r.number);
    if (id < 0 || id > 0xffffffffll) throw ParseError("node id out of range", r.number);
    const auto node = static_cast<node_t>(id);
    if (!seen.insert(node).second) throw ParseError("duplicate node " + std::to_string(node), r.number);
    sol.rows.push_back({node, parse_finite(tok[1], r.number)});
  }
  return sol;
}

Solution read_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
  return read_solution(in);
}

}  // namespace expgraph

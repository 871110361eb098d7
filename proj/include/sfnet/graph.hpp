#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sfnet {

using Vertex = std::int32_t;

/// Distance marker for vertices outside the source's component.
inline constexpr std::int32_t kUnreachable = -1;

/// Raised when a file cannot be opened, read, or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple undirected graph over dense 0-based vertex ids. Neighbor lists are
// kept sorted ascending, so iteration order -- and everything computed from
// it -- is fully deterministic. Self-loops and parallel edges are rejected at
// insertion and can never be represented.
class Graph {
 public:
  explicit Graph(Vertex vertex_count) : adj_(checked_count(vertex_count)) {}

  Vertex vertex_count() const { return static_cast<Vertex>(adj_.size()); }
  std::int64_t edge_count() const { return edges_; }

  Vertex degree(Vertex v) const { return static_cast<Vertex>(adj_[checked(v)].size()); }

  /// Sorted ascending neighbor list.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[checked(v)]; }

  bool has_edge(Vertex u, Vertex v) const {
    checked(v);
    const auto& list = adj_[checked(u)];
    return std::binary_search(list.begin(), list.end(), v);
  }

  /// Inserts the undirected edge u-v. Returns false without mutating for a
  /// self-loop or an edge that is already present.
  bool add_edge(Vertex u, Vertex v) {
    checked(u);
    checked(v);
    if (u == v) return false;
    auto& lu = adj_[u];
    const auto pos = std::lower_bound(lu.begin(), lu.end(), v);
    if (pos != lu.end() && *pos == v) return false;
    lu.insert(pos, v);
    auto& lv = adj_[v];
    lv.insert(std::lower_bound(lv.begin(), lv.end(), u), u);
    ++edges_;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  static Vertex checked_count(Vertex n) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    return n;
  }
  Vertex checked(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
      throw std::invalid_argument("vertex index out of range");
    return v;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::int64_t edges_ = 0;
};

/// Hop distances from source; kUnreachable marks other components.
inline std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source) {
  const Vertex n = g.vertex_count();
  if (source < 0 || source >= n) throw std::invalid_argument("bfs source out of range");
  std::vector<std::int32_t> dist(static_cast<std::size_t>(n), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(static_cast<std::size_t>(n));
  dist[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (const Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

struct ComponentDecomposition {
  std::vector<std::int32_t> component_id;     // per vertex; ids dense in discovery order
  std::vector<std::int64_t> component_sizes;  // indexed by component id
  std::int64_t count = 0;
  double giant_size_pct = 0.0;  // largest component as % of n
};

inline ComponentDecomposition connected_components(const Graph& g) {
  const Vertex n = g.vertex_count();
  ComponentDecomposition out;
  out.component_id.assign(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (out.component_id[static_cast<std::size_t>(s)] != -1) continue;
    const auto id = static_cast<std::int32_t>(out.component_sizes.size());
    std::int64_t size = 0;
    queue.clear();
    queue.push_back(s);
    out.component_id[static_cast<std::size_t>(s)] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      ++size;
      for (const Vertex w : g.neighbors(queue[head])) {
        if (out.component_id[static_cast<std::size_t>(w)] == -1) {
          out.component_id[static_cast<std::size_t>(w)] = id;
          queue.push_back(w);
        }
      }
    }
    out.component_sizes.push_back(size);
  }
  out.count = static_cast<std::int64_t>(out.component_sizes.size());
  const std::int64_t giant =
      *std::max_element(out.component_sizes.begin(), out.component_sizes.end());
  out.giant_size_pct = 100.0 * static_cast<double>(giant) / static_cast<double>(n);
  return out;
}

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

/// Canonical edge list: u < v within each pair, pairs in lexicographic order.
inline EdgeList to_edge_list(const Graph& g) {
  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()));
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (const Vertex v : g.neighbors(u))
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

inline Graph from_edge_list(Vertex vertex_count, const EdgeList& edges) {
  Graph g(vertex_count);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw std::invalid_argument("edge " + std::to_string(i) + ": vertex index out of range");
    if (u == v) throw std::invalid_argument("edge " + std::to_string(i) + ": self-loop");
    if (!g.add_edge(u, v)) throw std::invalid_argument("edge " + std::to_string(i) + ": duplicate edge");
  }
  return g;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_i32(std::string_view s, std::int32_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* const last = s.data() + s.size();
  const auto res = std::from_chars(s.data(), last, out);
  return res.ec == std::errc() && res.ptr == last;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const char* const last = s.data() + s.size();
  const auto res = std::from_chars(s.data(), last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace detail

/// Writes the canonical text format: "# n=<count>" then one "u,v" line per edge.
inline void write_edge_list(const Graph& g, std::ostream& os) {
  os << "# n=" << g.vertex_count() << "\n";
  for (const auto& [u, v] : to_edge_list(g)) os << u << "," << v << "\n";
}

/// Parses the canonical format; error messages cite 1-based line numbers.
inline Graph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) -> void {
    throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
  };

  ++line_no;
  if (!std::getline(is, line)) fail("missing \"# n=<count>\" header");
  std::string_view header = detail::trim(line);
  if (!header.starts_with("# n=")) fail("expected \"# n=<count>\" header");
  header.remove_prefix(4);
  std::int32_t n = 0;
  if (!detail::parse_i32(header, n)) fail("malformed vertex count");
  if (n < 1) fail("vertex count must be positive");

  Graph g(n);
  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view sv = detail::trim(line);
    if (sv.empty()) fail("blank line");
    const auto comma = sv.find(',');
    if (comma == std::string_view::npos) fail("expected \"u,v\"");
    std::int32_t u = 0;
    std::int32_t v = 0;
    if (!detail::parse_i32(sv.substr(0, comma), u) || !detail::parse_i32(sv.substr(comma + 1), v))
      fail("malformed vertex index");
    if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex index out of range");
    if (u == v) fail("self-loop");
    if (!g.add_edge(u, v)) fail("duplicate edge");
  }
  return g;
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return read_edge_list(in);
}

inline void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  write_edge_list(g, out);
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace sfnet

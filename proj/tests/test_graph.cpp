#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "sfnet/graph.hpp"
#include "sfnet/random.hpp"

using sfnet::Graph;
using sfnet::kUnreachable;
using sfnet::Vertex;

namespace {

Graph path_graph(Vertex n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph star_graph(Vertex n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

}  // namespace

TEST_CASE("a new graph has vertices but no edges") {
  const Graph g(3);
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.edge_count() == 0);
  for (Vertex v = 0; v < 3; ++v) REQUIRE(g.degree(v) == 0);
  REQUIRE(Graph(1).vertex_count() == 1);
  REQUIRE(Graph(1000).edge_count() == 0);
  REQUIRE_THROWS_AS(Graph(0), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(-5), std::invalid_argument);
}

TEST_CASE("add_edge inserts once, rejects self-loops and duplicates") {
  Graph g(4);
  REQUIRE(g.add_edge(0, 1));
  REQUIRE_FALSE(g.add_edge(0, 1));
  REQUIRE_FALSE(g.add_edge(1, 0));  // same undirected edge
  REQUIRE_FALSE(g.add_edge(2, 2));  // self-loop leaves the graph unchanged
  REQUIRE(g.edge_count() == 1);
  REQUIRE(g.has_edge(1, 0));
  REQUIRE_FALSE(g.has_edge(2, 3));
  REQUIRE_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(g.add_edge(-1, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(g.degree(4), std::invalid_argument);
  REQUIRE_THROWS_AS(g.neighbors(-1), std::invalid_argument);
}

TEST_CASE("neighbor lists stay sorted ascending") {
  Graph g(5);
  g.add_edge(2, 4);
  g.add_edge(2, 0);
  g.add_edge(2, 3);
  g.add_edge(2, 1);
  REQUIRE(g.neighbors(2) == std::vector<Vertex>{0, 1, 3, 4});
}

TEST_CASE("bfs distances on fixtures") {
  const Graph p4 = path_graph(4);
  REQUIRE(sfnet::bfs_distances(p4, 0) == std::vector<std::int32_t>{0, 1, 2, 3});
  REQUIRE(sfnet::bfs_distances(p4, 2) == std::vector<std::int32_t>{2, 1, 0, 1});

  const Graph s5 = star_graph(5);
  const auto from_leaf = sfnet::bfs_distances(s5, 1);
  REQUIRE(from_leaf == std::vector<std::int32_t>{1, 0, 2, 2, 2});

  Graph split(4);  // edge 0-1, vertices 2,3 isolated
  split.add_edge(0, 1);
  const auto d = sfnet::bfs_distances(split, 0);
  REQUIRE(d[1] == 1);
  REQUIRE(d[2] == kUnreachable);
  REQUIRE(d[3] == kUnreachable);

  REQUIRE_THROWS_AS(sfnet::bfs_distances(p4, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(sfnet::bfs_distances(p4, -1), std::invalid_argument);
}

TEST_CASE("bfs agrees with the exhaustive simple-path minimum on small graphs") {
  sfnet::RandomSource rng(2026);
  for (int iter = 0; iter < 300; ++iter) {
    const auto n = static_cast<Vertex>(2 + rng.uniform_below(7));
    const Graph g = oracle::random_graph(n, rng.uniform01(), rng);
    for (Vertex s = 0; s < n; ++s) {
      const auto dist = sfnet::bfs_distances(g, s);
      for (Vertex t = 0; t < n; ++t) {
        const int expected = oracle::min_simple_path_length(g, s, t);
        if (expected >= oracle::kInf)
          REQUIRE(dist[static_cast<std::size_t>(t)] == kUnreachable);
        else
          REQUIRE(dist[static_cast<std::size_t>(t)] == expected);
      }
    }
  }
}

TEST_CASE("bfs satisfies the triangle inequality") {
  sfnet::RandomSource rng(31337);
  for (int iter = 0; iter < 20; ++iter) {
    const auto n = static_cast<Vertex>(5 + rng.uniform_below(25));
    const Graph g = oracle::random_graph(n, 0.15, rng);
    std::vector<std::vector<std::int32_t>> dist;
    for (Vertex s = 0; s < n; ++s) dist.push_back(sfnet::bfs_distances(g, s));
    for (Vertex s = 0; s < n; ++s)
      for (Vertex u = 0; u < n; ++u)
        for (Vertex t = 0; t < n; ++t) {
          const auto su = dist[s][static_cast<std::size_t>(u)];
          const auto ut = dist[u][static_cast<std::size_t>(t)];
          const auto st = dist[s][static_cast<std::size_t>(t)];
          if (su != kUnreachable && ut != kUnreachable) {
            REQUIRE(st != kUnreachable);
            REQUIRE(st <= su + ut);
          }
        }
  }
}

TEST_CASE("connected components on fixtures") {
  const auto p4 = sfnet::connected_components(path_graph(4));
  REQUIRE(p4.count == 1);
  REQUIRE(p4.giant_size_pct == 100.0);
  REQUIRE(p4.component_sizes == std::vector<std::int64_t>{4});

  Graph two_pairs(4);
  two_pairs.add_edge(0, 1);
  two_pairs.add_edge(2, 3);
  const auto cc = sfnet::connected_components(two_pairs);
  REQUIRE(cc.count == 2);
  REQUIRE(cc.giant_size_pct == 50.0);
  REQUIRE(cc.component_id[0] == cc.component_id[1]);
  REQUIRE(cc.component_id[2] == cc.component_id[3]);
  REQUIRE(cc.component_id[0] != cc.component_id[2]);

  const auto lonely = sfnet::connected_components(Graph(5));
  REQUIRE(lonely.count == 5);
  REQUIRE(lonely.giant_size_pct == 20.0);
}

TEST_CASE("component labels partition the graph consistently with bfs") {
  sfnet::RandomSource rng(404);
  for (int iter = 0; iter < 40; ++iter) {
    const auto n = static_cast<Vertex>(2 + rng.uniform_below(30));
    const Graph g = oracle::random_graph(n, rng.uniform01() * 0.2, rng);
    const auto cc = sfnet::connected_components(g);
    std::int64_t total = 0;
    for (const auto size : cc.component_sizes) total += size;
    REQUIRE(total == n);
    REQUIRE(cc.count == static_cast<std::int64_t>(cc.component_sizes.size()));
    for (Vertex s = 0; s < n; ++s) {
      const auto dist = sfnet::bfs_distances(g, s);
      for (Vertex t = 0; t < n; ++t) {
        const bool reachable = dist[static_cast<std::size_t>(t)] != kUnreachable;
        const bool same_component = cc.component_id[static_cast<std::size_t>(s)] ==
                                    cc.component_id[static_cast<std::size_t>(t)];
        REQUIRE(reachable == same_component);
      }
    }
  }
}

TEST_CASE("edge list is canonical and round-trips") {
  Graph k3(3);
  k3.add_edge(2, 1);
  k3.add_edge(1, 0);
  k3.add_edge(0, 2);
  const auto edges = sfnet::to_edge_list(k3);
  REQUIRE(edges == sfnet::EdgeList{{0, 1}, {0, 2}, {1, 2}});
  REQUIRE(sfnet::from_edge_list(3, edges) == k3);

  sfnet::RandomSource rng(777);
  for (int iter = 0; iter < 30; ++iter) {
    const auto n = static_cast<Vertex>(1 + rng.uniform_below(25));
    const Graph g = oracle::random_graph(n, rng.uniform01(), rng);
    REQUIRE(sfnet::from_edge_list(n, sfnet::to_edge_list(g)) == g);
    std::stringstream buffer;
    sfnet::write_edge_list(g, buffer);
    REQUIRE(sfnet::read_edge_list(buffer) == g);
  }
}

TEST_CASE("from_edge_list rejects bad pairs") {
  REQUIRE_THROWS_AS(sfnet::from_edge_list(3, {{0, 3}}), std::invalid_argument);
  REQUIRE_THROWS_AS(sfnet::from_edge_list(3, {{1, 1}}), std::invalid_argument);
  REQUIRE_THROWS_AS(sfnet::from_edge_list(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("edge list text format matches the documented layout") {
  Graph g(3);
  g.add_edge(0, 2);
  g.add_edge(0, 1);
  std::ostringstream os;
  sfnet::write_edge_list(g, os);
  REQUIRE(os.str() == "# n=3\n0,1\n0,2\n");
}

TEST_CASE("edge list parse errors cite the offending line") {
  const auto expect_error = [](const std::string& text, const std::string& fragment) {
    std::istringstream is(text);
    try {
      sfnet::read_edge_list(is);
      FAIL("expected a parse error for: " << text);
    } catch (const std::invalid_argument& e) {
      REQUIRE_THAT(e.what(), Catch::Matchers::ContainsSubstring(fragment));
    }
  };
  expect_error("", "line 1");
  expect_error("nonsense\n", "header");
  expect_error("# n=zero\n", "malformed vertex count");
  expect_error("# n=0\n", "positive");
  expect_error("# n=3\n2,2\n", "line 2: self-loop");
  expect_error("# n=3\n0,1\n0,1\n", "line 3: duplicate edge");
  expect_error("# n=3\n0;1\n", "expected \"u,v\"");
  expect_error("# n=3\na,b\n", "malformed vertex index");
  expect_error("# n=3\n0,7\n", "out of range");
  expect_error("# n=3\n\n", "blank line");
}

TEST_CASE("file io reports missing paths as io_error") {
  REQUIRE_THROWS_AS(sfnet::read_edge_list_file("/nonexistent/sfnet-missing.edges"), sfnet::io_error);
  const Graph g(2);
  REQUIRE_THROWS_AS(sfnet::write_edge_list_file(g, "/nonexistent/dir/out.edges"), sfnet::io_error);
}

TEST_CASE("random edit sequences keep the structure well formed") {
  sfnet::RandomSource rng(9001);
  for (int iter = 0; iter < 20; ++iter) {
    const auto n = static_cast<Vertex>(2 + rng.uniform_below(20));
    Graph g(n);
    std::set<std::pair<Vertex, Vertex>> reference;
    for (int step = 0; step < 200; ++step) {
      const auto u = static_cast<Vertex>(rng.uniform_below(static_cast<std::uint64_t>(n)));
      const auto v = static_cast<Vertex>(rng.uniform_below(static_cast<std::uint64_t>(n)));
      const bool inserted = g.add_edge(u, v);
      const auto key = std::minmax(u, v);
      REQUIRE(inserted == (u != v && reference.find(key) == reference.end()));
      if (inserted) reference.insert(key);
    }
    REQUIRE(g.edge_count() == static_cast<std::int64_t>(reference.size()));
    REQUIRE(oracle::well_formed(g));
  }
}

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfnet/degree.hpp"
#include "sfnet/graph.hpp"
#include "sfnet/random.hpp"

namespace sfnet {

// Per-run generation diagnostics. For the sequence-conditioned models the
// stub ledger balances exactly:
//   sum(target) - sum(realized) == discarded_stubs + 2 * rejected_pairs
// and realized[i] <= target[i] for every vertex.
struct GenerationReport {
  DegreeSequence target;
  DegreeSequence realized;
  std::int64_t discarded_stubs = 0;  // stubs dropped with no partner available
  std::int64_t rejected_pairs = 0;   // drawn pairs consumed as self-loop/duplicate
};

struct GeneratedNetwork {
  Graph graph;
  GenerationReport report;
};

// Optional step record for the hub-first models (A and B). Tests replay it
// against an independent rule checker; generation never reads it back.
struct GenerationTrace {
  std::vector<Vertex> order;  // model B only: the fixed processing order
  struct Round {
    Vertex vertex = -1;
    std::int32_t open_links = 0;
    std::vector<Vertex> partners;
  };
  std::vector<Round> rounds;
};

enum class ModelBOrder {
  DescendingDegree,  // descending target degree, ties in seeded-shuffle order
  Uniform,           // fully random order (sensitivity variant)
};

namespace detail {

// Multiset of open connections keyed by vertex. A Fenwick tree over the
// per-vertex stub counts supports O(log n) uniform draws from the pool,
// optionally excluding one vertex's own stubs.
class StubPool {
 public:
  explicit StubPool(const DegreeSequence& counts)
      : counts_(counts), tree_(counts.size() + 1, 0) {
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      if (counts_[v] < 0)
        throw std::invalid_argument("degree sequence entries must be non-negative");
      if (counts_[v] > 0) {
        add(static_cast<Vertex>(v), counts_[v]);
        total_ += counts_[v];
        ++nonzero_;
      }
    }
  }

  std::int64_t total() const { return total_; }
  std::int32_t nonzero_vertices() const { return nonzero_; }
  std::int32_t count(Vertex v) const { return counts_[static_cast<std::size_t>(v)]; }

  void remove_one(Vertex v) {
    add(v, -1);
    --counts_[static_cast<std::size_t>(v)];
    --total_;
    if (counts_[static_cast<std::size_t>(v)] == 0) --nonzero_;
  }

  void remove_all(Vertex v) {
    const std::int32_t c = counts_[static_cast<std::size_t>(v)];
    if (c == 0) return;
    add(v, -c);
    counts_[static_cast<std::size_t>(v)] = 0;
    total_ -= c;
    --nonzero_;
  }

  /// Uniform draw over all open stubs; the drawn stub is removed.
  Vertex draw_and_remove(RandomSource& rng) {
    const auto rank =
        static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(total_)));
    const Vertex v = find_by_rank(rank);
    remove_one(v);
    return v;
  }

  /// Uniform draw over every stub NOT owned by `excluded`; the stub is removed.
  Vertex draw_and_remove_excluding(Vertex excluded, RandomSource& rng) {
    const std::int64_t own = counts_[static_cast<std::size_t>(excluded)];
    auto rank =
        static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(total_ - own)));
    if (rank >= prefix_before(excluded)) rank += own;
    const Vertex v = find_by_rank(rank);
    remove_one(v);
    return v;
  }

 private:
  void add(Vertex v, std::int64_t delta) {
    for (std::size_t i = static_cast<std::size_t>(v) + 1; i < tree_.size(); i += i & (~i + 1))
      tree_[i] += delta;
  }

  // Stubs owned by vertices strictly below v.
  std::int64_t prefix_before(Vertex v) const {
    std::int64_t sum = 0;
    for (auto i = static_cast<std::size_t>(v); i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  // Smallest vertex whose cumulative stub count exceeds rank (0-based).
  Vertex find_by_rank(std::int64_t rank) const {
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(tree_.size() - 1); step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= rank) {
        pos = next;
        rank -= tree_[next];
      }
    }
    return static_cast<Vertex>(pos);
  }

  DegreeSequence counts_;
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
  std::int32_t nonzero_ = 0;
};

}  // namespace detail

/// Preferential-attachment growth. Starts from a single vertex and adds n-1
/// more; each new vertex links to min(m, existing) distinct earlier vertices
/// drawn with probability proportional to degree+1 (the +1 keeps the empty
/// start well defined). Attachment weights are frozen while one vertex places
/// its edges. The realized degrees double as the target sequence.
inline GeneratedNetwork generate_ba(Vertex n, std::int32_t m, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("generate_ba: n must be positive");
  if (m < 1 || m >= n) throw std::invalid_argument("generate_ba: need 1 <= m < n");
  Graph g(n);
  // attachment_bag lists each existing vertex degree+1 times.
  std::vector<Vertex> attachment_bag;
  attachment_bag.reserve(static_cast<std::size_t>(n) * (2 * static_cast<std::size_t>(m) + 1));
  attachment_bag.push_back(0);
  std::vector<Vertex> chosen;
  for (Vertex v = 1; v < n; ++v) {
    const auto want = static_cast<std::int32_t>(std::min<std::int64_t>(m, v));
    chosen.clear();
    if (want == v) {
      for (Vertex t = 0; t < v; ++t) chosen.push_back(t);  // attach to all available
    } else {
      while (static_cast<std::int32_t>(chosen.size()) < want) {
        const Vertex t = attachment_bag[rng.uniform_below(attachment_bag.size())];
        if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) continue;
        chosen.push_back(t);
      }
    }
    for (const Vertex t : chosen) g.add_edge(v, t);
    for (const Vertex t : chosen) attachment_bag.push_back(t);
    for (std::int32_t i = 0; i <= want; ++i) attachment_bag.push_back(v);
  }
  GenerationReport report;
  report.target = degrees_of(g);
  report.realized = report.target;
  return {std::move(g), std::move(report)};
}

/// Stub pairing conditioned on a target degree sequence. Pairs of open stubs
/// are drawn uniformly; a pair forming a self-loop or an existing edge is
/// consumed and counted as rejected. Generation stops when fewer than two
/// stubs remain or all remaining stubs sit on one vertex; leftovers are
/// discarded.
inline GeneratedNetwork generate_mr(const DegreeSequence& targets, RandomSource& rng) {
  if (targets.empty()) throw std::invalid_argument("generate_mr: empty degree sequence");
  Graph g(static_cast<Vertex>(targets.size()));
  detail::StubPool pool(targets);
  GenerationReport report;
  report.target = targets;
  while (pool.total() >= 2 && pool.nonzero_vertices() >= 2) {
    const Vertex u = pool.draw_and_remove(rng);
    const Vertex v = pool.draw_and_remove(rng);
    if (u == v || !g.add_edge(u, v)) ++report.rejected_pairs;
  }
  report.discarded_stubs = pool.total();
  report.realized = degrees_of(g);
  return {std::move(g), std::move(report)};
}

/// Layered stub pairing: grow from the highest-degree vertex, pairing every
/// open connection on the current layer with a uniform draw from the rest of
/// the pool (a vertex never pairs with its own stubs, so self-loops cannot
/// occur; duplicate draws are consumed like in generate_mr). When a layer
/// closes with stubs still unreached, restart from the unreached vertex with
/// the most remaining stubs (smallest index on ties).
inline GeneratedNetwork generate_kalisky(const DegreeSequence& targets, RandomSource& rng) {
  if (targets.empty()) throw std::invalid_argument("generate_kalisky: empty degree sequence");
  const auto n = static_cast<Vertex>(targets.size());
  Graph g(n);
  detail::StubPool pool(targets);
  GenerationReport report;
  report.target = targets;

  std::vector<char> reached(targets.size(), 0);
  const auto best_unreached = [&]() -> Vertex {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!reached[static_cast<std::size_t>(v)] && pool.count(v) > 0 &&
          (best == -1 || pool.count(v) > pool.count(best)))
        best = v;
    return best;
  };

  std::vector<Vertex> frontier;
  std::vector<Vertex> next_layer;
  if (const Vertex root = best_unreached(); root != -1) {
    reached[static_cast<std::size_t>(root)] = 1;
    frontier.push_back(root);
  }
  while (!frontier.empty()) {
    next_layer.clear();
    for (const Vertex v : frontier) {
      while (pool.count(v) > 0) {
        if (pool.count(v) == pool.total()) {
          // every remaining stub is v's own: nothing left to pair with
          report.discarded_stubs += pool.count(v);
          pool.remove_all(v);
          break;
        }
        pool.remove_one(v);
        const Vertex w = pool.draw_and_remove_excluding(v, rng);
        if (!g.add_edge(v, w)) {
          ++report.rejected_pairs;
          continue;
        }
        if (!reached[static_cast<std::size_t>(w)]) {
          reached[static_cast<std::size_t>(w)] = 1;
          next_layer.push_back(w);
        }
      }
    }
    frontier.swap(next_layer);
    if (frontier.empty()) {
      if (const Vertex restart = best_unreached(); restart != -1) {
        reached[static_cast<std::size_t>(restart)] = 1;
        frontier.push_back(restart);
      }
    }
  }
  report.realized = degrees_of(g);
  return {std::move(g), std::move(report)};
}

/// Hub-first assembly with random partners: repeatedly take a vertex with the
/// most open links (uniform among ties), wire it to that many distinct
/// eligible vertices drawn uniformly without replacement, and retire it.
/// Eligible partners have open links left and no existing edge to the hub.
/// Shortfalls are discarded stubs.
inline GeneratedNetwork generate_model_a(const DegreeSequence& targets, RandomSource& rng,
                                         GenerationTrace* trace = nullptr) {
  if (targets.empty()) throw std::invalid_argument("generate_model_a: empty degree sequence");
  const auto n = static_cast<Vertex>(targets.size());
  Graph g(n);
  GenerationReport report;
  report.target = targets;
  for (const auto k : targets)
    if (k < 0) throw std::invalid_argument("generate_model_a: negative degree");
  DegreeSequence remaining = targets;
  std::vector<Vertex> tied;
  std::vector<Vertex> eligible;
  for (;;) {
    std::int32_t h = 0;
    for (Vertex v = 0; v < n; ++v) h = std::max(h, remaining[static_cast<std::size_t>(v)]);
    if (h == 0) break;
    tied.clear();
    for (Vertex v = 0; v < n; ++v)
      if (remaining[static_cast<std::size_t>(v)] == h) tied.push_back(v);
    const Vertex v = tied[rng.uniform_below(tied.size())];
    eligible.clear();
    for (Vertex u = 0; u < n; ++u)
      if (u != v && remaining[static_cast<std::size_t>(u)] >= 1 && !g.has_edge(v, u))
        eligible.push_back(u);
    const auto connect = std::min<std::size_t>(static_cast<std::size_t>(h), eligible.size());
    // partial Fisher-Yates: the first `connect` slots become the uniform sample
    for (std::size_t i = 0; i < connect; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(eligible.size() - i));
      std::swap(eligible[i], eligible[j]);
      g.add_edge(v, eligible[i]);
      --remaining[static_cast<std::size_t>(eligible[i])];
    }
    report.discarded_stubs += h - static_cast<std::int32_t>(connect);
    remaining[static_cast<std::size_t>(v)] = 0;
    if (trace) {
      auto& round = trace->rounds.emplace_back();
      round.vertex = v;
      round.open_links = h;
      round.partners.assign(eligible.begin(),
                            eligible.begin() + static_cast<std::ptrdiff_t>(connect));
    }
  }
  report.realized = degrees_of(g);
  return {std::move(g), std::move(report)};
}

/// Hub-first assembly along one fixed vertex order (descending target degree
/// by default, ties in seeded-shuffle order). Each round takes the earliest
/// vertex holding the most open links and wires it to the FIRST eligible
/// vertices along the order, so early hubs wire to each other before the tail
/// is touched. Shortfalls are discarded stubs.
inline GeneratedNetwork generate_model_b(const DegreeSequence& targets, RandomSource& rng,
                                         ModelBOrder order_rule = ModelBOrder::DescendingDegree,
                                         GenerationTrace* trace = nullptr) {
  if (targets.empty()) throw std::invalid_argument("generate_model_b: empty degree sequence");
  const auto n = static_cast<Vertex>(targets.size());
  Graph g(n);
  GenerationReport report;
  report.target = targets;
  for (const auto k : targets)
    if (k < 0) throw std::invalid_argument("generate_model_b: negative degree");

  std::vector<Vertex> order(targets.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);  // tie order / uniform order
  if (order_rule == ModelBOrder::DescendingDegree)
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return targets[static_cast<std::size_t>(a)] > targets[static_cast<std::size_t>(b)];
    });
  if (trace) trace->order = order;

  DegreeSequence remaining = targets;
  std::vector<Vertex> partners;
  for (;;) {
    Vertex v = -1;
    std::int32_t h = 0;
    for (const Vertex cand : order)
      if (remaining[static_cast<std::size_t>(cand)] > h) {
        h = remaining[static_cast<std::size_t>(cand)];
        v = cand;
      }
    if (v == -1) break;
    partners.clear();
    for (const Vertex u : order) {
      if (static_cast<std::int32_t>(partners.size()) == h) break;
      if (u == v || remaining[static_cast<std::size_t>(u)] == 0 || !g.add_edge(v, u)) continue;
      --remaining[static_cast<std::size_t>(u)];
      partners.push_back(u);
    }
    report.discarded_stubs += h - static_cast<std::int32_t>(partners.size());
    remaining[static_cast<std::size_t>(v)] = 0;
    if (trace) {
      auto& round = trace->rounds.emplace_back();
      round.vertex = v;
      round.open_links = h;
      round.partners = partners;
    }
  }
  report.realized = degrees_of(g);
  return {std::move(g), std::move(report)};
}

}  // namespace sfnet

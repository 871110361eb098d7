#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sfnet/graph.hpp"

namespace sfnet {

// Optional metric values model UNDEFINED results (isolated vertices, regular
// graphs, tiny n). They serialize as NA and are excluded from summaries.

struct BetweennessVector {
  std::vector<double> raw;       // unordered source-target pairs, endpoints excluded
  std::vector<double> relative;  // raw / ((N-1)(N-2)/2); all-zero when N < 3
};

namespace detail {

// Brandes dependency accumulation over every source. When inv_distance_sum is
// non-null it also accumulates sum over ordered pairs of 1/d(s,t) from the
// same searches. Deterministic: sources ascend, neighbor lists are sorted,
// and the efficiency terms add in ascending target order per source, so the
// fused and standalone efficiency paths produce bit-identical doubles.
inline void brandes_sweep(const Graph& g, std::vector<double>& raw, double* inv_distance_sum) {
  const Vertex n = g.vertex_count();
  const auto size = static_cast<std::size_t>(n);
  raw.assign(size, 0.0);
  std::vector<std::int32_t> dist(size, -1);
  std::vector<double> sigma(size, 0.0);
  std::vector<double> delta(size, 0.0);
  std::vector<std::vector<Vertex>> preds(size);
  std::vector<Vertex> visit;
  visit.reserve(size);
  double inv_total = 0.0;
  for (Vertex s = 0; s < n; ++s) {
    visit.clear();
    dist[static_cast<std::size_t>(s)] = 0;
    sigma[static_cast<std::size_t>(s)] = 1.0;
    visit.push_back(s);
    for (std::size_t head = 0; head < visit.size(); ++head) {
      const Vertex u = visit[head];
      for (const Vertex w : g.neighbors(u)) {
        const auto wi = static_cast<std::size_t>(w);
        if (dist[wi] < 0) {
          dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
          visit.push_back(w);
        }
        if (dist[wi] == dist[static_cast<std::size_t>(u)] + 1) {
          sigma[wi] += sigma[static_cast<std::size_t>(u)];
          preds[wi].push_back(u);
        }
      }
    }
    if (inv_distance_sum) {
      double source_sum = 0.0;
      for (Vertex t = 0; t < n; ++t)
        if (dist[static_cast<std::size_t>(t)] > 0)
          source_sum += 1.0 / static_cast<double>(dist[static_cast<std::size_t>(t)]);
      inv_total += source_sum;
    }
    for (std::size_t i = visit.size(); i-- > 1;) {  // reverse BFS order, skip s itself
      const auto wi = static_cast<std::size_t>(visit[i]);
      for (const Vertex p : preds[wi]) {
        const auto pi = static_cast<std::size_t>(p);
        delta[pi] += sigma[pi] / sigma[wi] * (1.0 + delta[wi]);
      }
      raw[wi] += delta[wi];
    }
    for (const Vertex w : visit) {  // targeted reset; only visited entries are dirty
      const auto wi = static_cast<std::size_t>(w);
      dist[wi] = -1;
      sigma[wi] = 0.0;
      delta[wi] = 0.0;
      preds[wi].clear();
    }
  }
  for (double& b : raw) b /= 2.0;  // each unordered pair was counted from both ends
  if (inv_distance_sum) *inv_distance_sum = inv_total;
}

}  // namespace detail

inline BetweennessVector betweenness(const Graph& g) {
  BetweennessVector out;
  detail::brandes_sweep(g, out.raw, nullptr);
  const auto n = static_cast<double>(g.vertex_count());
  const double norm = (n - 1.0) * (n - 2.0) / 2.0;
  out.relative.assign(out.raw.size(), 0.0);
  if (norm > 0.0)
    for (std::size_t i = 0; i < out.raw.size(); ++i) out.relative[i] = out.raw[i] / norm;
  return out;
}

/// Mean degree of i's neighbors; UNDEFINED for isolated vertices.
inline std::optional<double> knn_vertex(const Graph& g, Vertex i) {
  const auto& nb = g.neighbors(i);
  if (nb.empty()) return std::nullopt;
  double sum = 0.0;
  for (const Vertex j : nb) sum += static_cast<double>(g.degree(j));
  return sum / static_cast<double>(nb.size());
}

/// Mean of knn_vertex over the vertices of each degree k >= 1, keyed by k.
inline std::map<std::int32_t, double> knn_by_degree(const Graph& g) {
  std::map<std::int32_t, std::pair<double, std::int64_t>> acc;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::int32_t k = g.degree(v);
    if (k < 1) continue;
    auto& slot = acc[k];
    slot.first += *knn_vertex(g, v);
    slot.second += 1;
  }
  std::map<std::int32_t, double> out;
  for (const auto& [k, slot] : acc) out[k] = slot.first / static_cast<double>(slot.second);
  return out;
}

/// Fraction of the k(k-1)/2 neighbor pairs that are themselves linked;
/// defined as 0 for vertices of degree < 2.
inline double clustering_local(const Graph& g, Vertex i) {
  const auto& nb = g.neighbors(i);
  const auto k = static_cast<std::int64_t>(nb.size());
  if (k < 2) return 0.0;
  std::int64_t linked_pairs = 0;
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b)
      if (g.has_edge(nb[a], nb[b])) ++linked_pairs;
  return 2.0 * static_cast<double>(linked_pairs) /
         (static_cast<double>(k) * static_cast<double>(k - 1));
}

/// Mean of clustering_local over all vertices.
inline double clustering_global(const Graph& g) {
  double sum = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) sum += clustering_local(g, v);
  return sum / static_cast<double>(g.vertex_count());
}

/// Mean gap to the most central point, on relative betweenness; 1 for a star
/// center, 0 for vertex-transitive graphs. UNDEFINED for n < 3.
inline std::optional<double> central_point_dominance(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n < 3) return std::nullopt;
  const BetweennessVector b = betweenness(g);
  double b_max = 0.0;
  for (const double r : b.relative) b_max = std::max(b_max, r);
  double sum = 0.0;
  for (const double r : b.relative) sum += b_max - r;
  return sum / static_cast<double>(n - 1);
}

/// Mean of 1/d(i,j) over ordered pairs; unreachable pairs contribute 0.
/// UNDEFINED for n < 2.
inline std::optional<double> global_efficiency(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n < 2) return std::nullopt;
  double total = 0.0;
  for (Vertex s = 0; s < n; ++s) {
    const auto dist = bfs_distances(g, s);
    double source_sum = 0.0;
    for (Vertex t = 0; t < n; ++t)
      if (dist[static_cast<std::size_t>(t)] > 0)
        source_sum += 1.0 / static_cast<double>(dist[static_cast<std::size_t>(t)]);
    total += source_sum;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Pearson correlation of the degrees at either end of an edge, computed over
/// the M = E edges. UNDEFINED when E = 0 or the variance term vanishes (any
/// regular graph; the cancellation is exact in IEEE arithmetic).
inline std::optional<double> degree_correlation(const Graph& g) {
  if (g.edge_count() == 0) return std::nullopt;
  double sum_prod = 0.0;
  double sum_half = 0.0;
  double sum_sq_half = 0.0;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto ju = static_cast<double>(g.degree(u));
    for (const Vertex v : g.neighbors(u)) {
      if (v <= u) continue;  // each edge once
      const auto kv = static_cast<double>(g.degree(v));
      sum_prod += ju * kv;
      sum_half += 0.5 * (ju + kv);
      sum_sq_half += 0.5 * (ju * ju + kv * kv);
    }
  }
  const double m_inv = 1.0 / static_cast<double>(g.edge_count());
  const double mean_half = m_inv * sum_half;
  const double numerator = m_inv * sum_prod - mean_half * mean_half;
  const double denominator = m_inv * sum_sq_half - mean_half * mean_half;
  if (denominator == 0.0) return std::nullopt;
  return numerator / denominator;
}

// Every structural measure for one graph. Betweenness-derived CPD and global
// efficiency share a single sweep of shortest-path searches.
struct MetricRecord {
  double cc_global = 0.0;
  std::optional<double> cpd;
  std::optional<double> ge;
  std::optional<double> degree_correlation_r;
  std::int64_t component_count = 0;
  double giant_size_pct = 0.0;
  std::map<std::int32_t, double> knn_by_degree;
};

inline MetricRecord full_record(const Graph& g) {
  MetricRecord rec;
  const auto comp = connected_components(g);
  rec.component_count = comp.count;
  rec.giant_size_pct = comp.giant_size_pct;
  rec.cc_global = clustering_global(g);
  rec.degree_correlation_r = degree_correlation(g);
  rec.knn_by_degree = sfnet::knn_by_degree(g);
  std::vector<double> raw;
  double inv_sum = 0.0;
  detail::brandes_sweep(g, raw, &inv_sum);
  const auto n = static_cast<double>(g.vertex_count());
  if (g.vertex_count() >= 2) rec.ge = inv_sum / (n * (n - 1.0));
  if (g.vertex_count() >= 3) {
    const double norm = (n - 1.0) * (n - 2.0) / 2.0;
    double b_max = 0.0;
    for (const double r : raw) b_max = std::max(b_max, r / norm);
    double sum = 0.0;
    for (const double r : raw) sum += b_max - r / norm;
    rec.cpd = sum / (n - 1.0);
  }
  return rec;
}

}  // namespace sfnet

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfnet/format.hpp"
#include "sfnet/graph.hpp"
#include "sfnet/random.hpp"

namespace sfnet {

/// Target or realized degrees, indexed by vertex id. Entries are >= 0.
using DegreeSequence = std::vector<std::int32_t>;

inline DegreeSequence degrees_of(const Graph& g) {
  DegreeSequence degrees(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) degrees[static_cast<std::size_t>(v)] = g.degree(v);
  return degrees;
}

inline std::int64_t degree_sum(const DegreeSequence& seq) {
  return std::accumulate(seq.begin(), seq.end(), std::int64_t{0});
}

/// Even-sum sequences can be fully paired into edges; odd sums leave a stub over.
inline bool is_pairable(const DegreeSequence& seq) { return degree_sum(seq) % 2 == 0; }

// Empirical degree distribution: strictly ascending support with P(k) summing
// to 1 (within 1e-9). Sampling is inverse-CDF, driven by a RandomSource.
class DegreeDistribution {
 public:
  DegreeDistribution(std::vector<std::int32_t> support, std::vector<double> probability)
      : support_(std::move(support)), prob_(std::move(probability)) {
    if (support_.empty()) throw std::invalid_argument("degree distribution: empty support");
    if (support_.size() != prob_.size())
      throw std::invalid_argument("degree distribution: support/probability size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (support_[i] < 0) throw std::invalid_argument("degree distribution: negative degree");
      if (i > 0 && support_[i] <= support_[i - 1])
        throw std::invalid_argument("degree distribution: support must be strictly ascending");
      if (!(prob_[i] >= 0.0)) throw std::invalid_argument("degree distribution: negative probability");
      total += prob_[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("degree distribution: probabilities must sum to 1");
    cdf_.resize(prob_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prob_.size(); ++i) {
      acc += prob_[i];
      cdf_[i] = acc;
    }
  }

  const std::vector<std::int32_t>& support() const { return support_; }
  const std::vector<double>& probability() const { return prob_; }

  double probability_of(std::int32_t k) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), k);
    if (it == support_.end() || *it != k) return 0.0;
    return prob_[static_cast<std::size_t>(it - support_.begin())];
  }

  /// One inverse-CDF draw. Zero-probability support entries are never produced.
  std::int32_t sample(RandomSource& rng) const {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;  // u landed at/above the accumulated total
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
  }

 private:
  std::vector<std::int32_t> support_;
  std::vector<double> prob_;
  std::vector<double> cdf_;
};

inline DegreeDistribution distribution_from_sequence(const DegreeSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("distribution_from_sequence: empty sequence");
  DegreeSequence sorted = seq;
  for (const auto k : sorted)
    if (k < 0) throw std::invalid_argument("distribution_from_sequence: negative degree");
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int32_t> support;
  std::vector<double> prob;
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    support.push_back(sorted[i]);
    prob.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  return DegreeDistribution(std::move(support), std::move(prob));
}

inline DegreeSequence sample_sequence(const DegreeDistribution& dist, std::int32_t n,
                                      RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("sample_sequence: n must be positive");
  DegreeSequence out(static_cast<std::size_t>(n));
  for (auto& k : out) k = dist.sample(rng);
  return out;
}

/// One non-negative integer per line; errors cite 1-based line numbers.
inline DegreeSequence read_degree_sequence(std::istream& is) {
  DegreeSequence out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::int32_t k = 0;
    if (!detail::parse_i32(line, k))
      throw std::invalid_argument("degree file line " + std::to_string(line_no) +
                                  ": expected a non-negative integer");
    if (k < 0)
      throw std::invalid_argument("degree file line " + std::to_string(line_no) +
                                  ": negative degree");
    out.push_back(k);
  }
  if (out.empty()) throw std::invalid_argument("degree file: no entries");
  return out;
}

inline void write_degree_sequence(const DegreeSequence& seq, std::ostream& os) {
  for (const auto k : seq) os << k << "\n";
}

inline DegreeSequence read_degree_sequence_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return read_degree_sequence(in);
}

inline void write_degree_sequence_file(const DegreeSequence& seq, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  write_degree_sequence(seq, out);
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

/// CSV with header "k,probability", one support row per line, k ascending.
inline void write_distribution_csv(const DegreeDistribution& dist, std::ostream& os) {
  os << "k,probability\n";
  for (std::size_t i = 0; i < dist.support().size(); ++i)
    os << dist.support()[i] << "," << detail::format_double(dist.probability()[i]) << "\n";
}

}  // namespace sfnet

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace sfnet {

// Replicate-level summary. UNDEFINED inputs are excluded from the statistics
// but counted, so n_used + n_excluded always equals the number of inputs.
struct SummaryStats {
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> q1;
  std::optional<double> q3;
  std::int64_t n_used = 0;
  std::int64_t n_excluded = 0;
};

namespace detail {

// Linear interpolation between order statistics (the R default, type 7).
// p = 0.5 reproduces the usual midpoint median.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = p * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline SummaryStats summarize_defined(std::vector<double> kept, std::int64_t excluded) {
  SummaryStats stats;
  stats.n_used = static_cast<std::int64_t>(kept.size());
  stats.n_excluded = excluded;
  if (kept.empty()) return stats;  // every input UNDEFINED -> UNDEFINED summary
  double sum = 0.0;
  for (const double v : kept) sum += v;
  stats.mean = sum / static_cast<double>(kept.size());
  std::sort(kept.begin(), kept.end());
  stats.median = quantile_sorted(kept, 0.5);
  stats.q1 = quantile_sorted(kept, 0.25);
  stats.q3 = quantile_sorted(kept, 0.75);
  return stats;
}

}  // namespace detail

inline SummaryStats summarize(const std::vector<std::optional<double>>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  std::vector<double> kept;
  kept.reserve(values.size());
  std::int64_t excluded = 0;
  for (const auto& v : values) {
    if (v.has_value())
      kept.push_back(*v);
    else
      ++excluded;
  }
  return detail::summarize_defined(std::move(kept), excluded);
}

inline SummaryStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  return detail::summarize_defined(values, 0);
}

enum class GeClass { High, Medium, Low, VeryLow };
enum class CpdClass { VeryHigh, High, Medium, Low, VeryLow };

/// Categorical efficiency label; values exactly on a boundary take the lower
/// class. Input must lie in [0, 1].
inline GeClass classify_ge(double ge) {
  if (!(ge >= 0.0 && ge <= 1.0)) throw std::invalid_argument("classify_ge: value outside [0,1]");
  if (ge > 0.12) return GeClass::High;
  if (ge > 0.05) return GeClass::Medium;
  if (ge > 0.01) return GeClass::Low;
  return GeClass::VeryLow;
}

/// Categorical centralization label; boundary values take the lower class.
inline CpdClass classify_cpd(double cpd) {
  if (!(cpd >= 0.0 && cpd <= 1.0)) throw std::invalid_argument("classify_cpd: value outside [0,1]");
  if (cpd > 0.7) return CpdClass::VeryHigh;
  if (cpd > 0.4) return CpdClass::High;
  if (cpd > 0.2) return CpdClass::Medium;
  if (cpd > 0.1) return CpdClass::Low;
  return CpdClass::VeryLow;
}

inline std::string_view to_string(GeClass c) {
  switch (c) {
    case GeClass::High: return "High";
    case GeClass::Medium: return "Medium";
    case GeClass::Low: return "Low";
    case GeClass::VeryLow: return "Very low";
  }
  return "?";
}

inline std::string_view to_string(CpdClass c) {
  switch (c) {
    case CpdClass::VeryHigh: return "Very high";
    case CpdClass::High: return "High";
    case CpdClass::Medium: return "Medium";
    case CpdClass::Low: return "Low";
    case CpdClass::VeryLow: return "Very low";
  }
  return "?";
}

}  // namespace sfnet

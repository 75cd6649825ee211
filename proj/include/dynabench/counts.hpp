#pragma once

#include <map>
#include <string>

namespace dynabench {

/// Normalized outcome histogram over classical bitstrings.
struct CountsDistribution {
  std::map<std::string, double> probs;
  long shots = 0;

  static CountsDistribution from_raw(const std::map<std::string, long>& raw);
  bool normalized(double eps = 1e-9) const;
};

inline CountsDistribution CountsDistribution::from_raw(const std::map<std::string, long>& raw) {
  CountsDistribution d;
  long total = 0;
  for (const auto& [k, v] : raw) total += v;
  d.shots = total;
  for (const auto& [k, v] : raw) {
    if (v > 0) d.probs[k] = static_cast<double>(v) / static_cast<double>(total);
  }
  return d;
}

inline bool CountsDistribution::normalized(double eps) const {
  double sum = 0;
  for (const auto& [k, v] : probs) sum += v;
  return sum > 1.0 - eps && sum < 1.0 + eps;
}

}  // namespace dynabench

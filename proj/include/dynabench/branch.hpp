#pragma once

#include <map>
#include <vector>

#include "dynabench/circuit.hpp"

namespace dynabench {

/// Probability assignment for the feed-forward blocks of a circuit.
/// Probabilities of distinct Conditionals are treated as independent.
struct BranchModel {
  enum class Kind { Uniform, QecNoise, Explicit };
  Kind kind = Kind::Uniform;

  // Uniform: informational only (number of distinct condition bits).
  int n_a = 0;

  // QecNoise: per-syndrome-clbit firing rate k*p + m + s, where weights[c]
  // is the weight k of the stabilizer whose ancilla writes clbit c.
  double p = 0.0, m = 0.0, s = 0.0;
  std::map<int, int> weights;

  // Explicit: probability per Conditional, keyed by the index of the
  // Conditional among the circuit's Conditionals, in order.
  std::map<int, double> probs;

  static BranchModel uniform(int n_a = 0);
  static BranchModel qec_noise(double p, double m, double s, std::map<int, int> weights);
  static BranchModel explicit_probs(std::map<int, double> probs);

  bool operator==(const BranchModel&) const = default;
};

/// Probability that the given condition fires under the model.
/// cond_index identifies the Conditional (needed for Explicit models).
double branch_probability(const BranchModel& bm, const Condition& cond, int cond_index = -1);

/// Probabilities for every Conditional of the circuit, in order.
/// Throws if the model does not cover one of them.
std::vector<double> branch_probabilities(const Circuit& c, const BranchModel& bm);

}  // namespace dynabench

#pragma once

#include <Eigen/Dense>
#include <array>
#include <string_view>

#include "dynabench/branch.hpp"
#include "dynabench/circuit.hpp"
#include "dynabench/counts.hpp"

namespace dynabench {

/// Operation-count variants: unitary gates only; plus measurements/resets;
/// plus one classical operation per feed-forward block.
enum class OpVariant { Unitary, Quantum, All };

/// The 24 circuit features, indexed as in the feature table.
struct FeatureVector {
  std::array<double, 24> values{};
  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
  static const std::array<std::string_view, 24>& names();
};

/// Expected total depth: base layers (MCM layers included) + one layer per
/// Conditional when include_ff + probability-weighted branch depths.
double expected_depth(const Circuit& c, const BranchModel& bm, bool include_ff);

/// Expected operation count under the given variant.
double expected_ops(const Circuit& c, const BranchModel& bm, OpVariant variant);

/// Expected number of two-qubit gates (base + probability-weighted branch).
double expected_two_qubit_gates(const Circuit& c, const BranchModel& bm);

/// Rows 18..23: quantum entanglement ratio E_Q over the three op variants,
/// then quantum+classical E_QC = E_Q + E_C over the same denominators.
std::array<double, 6> entanglement_features(const Circuit& c, const BranchModel& bm);

double system_qubit_ratio(const Circuit& c);

/// Ratio of two-qubit gates on the critical path to all two-qubit gates,
/// branch contributions probability-weighted. With include_ff_ordering the
/// path may run through measure -> feed-forward -> branch dependencies.
double critical_two_qubit(const Circuit& c, const BranchModel& bm, bool include_ff_ordering);

/// (l_mcm [+ l_ff]) / expected depth under the same flag.
double dynamic_depth_ratio(const Circuit& c, const BranchModel& bm, bool include_ff);

/// Weighted connectivity matrix: A(i,j) = probability that a two-qubit
/// interaction (quantum, or classical via feed-forward) links i and j.
Eigen::MatrixXd comm_matrix(const Circuit& c, const BranchModel& bm, bool include_classical);

/// Normalized program communication: sum of node degrees of A over n(n-1).
double communication(const Circuit& c, const BranchModel& bm, bool include_classical);

/// Live-time over execution-time ratio; final measurements are stripped
/// internally, mid-circuit measurements count one live step.
double liveness(const Circuit& c, const BranchModel& bm, bool include_ff);

/// ((O_total / D_total) - 1) / (n - 1), pairing Quantum ops with the no-FF
/// depth and All ops with the FF depth.
double parallelism(const Circuit& c, const BranchModel& bm, bool include_ff);

/// Renyi-2 entropy of an outcome distribution, normalized by n_a bits and
/// clamped to [0,1].
double renyi2_normalized(const CountsDistribution& counts, int n_a);

/// All 24 features.
FeatureVector feature_vector(const Circuit& c, const BranchModel& bm);

}  // namespace dynabench

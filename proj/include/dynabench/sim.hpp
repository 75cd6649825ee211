#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "dynabench/circuit.hpp"
#include "dynabench/counts.hpp"

namespace dynabench {

/// Stochastic Pauli noise: per-gate depolarizing (p1/p2), measurement
/// bit-flip on the recorded classical bit (pm), and per-layer idle
/// depolarizing (pidle). All zeros = noiseless.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double pm = 0.0;
  double pidle = 0.0;
  bool is_noiseless() const { return p1 == 0 && p2 == 0 && pm == 0 && pidle == 0; }
};

struct ShotResult {
  std::vector<uint8_t> bits;                       // final classical register
  std::map<int, std::vector<uint8_t>> mcm_history; // per-clbit measurement events
};

struct ZTerm {
  std::vector<int> positions;  // key positions (0 = leftmost)
  double coef = 1.0;
};

struct SimResult {
  CountsDistribution register_counts;  // over the readout order
  std::vector<int> readout;            // clbit per key position
  std::map<int, std::array<long, 2>> mcm_marginals;
  CountsDistribution mcm_joint;
  std::vector<int> mcm_clbits;         // ascending; joint key position i = mcm_clbits[i]
  long shots = 0;
  uint64_t seed = 0;
  NoiseModel noise;
};

/// Dense statevector over up to 25 qubits (qubit 0 = least significant bit).
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  double norm() const { return amp_.norm(); }

  void apply_1q(int q, const Eigen::Matrix2cd& m);
  void apply_2q(int q0, int q1, const Eigen::Matrix4cd& m);
  void apply_gate(const GateOp& g);

  double prob_one(int q) const;
  /// Projects onto the given outcome and renormalizes.
  void project(int q, int outcome);

  double expectation_z(const std::vector<int>& qubits) const;

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

Eigen::Matrix2cd gate_matrix_1q(GateId id, const std::vector<double>& params);
Eigen::Matrix4cd gate_matrix_2q(GateId id, const std::vector<double>& params);

/// Runs the circuit shot by shot. Each shot draws its randomness from a
/// counter-derived seed, so results are independent of execution order.
std::vector<ShotResult> run_shots(const Circuit& c, long shots, const NoiseModel& nm,
                                  uint64_t seed);

/// run_shots plus aggregation. readout lists clbits in key order (position 0
/// is the leftmost character); empty means the full register rendered with
/// the highest clbit first.
SimResult run(const Circuit& c, long shots, const NoiseModel& nm, uint64_t seed,
              std::vector<int> readout = {});

/// Sum over outcomes of p(outcome) * sum_terms coef * prod (-1)^bit.
double expectation_z(const CountsDistribution& counts, const std::vector<ZTerm>& terms);

/// Deterministic splittable RNG used everywhere randomness is needed.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next();
  double uniform();                  // [0, 1)
  uint64_t below(uint64_t bound);    // [0, bound)
};

uint64_t mix_seed(uint64_t seed, uint64_t stream);

}  // namespace dynabench

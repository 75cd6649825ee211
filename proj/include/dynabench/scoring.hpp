#pragma once

#include <map>
#include <string>

#include "dynabench/benchmarks.hpp"
#include "dynabench/codes.hpp"
#include "dynabench/counts.hpp"
#include "dynabench/pauli.hpp"
#include "dynabench/sim.hpp"

namespace dynabench {

/// Application-dependent fidelity score, always clamped to [0,1].
struct ScoreResult {
  double score = 0.0;
  std::string family;
  std::map<std::string, double> details;
};

/// Direct fidelity estimation settings. The defaults spread a roughly
/// 4096-shot budget across the Pauli samples.
struct DfeConfig {
  int k = 30;  // Pauli string samples
  long shots_per_sample = 137;
};

/// (sum_x sqrt(p_x q_x))^2 over the union support.
double hellinger_fidelity(const CountsDistribution& p, const CountsDistribution& q);

/// Hellinger against the ideal n-qubit GHZ distribution {0^n, 1^n}.
ScoreResult ghz_score(const CountsDistribution& counts, int n);

/// Hellinger against a point mass at `bitstring`.
ScoreResult delta_score(const CountsDistribution& counts, const std::string& bitstring);

/// DFE for the constant-depth Clifford families: sample a uniform Pauli,
/// prepare its eigenstate on the data qubits, propagate through the ideal
/// Clifford, measure in the rotated basis, average the eigenvalue.
ScoreResult dfe_clifford_score(const GeneratedBenchmark& bench, const DfeConfig& cfg,
                               const NoiseModel& nm, uint64_t seed);

/// One DFE measurement circuit: eigenstate prep for `pauli` on the data
/// qubits, the dynamic circuit body, and the basis change that turns the
/// propagated operator into I/Z letters read out on fresh clbits.
struct DfeSample {
  Circuit circuit;
  PauliString propagated;   // includes the sign folded into the estimate
  int readout_clbit_base;   // data-local letter i read from clbit base + i
};
DfeSample dfe_sample_circuit(const GeneratedBenchmark& bench, const PauliString& pauli);

/// QFT bitstring protocol: average Hellinger-vs-delta over three seeded
/// random input strings.
ScoreResult qft_score(Family family, int n, const NoiseModel& nm, uint64_t seed,
                      long shots = 4096);

/// Hellinger against the m-bit expansion of theta.
ScoreResult ipe_score(const CountsDistribution& counts, double theta, int m);
std::string ipe_bitstring(double theta, int m);

/// 1 - |ideal - observed| / |2 ideal|, clamped to [0,1].
ScoreResult tfim_score(double observed_mz, double ideal_mz);

/// Exact <M_z> of the ancilla-free Trotter circuit.
double ideal_tfim_mz(int n, int steps, double J, double h, double dt);

/// One minus the logical error rate; records are the aggregated histogram
/// over [syndrome bits, transversal readout bits]. States outside the code
/// space count as logical errors.
ScoreResult qec_score(const CountsDistribution& records, const CodeTables& tables,
                      CodeInitial initial);

CodeTables code_tables_by_name(const std::string& name);

/// Pipeline dispatcher: scores a benchmark from its simulation result
/// (regenerating circuits internally for the DFE families).
ScoreResult score_benchmark(const GeneratedBenchmark& bench, const SimResult& result,
                            const NoiseModel& nm, uint64_t seed);

}  // namespace dynabench

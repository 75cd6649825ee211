#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dynabench/branch.hpp"
#include "dynabench/circuit.hpp"
#include "dynabench/codes.hpp"

namespace dynabench {

enum class Family {
  GHZ,
  GHZ_RESET,
  LR_CNOT,
  LR_CNOT_SPARSE,
  CNOT_LADDER,
  FANOUT,
  QFT_M,
  PARTIAL_QFT_M,
  IPE,
  TFIM,
  REP_CODE,
  FIVE_QUBIT_CODE,
  STEANE_CODE,
};

const std::vector<Family>& all_families();
std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Scorer-specific reference data for one generated benchmark.
struct IdealReference {
  enum class Type { GhzDist, Clifford, Delta, Tfim, Code };
  Type type = Type::GhzDist;

  int n = 0;  // GhzDist: GHZ width; Tfim: data qubits

  // Clifford: ideal operation on data-local indices plus the physical
  // position of each data qubit.
  std::vector<Instruction> clifford_ops;
  std::vector<int> data_qubits;

  std::string bitstring;  // Delta: ideal outcome

  int steps = 0;  // Tfim
  double J = 1.0, h = 1.0, dt = 0.1;

  std::string code_name;  // Code
  CodeInitial initial = CodeInitial::One;
};

struct GeneratedBenchmark {
  Family family = Family::GHZ;
  Circuit circuit;
  BranchModel branch_model;
  IdealReference ideal;
  std::vector<int> readout_clbits;  // key position i = readout_clbits[i]
};

GeneratedBenchmark gen_ghz(int n_data);
GeneratedBenchmark gen_ghz_reset(int n_total);
GeneratedBenchmark gen_lr_cnot(int n_total);
GeneratedBenchmark gen_lr_cnot_sparse(int n_total);
GeneratedBenchmark gen_cnot_ladder(int n_total);
GeneratedBenchmark gen_fanout(int n_total);
GeneratedBenchmark gen_qft_m(int n, const std::string& s);
GeneratedBenchmark gen_partial_qft_m(int n, const std::string& s);
GeneratedBenchmark gen_ipe(double theta, int m_bits);
GeneratedBenchmark gen_tfim(int n_data, int steps, double J = 1.0, double h = 1.0,
                            double dt = 0.1);
GeneratedBenchmark gen_rep_code(int n_data, CodeInitial initial);
GeneratedBenchmark gen_five_qubit_code(CodeInitial initial, bool uniform_branch = false);
GeneratedBenchmark gen_steane_code(CodeInitial initial);

/// Size admissibility: hard errors for impossible sizes (wrong parity or
/// below the family minimum), advisory warning outside the published ranges.
void check_size(Family f, int n_total);                       // throws on invalid
std::optional<std::string> size_advisory(Family f, int n_total);

/// A benchmark request: family, total width, and family parameters (Trotter
/// steps, code initial state, ...). Sizes outside the published ranges are
/// admitted with a warning; impossible sizes are rejected.
struct BenchmarkSpec {
  Family family = Family::GHZ;
  int n_total = 0;
  std::map<std::string, double> params;
};

/// CLI-facing registry: builds the benchmark for a total qubit count,
/// drawing per-instance inputs (QFT bitstring, IPE phase) from the seed.
GeneratedBenchmark generate_benchmark(Family f, int n_total,
                                      const std::map<std::string, double>& params,
                                      uint64_t seed);
GeneratedBenchmark generate_benchmark(const BenchmarkSpec& spec, uint64_t seed);

/// Number of distinct condition bits of a circuit (n_a).
int distinct_condition_bits(const Circuit& c);

}  // namespace dynabench

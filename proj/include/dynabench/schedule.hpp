#pragma once

#include <vector>

#include "dynabench/circuit.hpp"

namespace dynabench {

/// Greedy as-soon-as-possible layering of a dynamic circuit. Base layers
/// hold the non-conditional instructions; each conditional body is layered
/// independently and contributes its own depth D_i.
struct LayeredSchedule {
  std::vector<std::vector<int>> base_layers;  // instruction indices per layer
  int base_depth = 0;                         // == base_layers.size()
  int mcm_layer_count = 0;                    // layers containing >=1 Measure
  int ff_layer_count = 0;                     // one per Conditional when enabled
  std::vector<int> conditional_indices;       // instruction index of each Conditional
  std::vector<int> branch_depths;             // D_i, parallel to conditional_indices
  std::vector<int> instr_layer;               // 0-based base layer per instruction, -1 for Conditionals
};

/// ASAP layering; ties broken by instruction order so schedules are
/// deterministic. include_ff only controls the reported ff_layer_count.
LayeredSchedule layer_schedule(const Circuit& c, bool include_ff = true);

/// Layer a bare instruction list (used for conditional bodies and tests).
/// Returns the depth; optionally fills per-instruction layer indices.
int layer_depth(const std::vector<Instruction>& instrs, std::vector<int>* layers = nullptr);

/// Iteratively removes trailing Measure instructions whose clbits are not
/// referenced by any Condition. Everything else is untouched.
Circuit strip_final_measurements(const Circuit& c);

/// Qubit classification for the liveness denominator. Run on a circuit that
/// already had its final measurements stripped.
struct QubitClasses {
  std::vector<int> n1_qubits;  // measured mid-circuit, never reused afterward
  std::vector<int> pre_depths; // D_pre per n1 qubit: base layers strictly before its last MCM
  std::vector<int> last_measure_pos;  // instruction index of that MCM
  int n1 = 0;
  int n2 = 0;                  // everything else (reused-after-MCM or MCM-free)
};
QubitClasses classify_qubits(const Circuit& c);

}  // namespace dynabench

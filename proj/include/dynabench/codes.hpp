#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dynabench/pauli.hpp"

namespace dynabench {

enum class CodeInitial { Zero, One, Plus };
std::string code_initial_name(CodeInitial initial);

/// Stabilizer code data: checks, logicals, and the lookup-table decoder.
/// Syndrome bit i corresponds to stabilizers[i] (and to syndrome clbit i of
/// the generated circuit).
struct CodeTables {
  std::string name;
  int num_data = 0;
  std::vector<PauliString> stabilizers;  // over data qubits only
  std::vector<int> check_weights;
  PauliString logical_x, logical_z;
  std::map<uint32_t, PauliString> decoder;  // covers every syndrome

  int num_checks() const { return static_cast<int>(stabilizers.size()); }
};

CodeTables rep_code_tables(int n_data);  // n_data in {3, 5}
CodeTables five_qubit_code_tables();
CodeTables steane_code_tables();

/// Syndrome of a Pauli error: bit i set iff the error anticommutes with
/// stabilizers[i].
uint32_t syndrome_of(const CodeTables& code, const PauliString& error);

/// Every decoder entry returns the state to the code space with the right
/// logical value for every correctable error; throws on violation.
void verify_decoder(const CodeTables& code);

}  // namespace dynabench

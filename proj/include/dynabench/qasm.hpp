#pragma once

#include <string>

#include "dynabench/circuit.hpp"

namespace dynabench {

/// OpenQASM-3-subset export: qubit/bit declarations, gate calls, measure,
/// reset and flat `if (...) { ... }` blocks. Parity conditions appear as an
/// XOR chain with a marker comment and re-import losslessly; export ->
/// import -> export is byte-stable.
std::string to_qasm(const Circuit& c);

Circuit from_qasm(const std::string& text);

}  // namespace dynabench

#pragma once

#include <span>
#include <string>
#include <vector>

#include "dynabench/circuit.hpp"

namespace dynabench {

enum class Pauli : uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);

/// Signed n-letter Pauli string. Internally kept in symplectic (x,z) form;
/// the sign is +1 or -1 (Clifford conjugation never leaves the real axis).
struct PauliString {
  std::vector<uint8_t> x, z;
  int sign = 1;

  PauliString() = default;
  explicit PauliString(int n) : x(n, 0), z(n, 0) {}

  int size() const { return static_cast<int>(x.size()); }
  Pauli letter(int q) const;
  void set_letter(int q, Pauli p);
  bool is_identity() const;
  int weight() const;

  bool commutes_with(const PauliString& other) const;
  /// Pauli product with phase tracking; throws if the result is imaginary
  /// (cannot happen for commuting Hermitian strings).
  PauliString multiplied(const PauliString& other) const;

  /// Parse "+XIZZ" / "-IZX" / "XZ" (leading sign optional).
  static PauliString parse(std::string_view text);
  static PauliString single(int n, int qubit, Pauli p, int sign = 1);
  std::string str() const;

  bool operator==(const PauliString&) const = default;
};

/// In-place conjugation P -> U P U^dagger for one Clifford gate.
void conjugate_by_gate(PauliString& p, GateId id, const std::vector<int>& qubits);

/// Conjugates P through an instruction list (applied in circuit order).
/// Only Clifford gates are allowed; anything else throws.
PauliString propagate_pauli(std::span<const Instruction> clifford_ops, PauliString p);

/// Gate prefix mapping |0> to the +1 eigenstate of the letter on `qubit`
/// (Z: nothing, X: H, Y: H then S).
std::vector<Instruction> prepare_pauli_eigenstate(Pauli letter, int qubit);

/// Stabilizer/destabilizer tableau over n qubits, rows kept symplectically
/// orthonormal under every gate update.
class Tableau {
 public:
  explicit Tableau(int n);  // |0...0>

  int num_qubits() const { return n_; }
  void apply(GateId id, const std::vector<int>& qubits);
  void apply(const Instruction& instr);
  void apply(std::span<const Instruction> instrs);

  const PauliString& stabilizer(int i) const { return stab_[i]; }
  const PauliString& destabilizer(int i) const { return destab_[i]; }

  /// Destabilizer/stabilizer rows pairwise symplectic-orthonormal.
  bool symplectic_ok() const;

  enum class Membership { NotInGroup, PlusSign, MinusSign };
  /// Whether +/-q is an element of the stabilizer group.
  Membership contains(const PauliString& q) const;

 private:
  int n_;
  std::vector<PauliString> destab_, stab_;
};

/// Synthesizes a preparation circuit (from |0...0>) for the stabilizer state
/// defined by n independent commuting signed generators on n qubits.
/// Uses H/S/Sdg/CX/CZ plus X sign fixes.
std::vector<Instruction> stabilizer_prep_circuit(std::vector<PauliString> targets);

}  // namespace dynabench

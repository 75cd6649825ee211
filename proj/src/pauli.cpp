#include "dynabench/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynabench {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli PauliString::letter(int q) const {
  if (x[q]) return z[q] ? Pauli::Y : Pauli::X;
  return z[q] ? Pauli::Z : Pauli::I;
}

void PauliString::set_letter(int q, Pauli p) {
  x[q] = (p == Pauli::X || p == Pauli::Y);
  z[q] = (p == Pauli::Z || p == Pauli::Y);
}

bool PauliString::is_identity() const {
  for (int q = 0; q < size(); ++q)
    if (x[q] || z[q]) return false;
  return true;
}

int PauliString::weight() const {
  int w = 0;
  for (int q = 0; q < size(); ++q) w += (x[q] || z[q]);
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = 0;
  for (int q = 0; q < size(); ++q)
    anti ^= (x[q] & other.z[q]) ^ (z[q] & other.x[q]);
  return anti == 0;
}

namespace {

// Exponent of i picked up when multiplying single-qubit Hermitian Paulis.
int phase_g(uint8_t x1, uint8_t z1, uint8_t x2, uint8_t z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return z2 - x2;                    // Y * P
  if (x1 && !z1) return z2 * (2 * x2 - 1);         // X * P
  return x2 * (1 - 2 * z2);                        // Z * P
}

}  // namespace

PauliString PauliString::multiplied(const PauliString& other) const {
  if (size() != other.size()) throw std::invalid_argument("pauli length mismatch");
  PauliString out(size());
  int phase = (sign < 0 ? 2 : 0) + (other.sign < 0 ? 2 : 0);
  for (int q = 0; q < size(); ++q) {
    phase += phase_g(x[q], z[q], other.x[q], other.z[q]);
    out.x[q] = x[q] ^ other.x[q];
    out.z[q] = z[q] ^ other.z[q];
  }
  phase = ((phase % 4) + 4) % 4;
  if (phase == 1 || phase == 3) throw std::logic_error("imaginary pauli product");
  out.sign = phase == 0 ? 1 : -1;
  return out;
}

PauliString PauliString::parse(std::string_view text) {
  int sign = 1;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    sign = text[0] == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  PauliString p(static_cast<int>(text.size()));
  p.sign = sign;
  for (size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.set_letter(static_cast<int>(q), Pauli::X); break;
      case 'Y': p.set_letter(static_cast<int>(q), Pauli::Y); break;
      case 'Z': p.set_letter(static_cast<int>(q), Pauli::Z); break;
      default: throw std::invalid_argument("bad pauli letter");
    }
  }
  return p;
}

PauliString PauliString::single(int n, int qubit, Pauli p, int sign) {
  PauliString out(n);
  out.set_letter(qubit, p);
  out.sign = sign;
  return out;
}

std::string PauliString::str() const {
  std::string s(sign < 0 ? "-" : "+");
  for (int q = 0; q < size(); ++q) s.push_back(pauli_char(letter(q)));
  return s;
}

namespace {

void conj_h(PauliString& p, int q) {
  if (p.x[q] & p.z[q]) p.sign = -p.sign;
  std::swap(p.x[q], p.z[q]);
}
void conj_s(PauliString& p, int q) {
  if (p.x[q] & p.z[q]) p.sign = -p.sign;
  p.z[q] ^= p.x[q];
}
void conj_sdg(PauliString& p, int q) {
  if (p.x[q] & !p.z[q]) p.sign = -p.sign;
  p.z[q] ^= p.x[q];
}
void conj_cx(PauliString& p, int c, int t) {
  if (p.x[c] & p.z[t] & (p.x[t] ^ p.z[c] ^ 1)) p.sign = -p.sign;
  p.x[t] ^= p.x[c];
  p.z[c] ^= p.z[t];
}

}  // namespace

void conjugate_by_gate(PauliString& p, GateId id, const std::vector<int>& qubits) {
  switch (id) {
    case GateId::H: conj_h(p, qubits[0]); break;
    case GateId::S: conj_s(p, qubits[0]); break;
    case GateId::Sdg: conj_sdg(p, qubits[0]); break;
    case GateId::X:
      if (p.z[qubits[0]]) p.sign = -p.sign;
      break;
    case GateId::Y:
      if (p.x[qubits[0]] ^ p.z[qubits[0]]) p.sign = -p.sign;
      break;
    case GateId::Z:
      if (p.x[qubits[0]]) p.sign = -p.sign;
      break;
    case GateId::Cx: conj_cx(p, qubits[0], qubits[1]); break;
    case GateId::Cz:
      conj_h(p, qubits[1]);
      conj_cx(p, qubits[0], qubits[1]);
      conj_h(p, qubits[1]);
      break;
    case GateId::Swap:
      std::swap(p.x[qubits[0]], p.x[qubits[1]]);
      std::swap(p.z[qubits[0]], p.z[qubits[1]]);
      break;
    default:
      throw std::invalid_argument("non-Clifford gate in Pauli conjugation");
  }
}

PauliString propagate_pauli(std::span<const Instruction> clifford_ops, PauliString p) {
  for (const auto& instr : clifford_ops) {
    if (!instr.is_gate())
      throw std::invalid_argument("Pauli propagation expects a pure gate list");
    conjugate_by_gate(p, instr.gate().id, instr.gate().qubits);
  }
  return p;
}

std::vector<Instruction> prepare_pauli_eigenstate(Pauli letter, int qubit) {
  switch (letter) {
    case Pauli::Z:
    case Pauli::I:
      return {};
    case Pauli::X:
      return {make_gate(GateId::H, {qubit})};
    case Pauli::Y:
      return {make_gate(GateId::H, {qubit}), make_gate(GateId::S, {qubit})};
  }
  throw std::logic_error("unreachable");
}

Tableau::Tableau(int n) : n_(n) {
  destab_.reserve(n);
  stab_.reserve(n);
  for (int q = 0; q < n; ++q) {
    destab_.push_back(PauliString::single(n, q, Pauli::X));
    stab_.push_back(PauliString::single(n, q, Pauli::Z));
  }
}

void Tableau::apply(GateId id, const std::vector<int>& qubits) {
  for (auto& row : destab_) conjugate_by_gate(row, id, qubits);
  for (auto& row : stab_) conjugate_by_gate(row, id, qubits);
}

void Tableau::apply(const Instruction& instr) {
  if (!instr.is_gate()) throw std::invalid_argument("tableau update expects a gate");
  apply(instr.gate().id, instr.gate().qubits);
}

void Tableau::apply(std::span<const Instruction> instrs) {
  for (const auto& instr : instrs) apply(instr);
}

bool Tableau::symplectic_ok() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (!stab_[i].commutes_with(stab_[j])) return false;
      if (!destab_[i].commutes_with(destab_[j])) return false;
      bool anti = !destab_[i].commutes_with(stab_[j]);
      if (anti != (i == j)) return false;
    }
  }
  return true;
}

Tableau::Membership Tableau::contains(const PauliString& q) const {
  // A group element is the product of the stabilizers whose destabilizer
  // partner anticommutes with q.
  PauliString acc(n_);
  for (int i = 0; i < n_; ++i) {
    if (!destab_[i].commutes_with(q)) acc = acc.multiplied(stab_[i]);
  }
  if (acc.x != q.x || acc.z != q.z) return Membership::NotInGroup;
  return acc.sign == q.sign ? Membership::PlusSign : Membership::MinusSign;
}

std::vector<Instruction> stabilizer_prep_circuit(std::vector<PauliString> targets) {
  const int n = targets.empty() ? 0 : targets[0].size();
  if (static_cast<int>(targets.size()) != n)
    throw std::invalid_argument("need n generators on n qubits");
  for (const auto& g : targets) {
    if (g.size() != n) throw std::invalid_argument("generator length mismatch");
  }
  for (size_t i = 0; i < targets.size(); ++i)
    for (size_t j = i + 1; j < targets.size(); ++j)
      if (!targets[i].commutes_with(targets[j]))
        throw std::invalid_argument("generators must commute");

  // Gates mapping the target group to {±Z_q}; the prep circuit is the
  // inverse of this list plus X sign fixes.
  std::vector<Instruction> reduce;
  auto emit = [&](GateId id, std::vector<int> qubits) {
    for (auto& row : targets) conjugate_by_gate(row, id, qubits);
    reduce.push_back(make_gate(id, std::move(qubits)));
  };

  for (int q = 0; q < n; ++q) {
    int pivot = -1;
    for (int r = q; r < n; ++r) {
      if (targets[r].x[q]) { pivot = r; break; }
    }
    if (pivot < 0) {
      bool any_z = false;
      for (int r = q; r < n; ++r) any_z |= targets[r].z[q] != 0;
      if (!any_z) throw std::invalid_argument("generators are not independent");
      emit(GateId::H, {q});
      for (int r = q; r < n; ++r) {
        if (targets[r].x[q]) { pivot = r; break; }
      }
    }
    std::swap(targets[q], targets[pivot]);

    // Normalize off-pivot X/Y support to pure X, then clear it with CX.
    for (int t = 0; t < n; ++t) {
      if (t == q || !targets[q].x[t]) continue;
      if (targets[q].z[t]) emit(GateId::S, {t});
    }
    for (int t = 0; t < n; ++t) {
      if (t != q && targets[q].x[t]) emit(GateId::Cx, {q, t});
    }
    if (targets[q].z[q]) emit(GateId::S, {q});  // Y_q -> X_q
    for (int t = 0; t < n; ++t) {
      if (t != q && targets[q].z[t]) emit(GateId::Cz, {q, t});
    }
    emit(GateId::H, {q});  // ±X_q -> ±Z_q

    // Row cleanup: remove Z_q from every other generator.
    for (int r = 0; r < n; ++r) {
      if (r == q) continue;
      if (targets[r].x[q])
        throw std::logic_error("anticommuting generator during synthesis");
      if (targets[r].z[q]) targets[r] = targets[r].multiplied(targets[q]);
    }
  }

  std::vector<Instruction> prep;
  for (int q = 0; q < n; ++q) {
    if (targets[q].sign < 0) prep.push_back(make_gate(GateId::X, {q}));
  }
  for (auto it = reduce.rbegin(); it != reduce.rend(); ++it) {
    GateId id = it->gate().id;
    GateId inv = id == GateId::S ? GateId::Sdg : id == GateId::Sdg ? GateId::S : id;
    prep.push_back(make_gate(inv, it->gate().qubits));
  }
  return prep;
}

}  // namespace dynabench

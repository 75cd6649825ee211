#include "dynabench/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynabench {

namespace {

struct GateInfo {
  std::string_view name;
  int arity;
  int params;
  bool clifford;
};

// Order matches GateId.
constexpr GateInfo kGateInfo[] = {
    {"h", 1, 0, true},    {"x", 1, 0, true},    {"y", 1, 0, true},
    {"z", 1, 0, true},    {"s", 1, 0, true},    {"sdg", 1, 0, true},
    {"t", 1, 0, false},   {"rx", 1, 1, false},  {"ry", 1, 1, false},
    {"rz", 1, 1, false},  {"p", 1, 1, false},   {"cx", 2, 0, true},
    {"cz", 2, 0, true},   {"swap", 2, 0, true}, {"rzz", 2, 1, false},
};

const GateInfo& info(GateId id) { return kGateInfo[static_cast<int>(id)]; }

}  // namespace

int gate_arity(GateId id) { return info(id).arity; }
int gate_param_count(GateId id) { return info(id).params; }
bool gate_is_clifford(GateId id) { return info(id).clifford; }
std::string_view gate_name(GateId id) { return info(id).name; }

std::optional<GateId> gate_from_name(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kGateInfo)); ++i) {
    if (kGateInfo[i].name == name) return static_cast<GateId>(i);
  }
  return std::nullopt;
}

Condition Condition::equals(std::vector<int> clbits, std::vector<uint8_t> value) {
  Condition c;
  c.pred = Pred::EqualsValue;
  c.clbits = std::move(clbits);
  c.value = std::move(value);
  if (c.value.size() != c.clbits.size())
    throw std::invalid_argument("condition value length must match clbit count");
  return c;
}

Condition Condition::equals_one(int clbit) { return equals({clbit}, {1}); }

Condition Condition::parity_equals(std::vector<int> clbits, uint8_t parity) {
  Condition c;
  c.pred = Pred::ParityEquals;
  c.clbits = std::move(clbits);
  c.parity = parity & 1;
  return c;
}

bool Condition::matches(std::span<const uint8_t> register_bits) const {
  if (pred == Pred::EqualsValue) {
    for (size_t i = 0; i < clbits.size(); ++i) {
      if (register_bits[clbits[i]] != value[i]) return false;
    }
    return true;
  }
  uint8_t acc = 0;
  for (int b : clbits) acc ^= register_bits[b];
  return acc == parity;
}

std::vector<int> Instruction::qubits() const {
  if (is_gate()) return gate().qubits;
  if (is_measure()) return {measure().qubit};
  if (is_reset()) return {reset().qubit};
  std::set<int> acc;
  for (const auto& instr : conditional().body) {
    for (int q : instr.qubits()) acc.insert(q);
  }
  return {acc.begin(), acc.end()};
}

Instruction make_gate(GateId id, std::vector<int> qubits, std::vector<double> params) {
  return Instruction{GateOp{id, std::move(qubits), std::move(params)}};
}
Instruction make_measure(int qubit, int clbit) { return Instruction{MeasureOp{qubit, clbit}}; }
Instruction make_reset(int qubit) { return Instruction{ResetOp{qubit}}; }
Instruction make_conditional(Condition cond, std::vector<Instruction> body) {
  return Instruction{ConditionalOp{std::move(cond), std::move(body)}};
}

int Circuit::num_conditionals() const {
  int n = 0;
  for (const auto& instr : instructions) n += instr.is_conditional();
  return n;
}

namespace {

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
}
void check_clbit(int c, int n) {
  if (c < 0 || c >= n) throw std::invalid_argument("clbit index out of range");
}

void check_instruction(const Instruction& instr, int nq, int nc, bool allow_conditional) {
  if (instr.is_gate()) {
    const auto& g = instr.gate();
    if (static_cast<int>(g.qubits.size()) != gate_arity(g.id))
      throw std::invalid_argument("gate operand count does not match gate arity");
    if (static_cast<int>(g.params.size()) != gate_param_count(g.id))
      throw std::invalid_argument("gate parameter count mismatch");
    for (int q : g.qubits) check_qubit(q, nq);
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
      throw std::invalid_argument("duplicate operand");
  } else if (instr.is_measure()) {
    check_qubit(instr.measure().qubit, nq);
    check_clbit(instr.measure().clbit, nc);
  } else if (instr.is_reset()) {
    check_qubit(instr.reset().qubit, nq);
  } else {
    if (!allow_conditional)
      throw std::invalid_argument("nested conditional blocks are not supported");
    const auto& c = instr.conditional();
    if (c.cond.clbits.empty()) throw std::invalid_argument("condition has no clbits");
    for (int b : c.cond.clbits) check_clbit(b, nc);
    if (c.cond.pred == Condition::Pred::EqualsValue &&
        c.cond.value.size() != c.cond.clbits.size())
      throw std::invalid_argument("condition value length must match clbit count");
    for (const auto& inner : c.body) check_instruction(inner, nq, nc, false);
  }
}

}  // namespace

void Circuit::validate() const {
  if (num_qubits < 1 || num_clbits < 0)
    throw std::invalid_argument("circuit register sizes invalid");
  for (int q : system_qubits) check_qubit(q, num_qubits);
  std::vector<uint8_t> written(static_cast<size_t>(std::max(num_clbits, 0)), 0);
  for (const auto& instr : instructions) {
    check_instruction(instr, num_qubits, num_clbits, true);
    if (instr.is_conditional()) {
      for (int b : instr.conditional().cond.clbits) {
        if (!written[b])
          throw std::invalid_argument("condition bit has no earlier measurement writer");
      }
    } else if (instr.is_measure()) {
      written[instr.measure().clbit] = 1;
    }
  }
}

CircuitBuilder::CircuitBuilder(int num_qubits, int num_clbits) {
  if (num_qubits < 1 || num_clbits < 0)
    throw std::invalid_argument("circuit register sizes invalid");
  circuit_.num_qubits = num_qubits;
  circuit_.num_clbits = num_clbits;
}

CircuitBuilder& CircuitBuilder::gate(GateId id, std::vector<int> qubits,
                                     std::vector<double> params) {
  return append(make_gate(id, std::move(qubits), std::move(params)));
}
CircuitBuilder& CircuitBuilder::measure(int qubit, int clbit) {
  return append(make_measure(qubit, clbit));
}
CircuitBuilder& CircuitBuilder::reset(int qubit) { return append(make_reset(qubit)); }
CircuitBuilder& CircuitBuilder::conditional(Condition cond, std::vector<Instruction> body) {
  return append(make_conditional(std::move(cond), std::move(body)));
}

CircuitBuilder& CircuitBuilder::append(Instruction instr) {
  check_instruction(instr, circuit_.num_qubits, circuit_.num_clbits, true);
  circuit_.instructions.push_back(std::move(instr));
  return *this;
}

CircuitBuilder& CircuitBuilder::set_system_qubits(std::set<int> qubits) {
  for (int q : qubits) check_qubit(q, circuit_.num_qubits);
  circuit_.system_qubits = std::move(qubits);
  return *this;
}
CircuitBuilder& CircuitBuilder::set_name(std::string name) {
  circuit_.name = std::move(name);
  return *this;
}
CircuitBuilder& CircuitBuilder::set_param(const std::string& key, double value) {
  circuit_.params[key] = value;
  return *this;
}

Circuit CircuitBuilder::finalize() {
  circuit_.validate();
  return circuit_;
}

}  // namespace dynabench

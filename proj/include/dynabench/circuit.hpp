#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dynabench {

/// Gate vocabulary. All benchmarks are built from these single- and
/// two-qubit gates; no transpilation layer exists above them.
enum class GateId { H, X, Y, Z, S, Sdg, T, Rx, Ry, Rz, P, Cx, Cz, Swap, Rzz };

int gate_arity(GateId id);
int gate_param_count(GateId id);
bool gate_is_clifford(GateId id);
std::string_view gate_name(GateId id);
std::optional<GateId> gate_from_name(std::string_view name);

/// Classical predicate of a feed-forward block. EqualsValue compares the
/// listed clbits against a fixed bit pattern; ParityEquals tests their XOR.
struct Condition {
  enum class Pred { EqualsValue, ParityEquals };
  Pred pred = Pred::EqualsValue;
  std::vector<int> clbits;
  std::vector<uint8_t> value;  // EqualsValue: one bit per entry of clbits
  uint8_t parity = 0;          // ParityEquals: expected XOR

  static Condition equals(std::vector<int> clbits, std::vector<uint8_t> value);
  static Condition equals_one(int clbit);  // single bit == 1
  static Condition parity_equals(std::vector<int> clbits, uint8_t parity = 1);

  bool matches(std::span<const uint8_t> register_bits) const;
  bool operator==(const Condition&) const = default;
};

struct GateOp {
  GateId id;
  std::vector<int> qubits;
  std::vector<double> params;
};
struct MeasureOp {
  int qubit;
  int clbit;
};
struct ResetOp {
  int qubit;
};

struct Instruction;

/// Flat feed-forward block: a classically conditioned instruction list.
/// Bodies never contain another Conditional.
struct ConditionalOp {
  Condition cond;
  std::vector<Instruction> body;
};

struct Instruction {
  std::variant<GateOp, MeasureOp, ResetOp, ConditionalOp> op;

  bool is_gate() const { return std::holds_alternative<GateOp>(op); }
  bool is_measure() const { return std::holds_alternative<MeasureOp>(op); }
  bool is_reset() const { return std::holds_alternative<ResetOp>(op); }
  bool is_conditional() const { return std::holds_alternative<ConditionalOp>(op); }
  const GateOp& gate() const { return std::get<GateOp>(op); }
  const MeasureOp& measure() const { return std::get<MeasureOp>(op); }
  const ResetOp& reset() const { return std::get<ResetOp>(op); }
  const ConditionalOp& conditional() const { return std::get<ConditionalOp>(op); }
  ConditionalOp& conditional() { return std::get<ConditionalOp>(op); }

  /// Qubits this instruction acts on (for a Conditional: union of its body).
  std::vector<int> qubits() const;
};

Instruction make_gate(GateId id, std::vector<int> qubits, std::vector<double> params = {});
Instruction make_measure(int qubit, int clbit);
Instruction make_reset(int qubit);
Instruction make_conditional(Condition cond, std::vector<Instruction> body);

/// A dynamic circuit: ordered instructions over qubit/clbit registers, with
/// the information-carrying (system) qubits annotated.
struct Circuit {
  int num_qubits = 0;
  int num_clbits = 0;
  std::vector<Instruction> instructions;
  std::set<int> system_qubits;
  std::string name;
  std::map<std::string, double> params;

  int num_conditionals() const;
  /// Full invariant check: operand ranges, gate arities, flat conditionals,
  /// and condition-causality (every condition bit has an earlier Measure).
  void validate() const;
};

/// Append-only builder; every append validates operands, finalize() runs the
/// whole-circuit checks.
class CircuitBuilder {
 public:
  CircuitBuilder(int num_qubits, int num_clbits);

  CircuitBuilder& gate(GateId id, std::vector<int> qubits, std::vector<double> params = {});
  CircuitBuilder& h(int q) { return gate(GateId::H, {q}); }
  CircuitBuilder& x(int q) { return gate(GateId::X, {q}); }
  CircuitBuilder& y(int q) { return gate(GateId::Y, {q}); }
  CircuitBuilder& z(int q) { return gate(GateId::Z, {q}); }
  CircuitBuilder& s(int q) { return gate(GateId::S, {q}); }
  CircuitBuilder& sdg(int q) { return gate(GateId::Sdg, {q}); }
  CircuitBuilder& t(int q) { return gate(GateId::T, {q}); }
  CircuitBuilder& rx(int q, double theta) { return gate(GateId::Rx, {q}, {theta}); }
  CircuitBuilder& ry(int q, double theta) { return gate(GateId::Ry, {q}, {theta}); }
  CircuitBuilder& rz(int q, double theta) { return gate(GateId::Rz, {q}, {theta}); }
  CircuitBuilder& p(int q, double lambda) { return gate(GateId::P, {q}, {lambda}); }
  CircuitBuilder& cx(int c, int t) { return gate(GateId::Cx, {c, t}); }
  CircuitBuilder& cz(int a, int b) { return gate(GateId::Cz, {a, b}); }
  CircuitBuilder& swap(int a, int b) { return gate(GateId::Swap, {a, b}); }
  CircuitBuilder& rzz(int a, int b, double theta) { return gate(GateId::Rzz, {a, b}, {theta}); }
  CircuitBuilder& measure(int qubit, int clbit);
  CircuitBuilder& reset(int qubit);
  CircuitBuilder& conditional(Condition cond, std::vector<Instruction> body);
  CircuitBuilder& append(Instruction instr);

  CircuitBuilder& set_system_qubits(std::set<int> qubits);
  CircuitBuilder& set_name(std::string name);
  CircuitBuilder& set_param(const std::string& key, double value);

  /// Validates and returns the finished circuit.
  Circuit finalize();

 private:
  Circuit circuit_;
};

}  // namespace dynabench

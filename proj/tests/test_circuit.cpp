#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynabench/circuit.hpp"
#include "dynabench/schedule.hpp"
#include "test_helpers.hpp"

using namespace dynabench;
using dynabench::testing::fig1_circuit;
using dynabench::testing::random_dynamic_circuit;

TEST_CASE("builder appends and validates") {
  CircuitBuilder b(3, 1);
  b.h(0).cx(0, 1);
  Circuit c = b.finalize();
  CHECK(c.instructions.size() == 2);
  CHECK(c.num_qubits == 3);
}

TEST_CASE("builder rejects bad operands") {
  CircuitBuilder b(3, 1);
  CHECK_THROWS_AS(b.cx(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(b.h(3), std::invalid_argument);
  CHECK_THROWS_AS(b.measure(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(b.gate(GateId::Rz, {0}, {}), std::invalid_argument);
}

TEST_CASE("condition causality enforced at finalize") {
  Circuit c;
  c.num_qubits = 2;
  c.num_clbits = 1;
  c.instructions.push_back(
      make_conditional(Condition::equals_one(0), {make_gate(GateId::X, {1})}));
  c.instructions.push_back(make_measure(0, 0));
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  CircuitBuilder ok(2, 1);
  ok.measure(0, 0);
  ok.conditional(Condition::equals_one(0), {make_gate(GateId::X, {1})});
  CHECK_NOTHROW(ok.finalize());
}

TEST_CASE("nested conditionals rejected") {
  CircuitBuilder b(2, 1);
  b.measure(0, 0);
  auto inner = make_conditional(Condition::equals_one(0), {make_gate(GateId::X, {1})});
  CHECK_THROWS_AS(b.conditional(Condition::equals_one(0), {inner}), std::invalid_argument);
}

TEST_CASE("fig1 layering") {
  auto sched = layer_schedule(fig1_circuit(), true);
  CHECK(sched.base_depth == 4);
  CHECK(sched.mcm_layer_count == 1);
  CHECK(sched.ff_layer_count == 1);
  REQUIRE(sched.branch_depths.size() == 1);
  CHECK(sched.branch_depths[0] == 1);
}

TEST_CASE("single and parallel gates") {
  CircuitBuilder b(2, 0);
  b.h(0);
  CHECK(layer_schedule(b.finalize(), true).base_depth == 1);

  CircuitBuilder b2(2, 0);
  b2.h(0).h(1);
  auto sched = layer_schedule(b2.finalize(), true);
  CHECK(sched.base_depth == 1);
  CHECK(sched.mcm_layer_count == 0);
  CHECK(sched.ff_layer_count == 0);
}

TEST_CASE("layering is idempotent and deterministic") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Circuit c = random_dynamic_circuit(4, 3, 14, 2, rng);
    auto s1 = layer_schedule(c, true);
    auto s2 = layer_schedule(c, true);
    CHECK(s1.base_layers == s2.base_layers);
    CHECK(s1.branch_depths == s2.branch_depths);
  }
}

TEST_CASE("depth lower bound: longest single-qubit chain") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    Circuit c = random_dynamic_circuit(4, 3, 16, 2, rng);
    std::vector<int> per_qubit(c.num_qubits, 0);
    for (const auto& instr : c.instructions) {
      if (instr.is_conditional()) continue;
      for (int q : instr.qubits()) ++per_qubit[q];
    }
    int longest = *std::max_element(per_qubit.begin(), per_qubit.end());
    CHECK(layer_schedule(c, true).base_depth >= longest);
  }
}

TEST_CASE("permuting operand-disjoint adjacent instructions keeps depth") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    Circuit c = random_dynamic_circuit(5, 3, 14, 0, rng);
    if (c.instructions.size() < 2) continue;
    size_t i = rng.below(c.instructions.size() - 1);
    auto qa = c.instructions[i].qubits();
    auto qb = c.instructions[i + 1].qubits();
    bool disjoint = true;
    for (int a : qa)
      for (int b : qb)
        if (a == b) disjoint = false;
    if (!disjoint) continue;
    int before = layer_schedule(c, true).base_depth;
    std::swap(c.instructions[i], c.instructions[i + 1]);
    CHECK(layer_schedule(c, true).base_depth == before);
  }
}

TEST_CASE("strip_final_measurements") {
  SUBCASE("bell circuit loses terminal measurements") {
    CircuitBuilder b(2, 2);
    b.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
    Circuit stripped = strip_final_measurements(b.finalize());
    CHECK(stripped.instructions.size() == 2);
  }
  SUBCASE("fig1 unchanged: the MCM feeds a condition") {
    Circuit c = fig1_circuit();
    CHECK(strip_final_measurements(c).instructions.size() == c.instructions.size());
  }
  SUBCASE("measure then reset on the same qubit is retained") {
    CircuitBuilder b(1, 1);
    b.measure(0, 0).reset(0);
    CHECK(strip_final_measurements(b.finalize()).instructions.size() == 2);
  }
}

TEST_CASE("classify_qubits") {
  SUBCASE("fig1: ancilla is n1 with D_pre 3") {
    auto cls = classify_qubits(strip_final_measurements(fig1_circuit()));
    CHECK(cls.n1 == 1);
    REQUIRE(cls.n1_qubits.size() == 1);
    CHECK(cls.n1_qubits[0] == 1);
    CHECK(cls.pre_depths[0] == 3);
    CHECK(cls.n2 == 2);
  }
  SUBCASE("no MCM means everything is n2") {
    CircuitBuilder b(3, 0);
    b.h(0).cx(0, 1);
    auto cls = classify_qubits(b.finalize());
    CHECK(cls.n1 == 0);
    CHECK(cls.n2 == 3);
  }
  SUBCASE("measured then reset qubits are n2") {
    CircuitBuilder b(2, 1);
    b.h(0).measure(0, 0).reset(0).h(0);
    auto cls = classify_qubits(strip_final_measurements(b.finalize()));
    CHECK(cls.n1 == 0);
    CHECK(cls.n2 == 2);
  }
}

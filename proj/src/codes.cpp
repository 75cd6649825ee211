#include "dynabench/codes.hpp"

#include <stdexcept>

namespace dynabench {

std::string code_initial_name(CodeInitial initial) {
  switch (initial) {
    case CodeInitial::Zero: return "zero";
    case CodeInitial::One: return "one";
    case CodeInitial::Plus: return "plus";
  }
  throw std::logic_error("unreachable");
}

uint32_t syndrome_of(const CodeTables& code, const PauliString& error) {
  uint32_t s = 0;
  for (size_t i = 0; i < code.stabilizers.size(); ++i) {
    if (!code.stabilizers[i].commutes_with(error)) s |= uint32_t{1} << i;
  }
  return s;
}

CodeTables rep_code_tables(int n_data) {
  if (n_data != 3 && n_data != 5)
    throw std::invalid_argument("repetition code supports n_data in {3,5}");
  CodeTables code;
  code.name = "rep" + std::to_string(n_data);
  code.num_data = n_data;
  for (int i = 0; i + 1 < n_data; ++i) {
    PauliString s(n_data);
    s.set_letter(i, Pauli::Z);
    s.set_letter(i + 1, Pauli::Z);
    code.stabilizers.push_back(s);
    code.check_weights.push_back(2);
  }
  code.logical_x = PauliString(n_data);
  code.logical_z = PauliString(n_data);
  for (int q = 0; q < n_data; ++q) {
    code.logical_x.set_letter(q, Pauli::X);
    code.logical_z.set_letter(q, Pauli::Z);
  }
  // Minimum-weight X correction per syndrome, by enumeration.
  for (uint32_t pattern = 0; pattern < (uint32_t{1} << n_data); ++pattern) {
    PauliString err(n_data);
    for (int q = 0; q < n_data; ++q) {
      if (pattern & (uint32_t{1} << q)) err.set_letter(q, Pauli::X);
    }
    uint32_t s = syndrome_of(code, err);
    auto it = code.decoder.find(s);
    if (it == code.decoder.end() || err.weight() < it->second.weight()) {
      code.decoder[s] = err;
    }
  }
  return code;
}

CodeTables five_qubit_code_tables() {
  CodeTables code;
  code.name = "five_qubit";
  code.num_data = 5;
  for (const char* text : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) {
    code.stabilizers.push_back(PauliString::parse(text));
    code.check_weights.push_back(4);
  }
  code.logical_x = PauliString::parse("XXXXX");
  code.logical_z = PauliString::parse("ZZZZZ");
  code.decoder[0] = PauliString(5);
  // Perfect code: the 15 weight-1 Paulis hit the 15 nonzero syndromes.
  for (int q = 0; q < 5; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliString err = PauliString::single(5, q, p);
      uint32_t s = syndrome_of(code, err);
      if (s == 0 || code.decoder.count(s))
        throw std::logic_error("five-qubit syndrome table degenerate");
      code.decoder[s] = err;
    }
  }
  return code;
}

CodeTables steane_code_tables() {
  CodeTables code;
  code.name = "steane";
  code.num_data = 7;
  // Hamming [7,4,3] checks: check k covers positions (1-based) with bit k set.
  std::vector<std::vector<int>> supports(3);
  for (int pos = 1; pos <= 7; ++pos) {
    for (int k = 0; k < 3; ++k) {
      if (pos & (1 << k)) supports[k].push_back(pos - 1);
    }
  }
  for (int k = 0; k < 3; ++k) {  // X-type plaquettes first
    PauliString s(7);
    for (int q : supports[k]) s.set_letter(q, Pauli::X);
    code.stabilizers.push_back(s);
    code.check_weights.push_back(4);
  }
  for (int k = 0; k < 3; ++k) {  // then Z-type
    PauliString s(7);
    for (int q : supports[k]) s.set_letter(q, Pauli::Z);
    code.stabilizers.push_back(s);
    code.check_weights.push_back(4);
  }
  code.logical_x = PauliString(7);
  code.logical_z = PauliString(7);
  for (int q = 0; q < 7; ++q) {
    code.logical_x.set_letter(q, Pauli::X);
    code.logical_z.set_letter(q, Pauli::Z);
  }
  // CSS lookup: Z-check bits locate X errors, X-check bits locate Z errors.
  for (uint32_t s = 0; s < 64; ++s) {
    uint32_t sx = s & 7;         // X-check bits -> Z correction position
    uint32_t sz = (s >> 3) & 7;  // Z-check bits -> X correction position
    PauliString corr(7);
    if (sz) corr.set_letter(static_cast<int>(sz) - 1, Pauli::X);
    if (sx) {
      int q = static_cast<int>(sx) - 1;
      corr.set_letter(q, corr.letter(q) == Pauli::X ? Pauli::Y : Pauli::Z);
    }
    code.decoder[s] = corr;
  }
  return code;
}

void verify_decoder(const CodeTables& code) {
  if (code.decoder.size() != (size_t{1} << code.num_checks()))
    throw std::logic_error("decoder does not cover all syndromes");
  for (const auto& [s, corr] : code.decoder) {
    if (syndrome_of(code, corr) != s)
      throw std::logic_error("decoder correction does not reproduce its syndrome");
    // corr * error is a logical identity for the errors the table targets;
    // checked behaviorally by the exhaustion tests.
  }
}

}  // namespace dynabench

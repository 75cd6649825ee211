#include "dynabench/qasm.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dynabench {

namespace {

std::string qasm_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_operation(std::ostringstream& out, const Instruction& instr,
                    const std::string& indent) {
  if (instr.is_gate()) {
    const auto& g = instr.gate();
    out << indent << gate_name(g.id);
    if (!g.params.empty()) {
      out << "(";
      for (size_t i = 0; i < g.params.size(); ++i) {
        if (i) out << ", ";
        out << qasm_double(g.params[i]);
      }
      out << ")";
    }
    for (size_t i = 0; i < g.qubits.size(); ++i) {
      out << (i ? ", " : " ") << "q[" << g.qubits[i] << "]";
    }
    out << ";\n";
  } else if (instr.is_measure()) {
    out << indent << "c[" << instr.measure().clbit << "] = measure q["
        << instr.measure().qubit << "];\n";
  } else if (instr.is_reset()) {
    out << indent << "reset q[" << instr.reset().qubit << "];\n";
  } else {
    throw std::invalid_argument("nested conditional in qasm emission");
  }
}

std::string condition_expr(const Condition& cond) {
  std::ostringstream out;
  if (cond.pred == Condition::Pred::EqualsValue) {
    for (size_t i = 0; i < cond.clbits.size(); ++i) {
      if (i) out << " && ";
      out << "(c[" << cond.clbits[i] << "] == " << (cond.value[i] ? 1 : 0) << ")";
    }
  } else {
    out << "(";
    for (size_t i = 0; i < cond.clbits.size(); ++i) {
      if (i) out << " ^ ";
      out << "c[" << cond.clbits[i] << "]";
    }
    out << ") == " << static_cast<int>(cond.parity);
  }
  return out.str();
}

}  // namespace

std::string to_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  if (!c.name.empty()) out << "// dynabench.name: " << c.name << "\n";
  for (const auto& [key, value] : c.params) {
    out << "// dynabench.param: " << key << " " << qasm_double(value) << "\n";
  }
  if (!c.system_qubits.empty()) {
    out << "// dynabench.system_qubits:";
    for (int q : c.system_qubits) out << " " << q;
    out << "\n";
  }
  out << "qubit[" << c.num_qubits << "] q;\n";
  out << "bit[" << c.num_clbits << "] c;\n";
  for (const auto& instr : c.instructions) {
    if (instr.is_conditional()) {
      const auto& cond = instr.conditional();
      if (cond.cond.pred == Condition::Pred::ParityEquals) {
        out << "// dynabench.parity\n";
      }
      out << "if (" << condition_expr(cond.cond) << ") {\n";
      for (const auto& inner : cond.body) emit_operation(out, inner, "  ");
      out << "}\n";
    } else {
      emit_operation(out, instr, "");
    }
  }
  return out.str();
}

namespace {

struct Parser {
  std::istringstream in;
  explicit Parser(const std::string& text) : in(text) {}

  static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  bool next_line(std::string& line) {
    while (std::getline(in, line)) {
      line = trim(line);
      if (!line.empty()) return true;
    }
    return false;
  }
};

int parse_bracket_index(const std::string& text, const std::string& prefix) {
  size_t start = text.find(prefix);
  if (start == std::string::npos) throw std::invalid_argument("qasm: expected " + prefix);
  start += prefix.size();
  size_t end = text.find(']', start);
  return std::stoi(text.substr(start, end - start));
}

// "c[3] == 1" or "(c[3] == 1)"
std::pair<int, uint8_t> parse_equality_atom(std::string expr) {
  expr = Parser::trim(expr);
  while (!expr.empty() && expr.front() == '(' && expr.back() == ')')
    expr = Parser::trim(expr.substr(1, expr.size() - 2));
  size_t eq = expr.find("==");
  if (eq == std::string::npos) throw std::invalid_argument("qasm: expected equality");
  int clbit = parse_bracket_index(expr.substr(0, eq), "c[");
  int value = std::stoi(Parser::trim(expr.substr(eq + 2)));
  return {clbit, static_cast<uint8_t>(value & 1)};
}

Condition parse_condition(std::string expr) {
  expr = Parser::trim(expr);
  // Parity form: (c[a] ^ c[b] ^ ...) == v
  size_t caret = expr.find('^');
  if (caret != std::string::npos) {
    size_t eq = expr.rfind("==");
    if (eq == std::string::npos) throw std::invalid_argument("qasm: bad parity condition");
    uint8_t parity = static_cast<uint8_t>(std::stoi(Parser::trim(expr.substr(eq + 2))) & 1);
    std::string bits_expr = expr.substr(0, eq);
    std::vector<int> clbits;
    size_t pos = 0;
    while ((pos = bits_expr.find("c[", pos)) != std::string::npos) {
      size_t end = bits_expr.find(']', pos);
      clbits.push_back(std::stoi(bits_expr.substr(pos + 2, end - pos - 2)));
      pos = end;
    }
    return Condition::parity_equals(std::move(clbits), parity);
  }
  // Conjunction of equality atoms.
  std::vector<int> clbits;
  std::vector<uint8_t> value;
  size_t pos = 0;
  while (true) {
    size_t amp = expr.find("&&", pos);
    std::string atom = amp == std::string::npos ? expr.substr(pos) : expr.substr(pos, amp - pos);
    auto [clbit, bit] = parse_equality_atom(atom);
    clbits.push_back(clbit);
    value.push_back(bit);
    if (amp == std::string::npos) break;
    pos = amp + 2;
  }
  return Condition::equals(std::move(clbits), std::move(value));
}

Instruction parse_operation(const std::string& line) {
  if (line.rfind("reset ", 0) == 0) {
    return make_reset(parse_bracket_index(line, "q["));
  }
  size_t assign = line.find("= measure");
  if (assign != std::string::npos) {
    int clbit = parse_bracket_index(line.substr(0, assign), "c[");
    int qubit = parse_bracket_index(line.substr(assign), "q[");
    return make_measure(qubit, clbit);
  }
  // gate call: name[(params)] q[i][, q[j]];
  size_t name_end = line.find_first_of(" (");
  std::string name = line.substr(0, name_end);
  auto id = gate_from_name(name);
  if (!id) throw std::invalid_argument("qasm: unsupported statement: " + line);
  std::vector<double> params;
  size_t qubits_start = name_end;
  if (line[name_end] == '(') {
    size_t close = line.find(')', name_end);
    std::string plist = line.substr(name_end + 1, close - name_end - 1);
    std::istringstream pin(plist);
    std::string tok;
    while (std::getline(pin, tok, ',')) params.push_back(std::stod(Parser::trim(tok)));
    qubits_start = close + 1;
  }
  std::vector<int> qubits;
  size_t pos = qubits_start;
  while ((pos = line.find("q[", pos)) != std::string::npos) {
    size_t end = line.find(']', pos);
    qubits.push_back(std::stoi(line.substr(pos + 2, end - pos - 2)));
    pos = end;
  }
  return make_gate(*id, std::move(qubits), std::move(params));
}

}  // namespace

Circuit from_qasm(const std::string& text) {
  Parser parser(text);
  std::string line;
  int num_qubits = -1, num_clbits = -1;
  std::string name;
  std::map<std::string, double> params;
  std::set<int> system_qubits;
  std::vector<Instruction> instructions;

  while (parser.next_line(line)) {
    if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;
    if (line.rfind("// dynabench.name:", 0) == 0) {
      name = Parser::trim(line.substr(18));
      continue;
    }
    if (line.rfind("// dynabench.param:", 0) == 0) {
      std::istringstream pin(line.substr(19));
      std::string key;
      double value;
      pin >> key >> value;
      params[key] = value;
      continue;
    }
    if (line.rfind("// dynabench.system_qubits:", 0) == 0) {
      std::istringstream qin(line.substr(27));
      int q;
      while (qin >> q) system_qubits.insert(q);
      continue;
    }
    if (line.rfind("//", 0) == 0) continue;
    if (line.rfind("qubit[", 0) == 0) {
      num_qubits = parse_bracket_index(line, "qubit[");
      continue;
    }
    if (line.rfind("bit[", 0) == 0) {
      num_clbits = parse_bracket_index(line, "bit[");
      continue;
    }
    if (line.rfind("if ", 0) == 0 || line.rfind("if(", 0) == 0) {
      size_t open = line.find('(');
      size_t close = line.rfind(')');
      Condition cond = parse_condition(line.substr(open + 1, close - open - 1));
      std::vector<Instruction> body;
      bool closed = line.find('}') != std::string::npos;
      while (!closed && parser.next_line(line)) {
        if (line == "}") break;
        body.push_back(parse_operation(line));
      }
      instructions.push_back(make_conditional(std::move(cond), std::move(body)));
      continue;
    }
    instructions.push_back(parse_operation(line));
  }
  if (num_qubits < 0 || num_clbits < 0)
    throw std::invalid_argument("qasm: missing register declarations");

  Circuit c;
  c.num_qubits = num_qubits;
  c.num_clbits = num_clbits;
  c.instructions = std::move(instructions);
  c.system_qubits = std::move(system_qubits);
  c.name = std::move(name);
  c.params = std::move(params);
  c.validate();
  return c;
}

}  // namespace dynabench

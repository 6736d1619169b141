#include "dmetvqe/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "dmetvqe/format.hpp"

namespace dmetvqe::circuit {

namespace {

struct GateInfo {
  GateKind kind;
  const char* name;
  std::size_t qubits;
  std::size_t params;
};

constexpr GateInfo kGates[] = {
    {GateKind::X, "X", 1, 0},   {GateKind::Y, "Y", 1, 0},   {GateKind::Z, "Z", 1, 0},
    {GateKind::H, "H", 1, 0},   {GateKind::RX, "RX", 1, 1}, {GateKind::RZ, "RZ", 1, 1},
    {GateKind::CNOT, "CNOT", 2, 0},
};

const GateInfo& info(GateKind kind) {
  for (const auto& g : kGates) {
    if (g.kind == kind) return g;
  }
  throw InvalidArgument("unknown gate kind");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Gate parse_instruction(const std::string& raw, std::size_t line, std::size_t column_offset) {
  const std::string text = raw;
  std::size_t pos = 0;
  auto column = [&](std::size_t p) { return column_offset + p + 1; };
  while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
  const std::string name = text.substr(0, pos);
  const GateInfo* gi = nullptr;
  for (const auto& g : kGates) {
    if (name == g.name) gi = &g;
  }
  if (gi == nullptr) throw ParseError("unknown gate '" + name + "'", line, column(0));
  Gate gate;
  gate.kind = gi->kind;
  if (pos < text.size() && text[pos] == '(') {
    const auto close = text.find(')', pos);
    if (close == std::string::npos) throw ParseError("missing ')'", line, column(pos));
    std::string body = text.substr(pos + 1, close - pos - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string::npos) comma = body.size();
      const std::string tok = trim(body.substr(start, comma - start));
      double v = 0.0;
      if (!parse_real(tok, v)) {
        throw ParseError("malformed number '" + tok + "'", line, column(pos + 1 + start));
      }
      gate.params.push_back(v);
      start = comma + 1;
    }
    pos = close + 1;
  }
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    Index q = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      q = q * 10 + static_cast<Index>(text[pos] - '0');
      ++pos;
    }
    if (pos == start || (pos < text.size() && text[pos] != ' ' && text[pos] != '\t')) {
      throw ParseError("malformed qubit index", line, column(start));
    }
    gate.qubits.push_back(q);
  }
  if (gate.qubits.size() != gi->qubits || gate.params.size() != gi->params) {
    throw ParseError("arity mismatch for " + name, line, column(0));
  }
  if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw ParseError("CNOT control and target coincide", line, column(0));
  }
  return gate;
}

}  // namespace

std::string gate_name(GateKind kind) { return info(kind).name; }

void Gate::validate() const {
  const GateInfo& gi = info(kind);
  if (qubits.size() != gi.qubits || params.size() != gi.params) {
    throw InvalidArgument(std::string("arity mismatch for ") + gi.name);
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw InvalidArgument("CNOT control and target coincide");
  }
}

Gate make_gate(GateKind kind, std::vector<Index> qubits, std::vector<double> params) {
  Gate g{kind, std::move(params), std::move(qubits)};
  g.validate();
  return g;
}

Index Program::qubit_span() const noexcept {
  Index n = 0;
  for (const auto& g : instructions) {
    for (Index q : g.qubits) n = std::max(n, q + 1);
  }
  return n;
}

Program& Program::append(const Program& other) {
  instructions.insert(instructions.end(), other.instructions.begin(), other.instructions.end());
  return *this;
}

Program& Program::append(Gate g) {
  instructions.push_back(std::move(g));
  return *this;
}

Program TimeSlicedProgram::flatten() const {
  Program p;
  for (const auto& s : slices) p.instructions.insert(p.instructions.end(), s.begin(), s.end());
  return p;
}

Program parse_program(const std::string& text) {
  Program p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    p.instructions.push_back(
        parse_instruction(line.substr(first, last - first + 1), lineno, first));
  }
  return p;
}

std::string print_gate(const Gate& gate) {
  std::string out = gate_name(gate.kind);
  if (!gate.params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < gate.params.size(); ++i) {
      if (i) out += ", ";
      out += format_real(gate.params[i]);
    }
    out += ')';
  }
  for (Index q : gate.qubits) out += " " + std::to_string(q);
  return out;
}

std::string print_program(const Program& program) {
  std::string out;
  for (const auto& g : program.instructions) out += print_gate(g) + "\n";
  return out;
}

Program exponentiate_term(const pauli::PauliTerm& term) {
  constexpr double kImagTol = 1e-12;
  if (std::abs(term.coefficient().imag()) > kImagTol) {
    throw InvalidArgument("exponentiate_term needs a real coefficient, got " + term.to_string());
  }
  Program p;
  if (term.is_identity()) return p;
  const double c = term.coefficient().real();
  const auto& word = term.word();
  const double half_pi = std::numbers::pi / 2.0;

  auto change_basis = [&](bool into) {
    for (const auto& [q, l] : word) {
      if (l == pauli::Label::X) p.append(make_gate(GateKind::H, {q}));
      if (l == pauli::Label::Y) p.append(make_gate(GateKind::RX, {q}, {into ? half_pi : -half_pi}));
    }
  };
  change_basis(true);
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    p.append(make_gate(GateKind::CNOT, {word[i].first, word[i + 1].first}));
  }
  p.append(make_gate(GateKind::RZ, {word.back().first}, {2.0 * c}));
  for (std::size_t i = word.size() - 1; i-- > 0;) {
    p.append(make_gate(GateKind::CNOT, {word[i].first, word[i + 1].first}));
  }
  change_basis(false);
  return p;
}

Program exponentiate_sum(const pauli::PauliSum& sum, double scale) {
  Program p;
  const pauli::PauliSum simplified = pauli::simplify(sum);
  for (const auto& t : simplified.terms()) {
    p.append(exponentiate_term(t.with_coefficient(t.coefficient() * scale)));
  }
  return p;
}

Program trotterize(const pauli::PauliSum& a, const pauli::PauliSum& b, int order, int steps) {
  if (order != 1 && order != 2) throw InvalidArgument("Trotter order must be 1 or 2");
  if (steps < 1) throw InvalidArgument("Trotter steps must be at least 1");
  const double n = static_cast<double>(steps);
  Program step;
  if (order == 1) {
    step.append(exponentiate_sum(a, 1.0 / n));
    step.append(exponentiate_sum(b, 1.0 / n));
  } else {
    const Program half_a = exponentiate_sum(a, 0.5 / n);
    step.append(half_a);
    step.append(exponentiate_sum(b, 1.0 / n));
    step.append(half_a);
  }
  Program p;
  for (int s = 0; s < steps; ++s) p.append(step);
  return p;
}

TimeSlicedProgram parallelize(const Program& program) {
  TimeSlicedProgram tp;
  std::map<Index, std::size_t> next_free;  // qubit -> first slice it may use
  for (const auto& g : program.instructions) {
    std::size_t slot = 0;
    for (Index q : g.qubits) {
      auto it = next_free.find(q);
      if (it != next_free.end()) slot = std::max(slot, it->second);
    }
    if (slot >= tp.slices.size()) tp.slices.resize(slot + 1);
    tp.slices[slot].push_back(g);
    for (Index q : g.qubits) next_free[q] = slot + 1;
  }
  return tp;
}

GateStats gate_stats(const TimeSlicedProgram& tp) {
  GateStats s;
  s.slice_count = tp.slices.size();
  if (s.slice_count == 0) return s;
  std::size_t one = 0;
  std::size_t two = 0;
  for (const auto& slice : tp.slices) {
    for (const auto& g : slice) (g.is_two_qubit() ? two : one)++;
  }
  s.one_qubit_per_slice = static_cast<double>(one) / static_cast<double>(s.slice_count);
  s.two_qubit_per_slice = static_cast<double>(two) / static_cast<double>(s.slice_count);
  return s;
}

std::string print_time_sliced(const TimeSlicedProgram& tp) {
  auto label = [](std::size_t k) { return "Time Slice #" + std::to_string(k) + ":"; };
  const std::size_t width = label(tp.slices.size()).size() + 1;
  std::string out;
  for (std::size_t k = 0; k < tp.slices.size(); ++k) {
    const auto& slice = tp.slices[k];
    for (std::size_t i = 0; i < slice.size(); ++i) {
      std::string head = i == 0 ? label(k + 1) : std::string();
      head.resize(width, ' ');
      out += head + print_gate(slice[i]) + "\n";
    }
  }
  return out;
}

TimeSlicedProgram parse_time_sliced(const std::string& text) {
  TimeSlicedProgram tp;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  const std::string prefix = "Time Slice #";
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t body = first;
    if (line.compare(first, prefix.size(), prefix) == 0) {
      const auto colon = line.find(':', first);
      if (colon == std::string::npos) throw ParseError("missing ':' after slice label", lineno, first + 1);
      tp.slices.emplace_back();
      body = line.find_first_not_of(" \t", colon + 1);
      if (body == std::string::npos) continue;
    } else if (tp.slices.empty()) {
      throw ParseError("gate listed before the first time slice", lineno, first + 1);
    }
    const auto last = line.find_last_not_of(" \t\r");
    tp.slices.back().push_back(parse_instruction(line.substr(body, last - body + 1), lineno, body));
  }
  return tp;
}

}  // namespace dmetvqe::circuit

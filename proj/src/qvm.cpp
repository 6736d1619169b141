#include "dmetvqe/qvm.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace dmetvqe::qvm {

namespace {

constexpr Complex kI{0.0, 1.0};

struct PauliMasks {
  std::uint64_t flip = 0;   // X or Y
  std::uint64_t phase = 0;  // Y or Z
  int y_count = 0;
};

PauliMasks masks_of(const pauli::Word& word, Index n_qubits) {
  PauliMasks m;
  for (const auto& [q, l] : word) {
    if (q >= n_qubits) throw InvalidArgument("Pauli term acts outside the register");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (l != pauli::Label::Z) m.flip |= bit;
    if (l != pauli::Label::X) m.phase |= bit;
    if (l == pauli::Label::Y) ++m.y_count;
  }
  return m;
}

// P|x> = phase(x) |x ^ flip>; phase(x) = i^{#Y} (-1)^{popcount(x & phase)}.
Complex word_phase(const PauliMasks& m, std::uint64_t x) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = kIPow[m.y_count % 4];
  return (std::popcount(x & m.phase) & 1) ? -base : base;
}

}  // namespace

StateVector::StateVector(Index n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > 30) throw InvalidArgument("register too large for a dense statevector");
  amps_ = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  amps_(0) = 1.0;
}

StateVector::StateVector(Index n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidArgument("amplitude count does not match qubit count");
  }
}

StateVector StateVector::basis_state(Index n_qubits, std::uint64_t bits) {
  StateVector s(n_qubits);
  s.amps_.setZero();
  s.amps_(static_cast<Eigen::Index>(bits)) = 1.0;
  return s;
}

void StateVector::apply(const circuit::Gate& gate) {
  using circuit::GateKind;
  gate.validate();
  for (Index q : gate.qubits) {
    if (q >= n_qubits_) throw InvalidArgument("qubit index out of range in " + circuit::print_gate(gate));
  }
  const auto dim = static_cast<std::uint64_t>(amps_.size());
  Complex* a = amps_.data();
  if (gate.kind == GateKind::CNOT) {
    const std::uint64_t c = std::uint64_t{1} << gate.qubits[0];
    const std::uint64_t t = std::uint64_t{1} << gate.qubits[1];
    for (std::uint64_t x = 0; x < dim; ++x) {
      if ((x & c) && !(x & t)) std::swap(a[x], a[x | t]);
    }
    return;
  }
  const std::uint64_t bit = std::uint64_t{1} << gate.qubits[0];
  // 2x2 matrix [[m00, m01], [m10, m11]] on the target qubit.
  Complex m00, m01, m10, m11;
  switch (gate.kind) {
    case GateKind::X: m00 = 0; m01 = 1; m10 = 1; m11 = 0; break;
    case GateKind::Y: m00 = 0; m01 = -kI; m10 = kI; m11 = 0; break;
    case GateKind::Z: m00 = 1; m01 = 0; m10 = 0; m11 = -1; break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m00 = r; m01 = r; m10 = r; m11 = -r;
      break;
    }
    case GateKind::RX: {
      const double h = gate.params[0] / 2.0;
      m00 = std::cos(h); m11 = m00; m01 = -kI * std::sin(h); m10 = m01;
      break;
    }
    case GateKind::RZ: {
      const double h = gate.params[0] / 2.0;
      m00 = std::polar(1.0, -h); m11 = std::polar(1.0, h); m01 = 0; m10 = 0;
      break;
    }
    default: throw InvalidArgument("unsupported gate");
  }
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (x & bit) continue;
    const Complex v0 = a[x];
    const Complex v1 = a[x | bit];
    a[x] = m00 * v0 + m01 * v1;
    a[x | bit] = m10 * v0 + m11 * v1;
  }
}

void StateVector::apply(const circuit::Program& program) {
  for (const auto& g : program.instructions) apply(g);
}

void StateVector::apply_pauli_rotation(const pauli::Word& word, double angle) {
  const PauliMasks m = masks_of(word, n_qubits_);
  const Complex c = std::cos(angle);
  const Complex is = kI * std::sin(angle);
  ComplexVector out = c * amps_;
  const auto dim = static_cast<std::uint64_t>(amps_.size());
  for (std::uint64_t x = 0; x < dim; ++x) {
    out(static_cast<Eigen::Index>(x ^ m.flip)) += is * word_phase(m, x) * amps_(static_cast<Eigen::Index>(x));
  }
  amps_ = std::move(out);
}

StateVector run(const circuit::Program& program, Index n_qubits) {
  return run(program, StateVector(n_qubits));
}

StateVector run(const circuit::Program& program, StateVector initial) {
  initial.apply(program);
  return initial;
}

Complex term_expectation(const StateVector& state, const pauli::PauliTerm& term) {
  const PauliMasks m = masks_of(term.word(), state.qubit_count());
  const ComplexVector& a = state.amplitudes();
  const auto dim = static_cast<std::uint64_t>(a.size());
  Complex acc = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    acc += std::conj(a(static_cast<Eigen::Index>(x ^ m.flip))) * word_phase(m, x) *
           a(static_cast<Eigen::Index>(x));
  }
  return term.coefficient() * acc;
}

double expectation(const StateVector& state, const pauli::PauliSum& h) {
  constexpr double kImagTol = 1e-10;
  double total = 0.0;
  const pauli::PauliSum simplified = pauli::simplify(h, 0.0);
  for (const auto& t : simplified.terms()) {
    if (std::abs(t.coefficient().imag()) > kImagTol) {
      throw InvalidArgument("expectation needs a Hermitian operator");
    }
    total += term_expectation(state, t).real();
  }
  return total;
}

ShotRecord sample_z(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw InvalidArgument("shot count must be positive");
  const ComplexVector& a = state.amplitudes();
  std::vector<double> probs(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) probs[static_cast<std::size_t>(i)] = std::norm(a(i));
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
  std::map<std::uint64_t, std::size_t> raw;
  for (std::size_t s = 0; s < shots; ++s) ++raw[dist(rng)];
  ShotRecord rec;
  rec.seed = seed;
  rec.shots = shots;
  for (const auto& [x, n] : raw) {
    std::string bits(state.qubit_count(), '0');
    for (Index q = 0; q < state.qubit_count(); ++q) {
      if ((x >> q) & 1) bits[q] = '1';
    }
    rec.counts[bits] = n;
  }
  return rec;
}

}  // namespace dmetvqe::qvm

// Dense reference constructions shared by the test suites. Everything here is
// built from explicit matrices, independent of the library's sparse paths.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dmetvqe/circuit.hpp"
#include "dmetvqe/fermion.hpp"
#include "dmetvqe/pauli.hpp"
#include "dmetvqe/rdm.hpp"

namespace oracle {

using dmetvqe::Complex;
using dmetvqe::ComplexMatrix;
using dmetvqe::ComplexVector;
using dmetvqe::Index;
using dmetvqe::Matrix;

inline ComplexMatrix pauli_2x2(dmetvqe::pauli::Label l) {
  ComplexMatrix m(2, 2);
  const Complex i{0.0, 1.0};
  switch (l) {
    case dmetvqe::pauli::Label::X:
      m << 0, 1, 1, 0;
      break;
    case dmetvqe::pauli::Label::Y:
      m << 0, -i, i, 0;
      break;
    case dmetvqe::pauli::Label::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

/// Kronecker product with qubit 0 as the least significant factor.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Single-qubit operator `op` on qubit q of n.
inline ComplexMatrix embed(const ComplexMatrix& op, Index q, Index n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (Index k = n; k-- > 0;) out = kron(out, k == q ? op : ComplexMatrix::Identity(2, 2));
  return out;
}

inline ComplexMatrix term_matrix(const dmetvqe::pauli::PauliTerm& t, Index n) {
  ComplexMatrix m = ComplexMatrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& [q, l] : t.word()) m = embed(pauli_2x2(l), q, n) * m;
  return t.coefficient() * m;
}

inline ComplexMatrix sum_matrix(const dmetvqe::pauli::PauliSum& s, Index n) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& t : s.terms()) m += term_matrix(t, n);
  return m;
}

/// Annihilation operator on mode p of n modes, built directly on occupation
/// bitstrings: a_p |x> = (-1)^{popcount(x below p)} |x without p>.
inline Matrix lower(Index p, Index n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix a = Matrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
    if (!((x >> p) & 1U)) continue;
    const int sign = (std::popcount(x & ((std::uint64_t{1} << p) - 1)) % 2) ? -1 : 1;
    a(static_cast<Eigen::Index>(x & ~(std::uint64_t{1} << p)), static_cast<Eigen::Index>(x)) = sign;
  }
  return a;
}

inline Matrix raise(Index p, Index n) { return lower(p, n).transpose(); }

/// Dense spin-orbital Hamiltonian of `ts` over 2 * orbital_count modes.
inline Matrix fermion_hamiltonian(const dmetvqe::fermion::IntegralTensors& ts) {
  const auto so = dmetvqe::fermion::to_spin_orbital(ts);
  const Index n = so.orbital_count();
  std::vector<Matrix> a, ad;
  for (Index p = 0; p < n; ++p) {
    a.push_back(lower(p, n));
    ad.push_back(raise(p, n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = so.constant * Matrix::Identity(dim, dim);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double v = so.h1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v != 0.0) h += v * ad[i] * a[j];
    }
  for (const auto& [key, v] : so.v2.entries()) {
    const auto [i, j, k, l] = key;
    h += 0.5 * v * ad[i] * ad[j] * a[l] * a[k];
  }
  return h;
}

/// Lowest eigenvalue of `h` restricted to basis states with `n_particles`
/// set bits (and, if twice_sz is given, that alpha-beta imbalance on
/// interleaved spins).
inline double sector_ground(const Matrix& h, Index n_modes, Index n_particles, int twice_sz = 0,
                            bool fix_sz = true) {
  std::vector<Eigen::Index> idx;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_modes); ++x) {
    if (static_cast<Index>(std::popcount(x)) != n_particles) continue;
    if (fix_sz) {
      int sz = 0;
      for (Index p = 0; p < n_modes; ++p)
        if ((x >> p) & 1U) sz += (p % 2 == 0) ? 1 : -1;
      if (sz != twice_sz) continue;
    }
    idx.push_back(static_cast<Eigen::Index>(x));
  }
  Matrix sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = h(idx[r], idx[c]);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sub);
  return eig.eigenvalues()(0);
}

/// exp(-i t H) for Hermitian H.
inline ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const ComplexVector phases = (eig.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Unitary of a single gate on n qubits from its textbook matrix.
inline ComplexMatrix gate_unitary(const dmetvqe::circuit::Gate& g, Index n) {
  using dmetvqe::circuit::GateKind;
  const Complex i{0.0, 1.0};
  ComplexMatrix u(2, 2);
  switch (g.kind) {
    case GateKind::X:
      return embed(pauli_2x2(dmetvqe::pauli::Label::X), g.qubits[0], n);
    case GateKind::Y:
      return embed(pauli_2x2(dmetvqe::pauli::Label::Y), g.qubits[0], n);
    case GateKind::Z:
      return embed(pauli_2x2(dmetvqe::pauli::Label::Z), g.qubits[0], n);
    case GateKind::H:
      u << 1, 1, 1, -1;
      return embed(u / std::sqrt(2.0), g.qubits[0], n);
    case GateKind::RX: {
      const double th = g.params[0];
      u << std::cos(th / 2), -i * std::sin(th / 2), -i * std::sin(th / 2), std::cos(th / 2);
      return embed(u, g.qubits[0], n);
    }
    case GateKind::RZ: {
      const double th = g.params[0];
      u << std::exp(-i * (th / 2)), 0, 0, std::exp(i * (th / 2));
      return embed(u, g.qubits[0], n);
    }
    case GateKind::CNOT: {
      const Eigen::Index dim = Eigen::Index{1} << n;
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index x = 0; x < dim; ++x) {
        const Eigen::Index y = ((x >> g.qubits[0]) & 1) ? (x ^ (Eigen::Index{1} << g.qubits[1])) : x;
        m(y, x) = 1.0;
      }
      return m;
    }
  }
  return {};
}

inline ComplexMatrix program_unitary(const dmetvqe::circuit::Program& p, Index n) {
  ComplexMatrix u = ComplexMatrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& g : p.instructions) u = gate_unitary(g, n) * u;
  return u;
}

/// |<a|b>| up to a global phase, for normalized vectors.
inline double overlap(const ComplexVector& a, const ComplexVector& b) { return std::abs(a.dot(b)); }

inline dmetvqe::circuit::Program random_program(std::mt19937_64& rng, Index n_qubits, std::size_t length) {
  using dmetvqe::circuit::GateKind;
  using dmetvqe::circuit::make_gate;
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<Index> qubit(0, n_qubits - 1);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  dmetvqe::circuit::Program p;
  for (std::size_t k = 0; k < length; ++k) {
    const int g = n_qubits > 1 ? kind(rng) : kind(rng) % 6;
    const Index q = qubit(rng);
    switch (g) {
      case 0: p.append(make_gate(GateKind::X, {q})); break;
      case 1: p.append(make_gate(GateKind::Y, {q})); break;
      case 2: p.append(make_gate(GateKind::Z, {q})); break;
      case 3: p.append(make_gate(GateKind::H, {q})); break;
      case 4: p.append(make_gate(GateKind::RX, {q}, {angle(rng)})); break;
      case 5: p.append(make_gate(GateKind::RZ, {q}, {angle(rng)})); break;
      default: {
        Index r = qubit(rng);
        while (r == q) r = qubit(rng);
        p.append(make_gate(GateKind::CNOT, {q, r}));
      }
    }
  }
  return p;
}

/// Spin-orbital RDMs of the closed-shell determinant with per-spin density
/// `rho` (spatial): D2(i,j,k,l) = D1(i,k) D1(j,l) - D1(i,l) D1(j,k).
inline dmetvqe::RDMPair slater_rdms(const Matrix& rho) {
  const Index n = 2 * static_cast<Index>(rho.rows());
  dmetvqe::RDMPair r;
  r.one_rdm = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index p = 0; p < rho.rows(); ++p)
    for (Eigen::Index q = 0; q < rho.rows(); ++q)
      for (Eigen::Index s = 0; s < 2; ++s) r.one_rdm(2 * p + s, 2 * q + s) = rho(p, q);
  r.two_rdm = dmetvqe::DenseTensor4(n);
  const Matrix& d = r.one_rdm;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          r.two_rdm(i, j, k, l) = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                                      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) -
                                  d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) *
                                      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  return r;
}

/// RDMs of a qubit state from dense ladder matrices, qubit p == mode p.
inline dmetvqe::RDMPair state_rdms(const ComplexVector& psi, Index n) {
  std::vector<Matrix> a;
  for (Index p = 0; p < n; ++p) a.push_back(lower(p, n));
  dmetvqe::RDMPair r;
  r.one_rdm = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  r.two_rdm = dmetvqe::DenseTensor4(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ComplexVector aj = a[j].cast<Complex>() * psi;
      const ComplexVector ai = a[i].cast<Complex>() * psi;
      r.one_rdm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ai.dot(aj).real();
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          // <psi| a+_i a+_j a_l a_k |psi> = <a_j a_i psi | a_l a_k psi>
          const ComplexVector left = (a[j] * a[i]).cast<Complex>() * psi;
          const ComplexVector right = (a[l] * a[k]).cast<Complex>() * psi;
          r.two_rdm(i, j, k, l) = left.dot(right).real();
        }
    }
  return r;
}

}  // namespace oracle

#include "dmetvqe/vqe.hpp"

#include <cmath>
#include <iostream>

namespace dmetvqe::vqe {

using fermion::annihilate;
using fermion::create;
using fermion::FermionSum;
using fermion::spin_orbital;

Index UCCSDAnsatz::amplitude_count() const noexcept {
  const Index ns = excitation_count();
  return 2 * ns + ns * (ns == 0 ? 0 : ns - 1) / 2;
}

std::vector<std::pair<Index, Index>> UCCSDAnsatz::excitations() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < virtual_count(); ++a) {
    for (Index i = 0; i < n_occupied; ++i) out.emplace_back(n_occupied + a, i);
  }
  return out;
}

std::vector<std::pair<Index, Index>> UCCSDAnsatz::excitation_pairs() const {
  std::vector<std::pair<Index, Index>> out;
  const Index ns = excitation_count();
  for (Index s = 0; s < ns; ++s) {
    for (Index t = s + 1; t < ns; ++t) out.emplace_back(s, t);
  }
  return out;
}

std::uint64_t UCCSDAnsatz::reference_occupation() const noexcept {
  return n_occupied == 0 ? 0 : (std::uint64_t{1} << (2 * n_occupied)) - 1;
}

circuit::Program reference_program(std::uint64_t occupation) {
  circuit::Program p;
  for (Index q = 0; q < 64; ++q) {
    if ((occupation >> q) & 1U) p.append(circuit::make_gate(circuit::GateKind::X, {q}));
  }
  return p;
}

namespace {

// Excitation operators (without de-excitation) of amplitude k, unit weight.
std::vector<std::vector<fermion::LadderOp>> unit_excitations(const UCCSDAnsatz& ansatz, Index k) {
  const auto ex = ansatz.excitations();
  const Index ns = ex.size();
  std::vector<std::vector<fermion::LadderOp>> out;
  if (k < ns) {
    const auto [a, i] = ex[k];
    for (Index s = 0; s < 2; ++s) out.push_back({create(spin_orbital(a, s)), annihilate(spin_orbital(i, s))});
  } else if (k < 2 * ns) {
    const auto [a, i] = ex[k - ns];
    out.push_back({create(spin_orbital(a, 0)), annihilate(spin_orbital(i, 0)), create(spin_orbital(a, 1)),
                   annihilate(spin_orbital(i, 1))});
  } else {
    const auto pairs = ansatz.excitation_pairs();
    const auto [s1, s2] = pairs.at(k - 2 * ns);
    const auto [a1, i1] = ex[s1];
    const auto [a2, i2] = ex[s2];
    for (Index sa = 0; sa < 2; ++sa) {
      for (Index sb = 0; sb < 2; ++sb) {
        out.push_back({create(spin_orbital(a1, sa)), annihilate(spin_orbital(i1, sa)),
                       create(spin_orbital(a2, sb)), annihilate(spin_orbital(i2, sb))});
      }
    }
  }
  return out;
}

FermionSum unit_generator(const UCCSDAnsatz& ansatz, Index k, double theta) {
  FermionSum g;
  for (auto& ops : unit_excitations(ansatz, k)) {
    fermion::FermionTerm t{theta, std::move(ops)};
    g.add(t.adjoint().coefficient * -1.0, t.adjoint().ops);
    g.add(t);
  }
  return g;
}

void check_length(const Vector& theta, const UCCSDAnsatz& ansatz) {
  if (static_cast<Index>(theta.size()) != ansatz.amplitude_count()) {
    throw InvalidArgument("amplitude vector length " + std::to_string(theta.size()) + " does not match ansatz (" +
                          std::to_string(ansatz.amplitude_count()) + ")");
  }
}

}  // namespace

ClusterGenerator cluster_generator(const Vector& theta, const UCCSDAnsatz& ansatz) {
  check_length(theta, ansatz);
  ClusterGenerator gen;
  const Index ns = ansatz.excitation_count();
  for (Index k = 0; k < ansatz.amplitude_count(); ++k) {
    const double th = theta(static_cast<Eigen::Index>(k));
    if (th == 0.0) continue;
    (k < ns ? gen.singles : gen.doubles) += unit_generator(ansatz, k, th);
  }
  return gen;
}

CompiledAnsatz::CompiledAnsatz(UCCSDAnsatz ansatz) : ansatz_(ansatz) {
  if (ansatz_.n_occupied > ansatz_.n_spatial) throw InvalidArgument("more occupied orbitals than orbitals");
  constexpr Complex kI{0.0, 1.0};
  for (Index k = 0; k < ansatz_.amplitude_count(); ++k) {
    pauli::PauliSum img = pauli::jw_transform(unit_generator(ansatz_, k, 1.0));
    img *= kI;
    for (const auto& t : img.terms()) {
      if (std::abs(t.coefficient().imag()) > 1e-10) {
        throw NumericalError("generator image is not anti-Hermitian: " + t.to_string());
      }
    }
    unit_images_.push_back(std::move(img));
  }
}

std::pair<pauli::PauliSum, pauli::PauliSum> CompiledAnsatz::rotation_sums(const Vector& theta) const {
  check_length(theta, ansatz_);
  const Index ns = ansatz_.excitation_count();
  pauli::PauliSum singles;
  pauli::PauliSum doubles;
  for (Index k = 0; k < unit_images_.size(); ++k) {
    const double th = theta(static_cast<Eigen::Index>(k));
    if (th == 0.0) continue;
    pauli::PauliSum scaled = unit_images_[k];
    scaled *= th;
    (k < ns ? singles : doubles) += scaled;
  }
  auto realify = [](const pauli::PauliSum& s) {
    std::vector<pauli::PauliTerm> terms;
    const pauli::PauliSum simplified = pauli::simplify(s, 1e-14);
    for (const auto& t : simplified.terms()) {
      if (std::abs(t.coefficient().imag()) > 1e-10) throw NumericalError("residual imaginary rotation coefficient");
      terms.push_back(t.with_coefficient(t.coefficient().real()));
    }
    return pauli::PauliSum(std::move(terms));
  };
  return {realify(singles), realify(doubles)};
}

circuit::Program CompiledAnsatz::program(const Vector& theta) const {
  auto [a, b] = rotation_sums(theta);
  circuit::Program p = reference_program(ansatz_.reference_occupation());
  p.append(circuit::trotterize(a, b, ansatz_.trotter_order, ansatz_.trotter_steps));
  return p;
}

qvm::StateVector CompiledAnsatz::state(const Vector& theta) const {
  return qvm::run(program(theta), ansatz_.qubit_count());
}

circuit::Program ansatz_program(const Vector& theta, const UCCSDAnsatz& ansatz) {
  return CompiledAnsatz(ansatz).program(theta);
}

Vector reference_orbital_energies(const fermion::IntegralTensors& ts, Index n_occupied) {
  if (!ts.is_spatial()) throw InvalidArgument("reference energies need spatial integrals");
  const Index n = ts.orbital_count();
  Vector eps = ts.h1.diagonal();
  // Closed-shell Fock diagonal: f_pp = h_pp + sum_j occ (2 V(p,j,p,j) - V(p,j,j,p)).
  for (Index p = 0; p < n; ++p) {
    for (Index j = 0; j < n_occupied; ++j) {
      eps(static_cast<Eigen::Index>(p)) += 2.0 * ts.v2(p, j, p, j) - ts.v2(p, j, j, p);
    }
  }
  return eps;
}

Vector mp2_guess(const fermion::IntegralTensors& ts, const UCCSDAnsatz& ansatz) {
  if (ts.orbital_count() != ansatz.n_spatial) throw InvalidArgument("integral dimension does not match ansatz");
  const Vector eps = reference_orbital_energies(ts, ansatz.n_occupied);
  Vector theta = Vector::Zero(static_cast<Eigen::Index>(ansatz.amplitude_count()));
  constexpr double kMinDenominator = 1e-8;
  bool degenerate = false;
  // Opposite-spin amplitude t(i_alpha j_beta -> a_alpha b_beta) = V(a,b,i,j) / (e_i + e_j - e_a - e_b);
  // the exchange part vanishes between opposite spins.
  auto amplitude = [&](Index a, Index i, Index b, Index j) {
    const double denom = eps(static_cast<Eigen::Index>(i)) + eps(static_cast<Eigen::Index>(j)) -
                         eps(static_cast<Eigen::Index>(a)) - eps(static_cast<Eigen::Index>(b));
    const double num = ts.v2(a, b, i, j);
    if (num == 0.0) return 0.0;
    if (std::abs(denom) < kMinDenominator) {
      degenerate = true;
      return 0.0;
    }
    return num / denom;
  };
  const auto ex = ansatz.excitations();
  const Index ns = ex.size();
  for (Index k = 0; k < ns; ++k) {
    const auto [a, i] = ex[k];
    theta(static_cast<Eigen::Index>(ns + k)) = amplitude(a, i, a, i);
  }
  const auto pairs = ansatz.excitation_pairs();
  for (Index k = 0; k < pairs.size(); ++k) {
    const auto [a1, i1] = ex[pairs[k].first];
    const auto [a2, i2] = ex[pairs[k].second];
    theta(static_cast<Eigen::Index>(2 * ns + k)) = amplitude(a1, i1, a2, i2);
  }
  if (degenerate) {
    std::cerr << "warning: vanishing MP2 denominator, using a zero amplitude guess\n";
    theta.setZero();
  }
  return theta;
}

RDMPair measure_rdms(const qvm::StateVector& state, Index n_electrons, double* max_asymmetry) {
  const Index n = state.qubit_count();
  RDMPair out;
  out.two_rdm = DenseTensor4(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = k + 1; l < n; ++l) {
          fermion::FermionTerm op{1.0, {create(i), create(j), annihilate(l), annihilate(k)}};
          Complex v = 0.0;
          const pauli::PauliSum image = pauli::jw_transform(op);
          for (const auto& t : image.terms()) v += qvm::term_expectation(state, t);
          out.two_rdm(i, j, k, l) = v.real();
          out.two_rdm(j, i, k, l) = -v.real();
          out.two_rdm(i, j, l, k) = -v.real();
          out.two_rdm(j, i, l, k) = v.real();
        }
  if (n_electrons >= 2) {
    out.one_rdm = rdm::contract_one_rdm(out.two_rdm, static_cast<double>(n_electrons));
  } else {
    const auto nn = static_cast<Eigen::Index>(n);
    out.one_rdm = Matrix::Zero(nn, nn);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        fermion::FermionTerm op{1.0, {create(i), annihilate(j)}};
        Complex v = 0.0;
        const pauli::PauliSum image = pauli::jw_transform(op);
        for (const auto& t : image.terms()) v += qvm::term_expectation(state, t);
        out.one_rdm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v.real();
      }
  }
  const double asym = rdm::symmetrize(out);
  if (max_asymmetry != nullptr) *max_asymmetry = asym;
  return out;
}

pauli::PauliSum qubit_hamiltonian(const fermion::IntegralTensors& ts) {
  return pauli::jw_transform(fermion::tensors_to_fermion_sum(ts));
}

VQEResult minimize(const fermion::IntegralTensors& ts, const UCCSDAnsatz& ansatz, const VQEOptions& options,
                   const Vector& theta0) {
  const CompiledAnsatz compiled(ansatz);
  const pauli::PauliSum h = pauli::simplify(qubit_hamiltonian(ts));
  if (!pauli::is_hermitian(h)) throw InvalidArgument("VQE Hamiltonian is not Hermitian");
  const optimize::Objective energy = [&](const Vector& theta) {
    return qvm::expectation(compiled.state(theta), h);
  };
  Vector start = theta0;
  if (start.size() == 0) {
    start = options.mp2_start ? mp2_guess(ts, ansatz)
                              : Vector::Zero(static_cast<Eigen::Index>(ansatz.amplitude_count()));
  }
  const optimize::OptimizationResult opt = optimize::bfgs_minimize(energy, start, options.bfgs);
  VQEResult res;
  res.theta = opt.x;
  const qvm::StateVector psi = compiled.state(opt.x);
  res.energy = qvm::expectation(psi, h);
  res.iterations = opt.iterations;
  res.evaluations = opt.evaluations;
  res.converged = opt.converged;
  res.rdms = measure_rdms(psi, ansatz.electron_count(), &res.rdm_asymmetry);
  return res;
}

fermion::IntegralTensors rotate_integrals(const fermion::IntegralTensors& ts, const Matrix& rotation) {
  if (!ts.is_spatial()) throw InvalidArgument("rotation needs spatial integrals");
  fermion::IntegralTensors out;
  out.basis = ts.basis;
  out.constant = ts.constant;
  out.h1 = rotation.transpose() * ts.h1 * rotation;
  out.v2 = ts.v2.transformed(rotation);
  return out;
}

RDMPair rotate_rdms(const RDMPair& rdms, const Matrix& rotation) {
  const Eigen::Index ns = rotation.rows();
  const Index n = 2 * static_cast<Index>(ns);
  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < ns; ++i)
    for (Eigen::Index p = 0; p < ns; ++p)
      for (Eigen::Index s = 0; s < 2; ++s) r(2 * i + s, 2 * p + s) = rotation(i, p);
  RDMPair out;
  out.one_rdm = r * rdms.one_rdm * r.transpose();
  // Four successive one-index transforms: D'(a,...) = sum_p R(a,p) D(p,...).
  DenseTensor4 cur = rdms.two_rdm;
  for (int axis = 0; axis < 4; ++axis) {
    DenseTensor4 next(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          for (Index l = 0; l < n; ++l) {
            const double v = cur(i, j, k, l);
            if (v == 0.0) continue;
            const Index idx[4] = {i, j, k, l};
            for (Index a = 0; a < n; ++a) {
              const double w = r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(idx[axis]));
              if (w == 0.0) continue;
              Index o[4] = {i, j, k, l};
              o[axis] = a;
              next(o[0], o[1], o[2], o[3]) += w * v;
            }
          }
    cur = std::move(next);
  }
  out.two_rdm = std::move(cur);
  return out;
}

}  // namespace dmetvqe::vqe

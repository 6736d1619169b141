#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "dmetvqe/fermion.hpp"
#include "dmetvqe/pauli.hpp"
#include "oracles.hpp"

using namespace dmetvqe;
using fermion::Boundary;

namespace {

double ground_per_site(const fermion::IntegralTensors& ts, Index electrons) {
  const Index modes = 2 * ts.orbital_count();
  return oracle::sector_ground(oracle::fermion_hamiltonian(ts), modes, electrons) /
         static_cast<double>(ts.orbital_count());
}

std::vector<double> analytic_band(Index l, double t, Boundary b) {
  std::vector<double> e;
  for (Index k = 0; k < l; ++k) {
    const double kk = static_cast<double>(k);
    const double ll = static_cast<double>(l);
    switch (b) {
      case Boundary::Periodic:
        e.push_back(-2.0 * t * std::cos(2.0 * std::numbers::pi * kk / ll));
        break;
      case Boundary::AntiPeriodic:
        e.push_back(-2.0 * t * std::cos((2.0 * kk + 1.0) * std::numbers::pi / ll));
        break;
      case Boundary::Open:
        e.push_back(-2.0 * t * std::cos(std::numbers::pi * (kk + 1.0) / (ll + 1.0)));
        break;
    }
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("Hubbard ring energies from the dense oracle") {
  CHECK(ground_per_site(fermion::hubbard_tensors(4, 1.0, 0.0, Boundary::AntiPeriodic), 4) ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ground_per_site(fermion::hubbard_tensors(4, 1.0, 4.0, Boundary::AntiPeriodic), 4) ==
        doctest::Approx(-0.68014156).epsilon(1e-8));
}

TEST_CASE("Hubbard dimer matches the closed form") {
  for (double u : {2.0, 4.0, 8.0}) {
    const auto ts = fermion::hubbard_tensors(2, 1.0, u, Boundary::Open);
    const double e = 2.0 * ground_per_site(ts, 2);
    CHECK(e == doctest::Approx((u - std::sqrt(u * u + 16.0)) / 2.0).epsilon(1e-12));
  }
  // (U - sqrt(U^2 + 16)) / 2 at U = 2.
  const auto ts = fermion::hubbard_tensors(2, 1.0, 2.0, Boundary::Open);
  CHECK(2.0 * ground_per_site(ts, 2) == doctest::Approx(-1.23606798).epsilon(1e-8));
}

TEST_CASE("hopping boundaries") {
  const auto p = fermion::hubbard_tensors(4, 1.0, 0.0, Boundary::Periodic);
  const auto a = fermion::hubbard_tensors(4, 1.0, 0.0, Boundary::AntiPeriodic);
  const auto o = fermion::hubbard_tensors(4, 1.0, 0.0, Boundary::Open);
  CHECK(p.h1(3, 0) == -1.0);
  CHECK(a.h1(3, 0) == 1.0);
  CHECK(o.h1(3, 0) == 0.0);
  CHECK(a.h1(0, 1) == -1.0);
  CHECK_THROWS_AS(fermion::hubbard_tensors(1, 1.0, 0.0, Boundary::Open), InvalidArgument);
}

TEST_CASE("U = 0 spectra follow the tight-binding dispersion") {
  for (Boundary b : {Boundary::Periodic, Boundary::AntiPeriodic, Boundary::Open}) {
    for (Index l = 2; l <= 8; ++l) {
      const auto ts = fermion::hubbard_tensors(l, 1.0, 0.0, b);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(ts.h1);
      const auto expect = analytic_band(l, 1.0, b);
      for (Index k = 0; k < l; ++k) CHECK(eig.eigenvalues()(static_cast<Eigen::Index>(k)) == doctest::Approx(expect[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("tensors_to_fermion_sum") {
  fermion::IntegralTensors zero;
  zero.h1 = Matrix::Zero(3, 3);
  zero.v2 = fermion::TwoBodyTensor(3);
  CHECK(fermion::tensors_to_fermion_sum(zero).simplified().empty());

  const auto ts = fermion::hubbard_tensors(2, 1.0, 3.5, Boundary::Open);
  const auto sum = fermion::tensors_to_fermion_sum(ts).simplified();
  const std::vector<fermion::LadderOp> onsite{fermion::create(0), fermion::create(1), fermion::annihilate(1),
                                              fermion::annihilate(0)};
  bool found = false;
  for (const auto& t : sum.terms()) {
    if (t.ops == onsite) {
      found = true;
      CHECK(t.coefficient == Complex(3.5));
    }
  }
  CHECK(found);

  // Tight-binding dimer: both electrons in the bonding orbital.
  const auto free = fermion::hubbard_tensors(2, 1.0, 0.0, Boundary::Open);
  const ComplexMatrix h = oracle::sum_matrix(pauli::jw_transform(fermion::tensors_to_fermion_sum(free)), 4);
  CHECK(oracle::sector_ground(h.real(), 4, 2, 0, false) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("add_potential") {
  const auto ts = fermion::hubbard_tensors(4, 1.0, 2.0, Boundary::AntiPeriodic);
  CHECK(fermion::add_potential(ts, Matrix::Zero(4, 4)).h1 == ts.h1);
  const auto shifted = fermion::add_potential(ts, 0.3 * Matrix::Identity(4, 4));
  CHECK((shifted.h1.diagonal().array() - ts.h1.diagonal().array() - 0.3).abs().maxCoeff() < 1e-15);
  CHECK(shifted.v2.entries() == ts.v2.entries());

  Matrix block(2, 2);
  block << 0.1, 0.2, 0.2, -0.1;
  Matrix u = Matrix::Zero(4, 4);
  u.block(0, 0, 2, 2) = block;
  u.block(2, 2, 2, 2) = block;
  const auto tiled = fermion::add_potential(ts, u);
  CHECK(((tiled.h1 - ts.h1).block(0, 0, 2, 2) - block).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(((tiled.h1 - ts.h1).block(2, 2, 2, 2) - block).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((tiled.h1 - ts.h1).block(0, 2, 2, 2).isZero());
  CHECK_THROWS_AS(fermion::add_potential(ts, Matrix::Zero(3, 3)), InvalidArgument);
}

TEST_CASE("momentum transform") {
  const auto ts = fermion::hubbard_tensors(4, 1.0, 4.0, Boundary::AntiPeriodic);
  const auto k = fermion::momentum_transform(ts);
  const double r2 = std::sqrt(2.0);
  CHECK((k.h1 - k.h1.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(k.h1(0, 0) == doctest::Approx(-r2));
  CHECK(k.h1(1, 1) == doctest::Approx(-r2));
  CHECK(k.h1(2, 2) == doctest::Approx(r2));
  CHECK(k.h1(3, 3) == doctest::Approx(r2));

  const auto momenta = fermion::lattice_momenta(ts);
  Index nonzero = 0;
  for (const auto& [key, v] : k.v2.entries()) {
    if (std::abs(v) < 1e-12) continue;
    ++nonzero;
    CHECK(std::abs(v) == doctest::Approx(4.0 / 4.0));
    // Crystal momentum is conserved modulo 2 pi.
    const double dk = momenta[key[0]] + momenta[key[1]] - momenta[key[2]] - momenta[key[3]];
    const double wrapped = std::remainder(dk, 2.0 * std::numbers::pi);
    CHECK(std::abs(wrapped) < 1e-9);
  }
  CHECK(nonzero <= 64);

  CHECK(fermion::momentum_transform(fermion::hubbard_tensors(4, 1.0, 0.0, Boundary::AntiPeriodic)).v2.is_zero());
  CHECK_THROWS_AS(fermion::momentum_transform(fermion::hubbard_tensors(4, 1.0, 4.0, Boundary::Open)),
                  InvalidArgument);
}

TEST_CASE("momentum transform preserves the spectrum") {
  for (Boundary b : {Boundary::Periodic, Boundary::AntiPeriodic}) {
    for (Index l : {Index{3}, Index{4}}) {
      const auto ts = fermion::hubbard_tensors(l, 1.0, 3.0, b);
      const auto k = fermion::momentum_transform(ts);
      Eigen::SelfAdjointEigenSolver<Matrix> a(oracle::fermion_hamiltonian(ts), Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> c(oracle::fermion_hamiltonian(k), Eigen::EigenvaluesOnly);
      CHECK((a.eigenvalues() - c.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("two-body tensor transform and symmetry") {
  const auto ts = fermion::hubbard_tensors(3, 1.0, 2.0, Boundary::Periodic);
  CHECK(ts.v2.hermiticity_residual() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(ts.h1);
  const auto w = ts.v2.transformed(eig.eigenvectors());
  CHECK(w.hermiticity_residual() < 1e-12);
  // Back-transform recovers the original.
  const auto back = w.transformed(eig.eigenvectors().transpose());
  for (const auto& [key, v] : ts.v2.entries()) CHECK(back(key[0], key[1], key[2], key[3]) == doctest::Approx(v));
}

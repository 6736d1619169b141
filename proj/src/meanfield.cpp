#include "dmetvqe/meanfield.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dmetvqe::meanfield {

void fix_column_signs(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      // First index wins ties so degenerate magnitudes stay deterministic.
      if (std::abs(vectors(r, c)) > best + 1e-12) {
        best = std::abs(vectors(r, c));
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

MeanFieldSolution solve(const Matrix& h_aug, Index n_electrons) {
  if (h_aug.rows() != h_aug.cols()) throw InvalidArgument("mean-field Hamiltonian is not square");
  if (n_electrons % 2 != 0) throw InvalidArgument("restricted mean field needs an even electron count");
  const auto n = static_cast<Index>(h_aug.rows());
  const Index n_occ = n_electrons / 2;
  if (n_occ > n) throw InvalidArgument("more electrons than spin-orbitals");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h_aug);
  if (eig.info() != Eigen::Success) throw NumericalError("mean-field diagonalization failed");

  MeanFieldSolution sol;
  sol.orbitals = eig.eigenvectors();
  sol.orbital_energies = eig.eigenvalues();
  sol.n_occupied = n_occ;
  fix_column_signs(sol.orbitals);
  if (n_occ > 0 && n_occ < n) {
    const double gap = sol.orbital_energies(static_cast<Eigen::Index>(n_occ)) -
                       sol.orbital_energies(static_cast<Eigen::Index>(n_occ) - 1);
    if (gap < kDegeneracyTolerance) {
      throw DegenerateFermiLevel("degenerate Fermi level (HOMO-LUMO gap " + std::to_string(gap) + ")");
    }
  }
  sol.one_rdm = one_rdm(sol);
  return sol;
}

Matrix one_rdm(const MeanFieldSolution& sol) {
  const auto occ = sol.occupied();
  return occ * occ.transpose();
}

}  // namespace dmetvqe::meanfield

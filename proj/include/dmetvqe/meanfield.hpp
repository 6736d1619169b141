#pragma once

#include "dmetvqe/types.hpp"

namespace dmetvqe::meanfield {

/// Restricted Slater determinant of a quadratic lattice Hamiltonian.
struct MeanFieldSolution {
  /// Site -> orbital transform; column p is orbital p, ascending energy.
  Matrix orbitals;
  Vector orbital_energies;
  /// Occupied spatial orbitals per spin.
  Index n_occupied = 0;
  /// Per-spin density matrix, C_occ C_occ^T.
  Matrix one_rdm;

  Eigen::Ref<const Matrix> occupied() const {
    return orbitals.leftCols(static_cast<Eigen::Index>(n_occupied));
  }
};

class DegenerateFermiLevel : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline constexpr double kDegeneracyTolerance = 1e-9;

/// Diagonalizes `h_aug` and fills the lowest n_electrons/2 orbitals per spin.
/// Eigenvector signs are fixed so the largest-magnitude component is
/// positive. Throws DegenerateFermiLevel when the HOMO-LUMO gap is below
/// kDegeneracyTolerance.
MeanFieldSolution solve(const Matrix& h_aug, Index n_electrons);

/// Per-spin C_occ C_occ^T.
Matrix one_rdm(const MeanFieldSolution& sol);

/// Makes the largest-magnitude entry of every column positive.
void fix_column_signs(Matrix& vectors);

}  // namespace dmetvqe::meanfield

#include "dmetvqe/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace dmetvqe::embedding {

void FragmentSpec::validate(Index lattice_sites) const {
  if (sites.empty()) throw InvalidArgument("fragment has no sites");
  std::set<Index> seen;
  for (Index s : sites) {
    if (s >= lattice_sites) {
      throw InvalidArgument("fragment site " + std::to_string(s) + " outside lattice of " +
                            std::to_string(lattice_sites));
    }
    if (!seen.insert(s).second) throw InvalidArgument("duplicate fragment site " + std::to_string(s));
  }
}

FragmentSpec FragmentSpec::contiguous(Index first, Index count) {
  FragmentSpec f;
  f.sites.resize(count);
  std::iota(f.sites.begin(), f.sites.end(), first);
  return f;
}

Matrix fragment_overlap(const meanfield::MeanFieldSolution& sol, const FragmentSpec& frag) {
  frag.validate(static_cast<Index>(sol.orbitals.rows()));
  const auto occ = sol.occupied();
  Matrix rows(static_cast<Eigen::Index>(frag.size()), occ.cols());
  for (Index a = 0; a < frag.size(); ++a) {
    rows.row(static_cast<Eigen::Index>(a)) = occ.row(static_cast<Eigen::Index>(frag.sites[a]));
  }
  return rows.transpose() * rows;
}

EmbeddingBasis build_basis(const meanfield::MeanFieldSolution& sol, const FragmentSpec& frag, double tol_core,
                           double tol_full) {
  if (!(tol_core > 0.0 && tol_core < 0.5 && tol_full > 0.0 && tol_full < 0.5)) {
    throw InvalidArgument("embedding tolerances must lie in (0, 1/2)");
  }
  const Matrix s = fragment_overlap(sol, frag);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  if (eig.info() != Eigen::Success) throw NumericalError("overlap diagonalization failed");
  // Descending order.
  const Vector delta = eig.eigenvalues().reverse();
  Matrix v = eig.eigenvectors().rowwise().reverse();
  meanfield::fix_column_signs(v);

  const Eigen::Index lattice = sol.orbitals.rows();
  const Index nf = frag.size();
  std::vector<bool> in_fragment(static_cast<Index>(lattice), false);
  for (Index site : frag.sites) in_fragment[site] = true;

  EmbeddingBasis out;
  out.delta = delta;
  out.n_fragment = nf;
  out.core_density = Matrix::Zero(lattice, lattice);
  const Matrix rotated = sol.occupied() * v;  // occupied orbitals mixed by V
  std::vector<Vector> bath;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    const double d = delta(i);
    if (d < -1e-10 || d > 1.0 + 1e-10) throw NumericalError("overlap eigenvalue outside [0, 1]");
    if (d < tol_core) {
      out.core_density += rotated.col(i) * rotated.col(i).transpose();
      ++out.n_core;
    } else if (d > 1.0 - tol_full) {
      ++out.n_full;
    } else {
      Vector b = rotated.col(i);
      for (Eigen::Index mu = 0; mu < lattice; ++mu) {
        if (in_fragment[static_cast<Index>(mu)]) b(mu) = 0.0;
      }
      b /= std::sqrt(1.0 - d);
      bath.push_back(std::move(b));
    }
  }
  if (bath.size() > nf) throw NumericalError("more bath orbitals than fragment sites");
  out.n_bath = bath.size();
  out.c = Matrix::Zero(lattice, static_cast<Eigen::Index>(nf + bath.size()));
  for (Index a = 0; a < nf; ++a) out.c(static_cast<Eigen::Index>(frag.sites[a]), static_cast<Eigen::Index>(a)) = 1.0;
  for (Index b = 0; b < bath.size(); ++b) out.c.col(static_cast<Eigen::Index>(nf + b)) = bath[b];
  out.embedded_density = out.c.transpose() * sol.one_rdm * out.c;
  return out;
}

Matrix core_fock(const fermion::TwoBodyTensor& v, const Matrix& rho) {
  const auto n = rho.rows();
  Matrix f = Matrix::Zero(n, n);
  for (const auto& [key, val] : v.entries()) {
    const auto [i, j, k, l] = key;
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const auto kk = static_cast<Eigen::Index>(k);
    const auto ll = static_cast<Eigen::Index>(l);
    f(ii, kk) += 2.0 * val * rho(jj, ll);
    f(ii, ll) -= val * rho(jj, kk);
  }
  return f;
}

EmbeddedHamiltonian build_embedded_hamiltonian(const fermion::IntegralTensors& ts, const EmbeddingBasis& basis) {
  if (!ts.is_spatial()) throw InvalidArgument("embedding needs spatial lattice integrals");
  if (ts.orbital_count() != static_cast<Index>(basis.c.rows())) {
    throw InvalidArgument("embedding basis does not match lattice size");
  }
  const Matrix f_lattice = core_fock(ts.v2, basis.core_density);
  EmbeddedHamiltonian out;
  out.h_bare = basis.c.transpose() * ts.h1 * basis.c;
  out.f_core = basis.c.transpose() * f_lattice * basis.c;
  out.e_core = ts.constant + (basis.core_density.array() * (2.0 * ts.h1 + f_lattice).array()).sum();
  out.n_electrons = basis.electron_count();
  out.n_fragment = basis.n_fragment;
  out.mf_density = basis.embedded_density;
  out.integrals.basis = fermion::BasisKind::Embedded;
  out.integrals.h1 = out.h_bare + out.f_core;
  out.integrals.v2 = ts.v2.transformed(basis.c);
  return out;
}

}  // namespace dmetvqe::embedding

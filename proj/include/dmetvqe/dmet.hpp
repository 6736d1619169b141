#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dmetvqe/embedding.hpp"
#include "dmetvqe/fermion.hpp"
#include "dmetvqe/meanfield.hpp"
#include "dmetvqe/optimize.hpp"
#include "dmetvqe/rdm.hpp"
#include "dmetvqe/types.hpp"
#include "dmetvqe/vqe.hpp"

namespace dmetvqe::dmet {

enum class SolverKind { ED, UCCSD };

std::string to_string(SolverKind kind);
SolverKind parse_solver(const std::string& name);

struct DMETConfig {
  Index sites = 4;
  double hopping = 1.0;
  double interaction = 4.0;
  fermion::Boundary boundary = fermion::Boundary::AntiPeriodic;
  /// Defaults to half filling when zero.
  Index electrons = 0;
  Index fragment_size = 1;
  SolverKind solver = SolverKind::ED;
  int trotter_order = 1;
  int trotter_steps = 1;
  int max_macro_iterations = 50;
  /// Max-abs change of u between macro-iterations.
  double u_tolerance = 1e-6;
  /// |fragment electrons - target|.
  double electron_tolerance = 1e-6;
  double mu_lower = -1.0;
  double mu_upper = 1.0;
  double mu_tolerance = 1e-12;
  int mu_max_expansions = 30;
  /// Finite-difference and convergence settings of the u fit.
  optimize::BFGSOptions fit{.max_iterations = 200,
                            .gradient_tolerance = 1e-10,
                            .value_tolerance = 1e-16,
                            .fd_step = 1e-6};
  vqe::VQEOptions vqe{};

  Index electron_count() const noexcept { return electrons == 0 ? sites : electrons; }
  /// Throws InvalidArgument on an inconsistent configuration.
  void validate() const;
};

/// High-level answer for one embedded problem.
struct FragmentSolution {
  double energy = 0.0;  // total energy of the embedded problem, mu term included
  RDMPair rdms;         // spin-orbital, embedding basis
  bool converged = true;
  int iterations = 0;
};

/// Embedded-problem solver; mu enters as -mu on the fragment occupation.
class FragmentSolver {
 public:
  virtual ~FragmentSolver() = default;
  virtual FragmentSolution solve(double mu) = 0;
};

std::unique_ptr<FragmentSolver> make_solver(const DMETConfig& config, const embedding::EmbeddedHamiltonian& emb);

/// Integrals of `emb` with -mu added on the fragment diagonal.
fermion::IntegralTensors shifted_integrals(const embedding::EmbeddedHamiltonian& emb, double mu);

/// Orbitals for the embedded UCCSD reference: eigenvectors of the embedded
/// Fock matrix built from `density` (per spin, embedding basis).
Matrix embedded_reference_orbitals(const fermion::IntegralTensors& ts, const Matrix& density);

/// Fragment electrons (both spins) from a spin-orbital 1-RDM.
double fragment_electrons(const RDMPair& rdms, Index n_fragment);

struct MuSearchResult {
  double mu = 0.0;
  FragmentSolution solution;
  double electrons = 0.0;
  int evaluations = 0;
};

/// Finds mu with fragment electrons = target, bracketing then regula falsi
/// (Illinois variant). Throws NumericalError when no bracket is found.
MuSearchResult chemical_potential_search(FragmentSolver& solver, Index n_fragment, double target,
                                         const DMETConfig& config);

/// Lattice potential from fragment-block parameters: upper triangle of the
/// symmetric n_F x n_F block in row order, replicated over the tiling.
Matrix expand_potential(const Vector& params, Index n_fragment, Index sites);
Matrix fragment_block(const Vector& params, Index n_fragment);
Vector block_parameters(const Matrix& block);

/// Spin-summed fragment block of the mean-field density for potential u.
Matrix mean_field_fragment_density(const Matrix& h_lattice, const Matrix& u, Index n_electrons,
                                   const embedding::FragmentSpec& frag);

/// Sum over fragment blocks of (D_high - D_mf)^2, weighted by the number of
/// equivalent fragments in the tiling.
double cost_function(const Matrix& high_level, const Matrix& mean_field, Index fragment_count);

struct FitResult {
  Matrix u_block;
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Minimizes the cost function over the symmetric fragment block of u. The
/// diagonal mean, which only shifts all levels, is removed from the result.
FitResult fit_potential(const Matrix& h_lattice, const Matrix& high_level, const Matrix& u_start,
                        Index n_electrons, Index sites, const DMETConfig& config);

/// Democratic partitioning: one-body terms weighted by the fraction of their
/// two indices on the fragment, two-body terms by the fraction of their four.
/// Uses the core-dressed one-body integrals and no chemical potential.
double fragment_energy(const embedding::EmbeddedHamiltonian& emb, const RDMPair& rdms);

struct IterationRecord {
  double energy_per_site = 0.0;
  double mu = 0.0;
  double fragment_electrons = 0.0;
  double cost = 0.0;
  double u_change = 0.0;
};

struct DMETResult {
  double energy_per_site = 0.0;
  Matrix u;       // n_F x n_F block
  Matrix u_full;  // lattice
  double mu = 0.0;
  RDMPair fragment_rdms;
  double fragment_electrons = 0.0;
  std::vector<IterationRecord> history;
  bool converged = false;
};

/// Called after every high-level solve with the problem and its answer.
using SolveObserver =
    std::function<void(const embedding::EmbeddedHamiltonian&, double mu, const FragmentSolution&)>;

DMETResult run(const DMETConfig& config, const SolveObserver& observer = {});

}  // namespace dmetvqe::dmet

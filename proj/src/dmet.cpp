#include "dmetvqe/dmet.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dmetvqe/ed.hpp"

namespace dmetvqe::dmet {

std::string to_string(SolverKind kind) { return kind == SolverKind::ED ? "ed" : "uccsd"; }

SolverKind parse_solver(const std::string& name) {
  if (name == "ed") return SolverKind::ED;
  if (name == "uccsd") return SolverKind::UCCSD;
  throw InvalidArgument("unknown solver '" + name + "' (expected ed or uccsd)");
}

void DMETConfig::validate() const {
  if (sites < 2) throw InvalidArgument("lattice needs at least 2 sites");
  if (fragment_size == 0 || sites % fragment_size != 0) {
    throw InvalidArgument("fragment size must divide the lattice size");
  }
  if (electron_count() % 2 != 0 || electron_count() > 2 * sites) {
    throw InvalidArgument("electron count must be even and fit the lattice");
  }
  if (trotter_order != 1 && trotter_order != 2) throw InvalidArgument("trotter order must be 1 or 2");
  if (trotter_steps < 1) throw InvalidArgument("trotter steps must be positive");
  if (!(mu_lower < mu_upper)) throw InvalidArgument("empty chemical potential bracket");
  if (max_macro_iterations < 1) throw InvalidArgument("need at least one macro-iteration");
}

fermion::IntegralTensors shifted_integrals(const embedding::EmbeddedHamiltonian& emb, double mu) {
  fermion::IntegralTensors ts = emb.integrals;
  for (Index p = 0; p < emb.n_fragment; ++p) ts.h1(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) -= mu;
  return ts;
}

Matrix embedded_reference_orbitals(const fermion::IntegralTensors& ts, const Matrix& density) {
  const Matrix fock = ts.h1 + embedding::core_fock(ts.v2, density);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(fock);
  if (eig.info() != Eigen::Success) throw NumericalError("embedded Fock diagonalization failed");
  Matrix vecs = eig.eigenvectors();
  meanfield::fix_column_signs(vecs);
  return vecs;
}

double fragment_electrons(const RDMPair& rdms, Index n_fragment) {
  double n = 0.0;
  for (Index p = 0; p < 2 * n_fragment; ++p) n += rdms.one_rdm(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  return n;
}

namespace {

class EDSolver final : public FragmentSolver {
 public:
  explicit EDSolver(const embedding::EmbeddedHamiltonian& emb)
      : solver_(emb.integrals, emb.n_electrons), n_orbitals_(emb.orbital_count()), n_fragment_(emb.n_fragment) {}

  FragmentSolution solve(double mu) override {
    Vector shift = Vector::Zero(static_cast<Eigen::Index>(n_orbitals_));
    shift.head(static_cast<Eigen::Index>(n_fragment_)).setConstant(-mu);
    ed::GroundState gs = solver_.solve(shift);
    FragmentSolution out;
    out.energy = gs.energy;
    out.rdms = std::move(gs.rdms);
    return out;
  }

 private:
  ed::ExactSolver solver_;
  Index n_orbitals_;
  Index n_fragment_;
};

class UCCSDSolver final : public FragmentSolver {
 public:
  UCCSDSolver(const embedding::EmbeddedHamiltonian& emb, const DMETConfig& config) : emb_(emb), options_(config.vqe) {
    if (emb.n_electrons % 2 != 0) throw InvalidArgument("UCCSD fragment solver needs a closed-shell problem");
    ansatz_.n_spatial = emb.orbital_count();
    ansatz_.n_occupied = emb.n_electrons / 2;
    ansatz_.trotter_order = config.trotter_order;
    ansatz_.trotter_steps = config.trotter_steps;
    // Fixed for all mu, so the fragment occupation is continuous in mu.
    rotation_ = embedded_reference_orbitals(emb.integrals, emb.mf_density);
  }

  FragmentSolution solve(double mu) override {
    const fermion::IntegralTensors ts = shifted_integrals(emb_, mu);
    const fermion::IntegralTensors rotated = vqe::rotate_integrals(ts, rotation_);
    vqe::VQEResult res = vqe::minimize(rotated, ansatz_, options_);
    FragmentSolution out;
    out.energy = res.energy;
    out.rdms = vqe::rotate_rdms(res.rdms, rotation_);
    out.converged = res.converged;
    out.iterations = res.iterations;
    return out;
  }

 private:
  embedding::EmbeddedHamiltonian emb_;
  vqe::VQEOptions options_;
  vqe::UCCSDAnsatz ansatz_;
  Matrix rotation_;
};

}  // namespace

std::unique_ptr<FragmentSolver> make_solver(const DMETConfig& config, const embedding::EmbeddedHamiltonian& emb) {
  if (config.solver == SolverKind::ED) return std::make_unique<EDSolver>(emb);
  return std::make_unique<UCCSDSolver>(emb, config);
}

MuSearchResult chemical_potential_search(FragmentSolver& solver, Index n_fragment, double target,
                                         const DMETConfig& config) {
  MuSearchResult best;
  auto eval = [&](double mu) {
    FragmentSolution sol = solver.solve(mu);
    const double n = fragment_electrons(sol.rdms, n_fragment);
    ++best.evaluations;
    if (best.evaluations == 1 || std::abs(n - target) < std::abs(best.electrons - target)) {
      best.mu = mu;
      best.electrons = n;
      best.solution = sol;
    }
    return n - target;
  };

  double lo = config.mu_lower;
  double hi = config.mu_upper;
  double f_lo = eval(lo);
  if (std::abs(f_lo) < config.electron_tolerance) return best;
  double f_hi = eval(hi);
  if (std::abs(f_hi) < config.electron_tolerance) return best;
  // Fragment occupation grows with mu; walk the bracket outward.
  for (int k = 0; f_lo * f_hi > 0.0; ++k) {
    if (k >= config.mu_max_expansions) {
      throw NumericalError("chemical potential bracket not found after " + std::to_string(k) + " expansions");
    }
    const double width = hi - lo;
    if (f_lo > 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo -= 2.0 * width;
      f_lo = eval(lo);
    } else {
      lo = hi;
      f_lo = f_hi;
      hi += 2.0 * width;
      f_hi = eval(hi);
    }
    if (std::abs(f_lo) < config.electron_tolerance || std::abs(f_hi) < config.electron_tolerance) return best;
  }

  int side = 0;
  while (hi - lo > config.mu_tolerance) {
    double mu = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(mu > lo && mu < hi)) mu = 0.5 * (lo + hi);
    const double f = eval(mu);
    if (std::abs(f) < config.electron_tolerance * 1e-3) break;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mu;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = mu;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
    if (best.evaluations > 200) break;
  }
  if (std::abs(best.electrons - target) > config.electron_tolerance) {
    throw NumericalError("chemical potential search did not reach the electron count (off by " +
                         std::to_string(best.electrons - target) + ")");
  }
  return best;
}

Matrix fragment_block(const Vector& params, Index n_fragment) {
  const auto n = static_cast<Eigen::Index>(n_fragment);
  if (params.size() != n * (n + 1) / 2) throw InvalidArgument("wrong number of potential parameters");
  Matrix u(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      u(i, j) = params(k);
      u(j, i) = params(k);
      ++k;
    }
  return u;
}

Vector block_parameters(const Matrix& block) {
  const Eigen::Index n = block.rows();
  Vector p(n * (n + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) p(k++) = block(i, j);
  return p;
}

Matrix expand_potential(const Vector& params, Index n_fragment, Index sites) {
  if (n_fragment == 0 || sites % n_fragment != 0) throw InvalidArgument("fragment size does not tile the lattice");
  const Matrix block = fragment_block(params, n_fragment);
  const auto nf = static_cast<Eigen::Index>(n_fragment);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(sites), static_cast<Eigen::Index>(sites));
  for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(sites); x += nf) u.block(x, x, nf, nf) = block;
  return u;
}

Matrix mean_field_fragment_density(const Matrix& h_lattice, const Matrix& u, Index n_electrons,
                                   const embedding::FragmentSpec& frag) {
  const meanfield::MeanFieldSolution sol = meanfield::solve(h_lattice + u, n_electrons);
  const auto nf = static_cast<Eigen::Index>(frag.size());
  Matrix d(nf, nf);
  for (Eigen::Index a = 0; a < nf; ++a)
    for (Eigen::Index b = 0; b < nf; ++b) {
      d(a, b) = 2.0 * sol.one_rdm(static_cast<Eigen::Index>(frag.sites[static_cast<Index>(a)]),
                                  static_cast<Eigen::Index>(frag.sites[static_cast<Index>(b)]));
    }
  return d;
}

double cost_function(const Matrix& high_level, const Matrix& mean_field, Index fragment_count) {
  return static_cast<double>(fragment_count) * (high_level - mean_field).squaredNorm();
}

FitResult fit_potential(const Matrix& h_lattice, const Matrix& high_level, const Matrix& u_start,
                        Index n_electrons, Index sites, const DMETConfig& config) {
  const Index nf = static_cast<Index>(u_start.rows());
  const embedding::FragmentSpec frag = embedding::FragmentSpec::contiguous(0, nf);
  const Index count = sites / nf;
  const optimize::Objective cf = [&](const Vector& p) {
    const Matrix u = expand_potential(p, nf, sites);
    return cost_function(high_level, mean_field_fragment_density(h_lattice, u, n_electrons, frag), count);
  };
  const optimize::OptimizationResult opt = optimize::bfgs_minimize(cf, block_parameters(u_start), config.fit);
  FitResult out;
  out.u_block = fragment_block(opt.x, nf);
  const double shift = out.u_block.diagonal().mean();
  out.u_block.diagonal().array() -= shift;
  out.cost = opt.value;
  out.converged = opt.converged;
  out.iterations = opt.iterations;
  return out;
}

double fragment_energy(const embedding::EmbeddedHamiltonian& emb, const RDMPair& rdms) {
  const Index n = emb.orbital_count();
  const Index nf = emb.n_fragment;
  const Matrix& h = emb.integrals.h1;
  auto weight = [nf](Index spatial) { return spatial < nf ? 1.0 : 0.0; };
  double e1 = 0.0;
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      const double w = 0.5 * (weight(p) + weight(q));
      if (w == 0.0) continue;
      const double hpq = h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      for (Index s = 0; s < 2; ++s) {
        e1 += w * hpq *
              rdms.one_rdm(static_cast<Eigen::Index>(fermion::spin_orbital(p, s)),
                           static_cast<Eigen::Index>(fermion::spin_orbital(q, s)));
      }
    }
  double e2 = 0.0;
  for (const auto& [key, v] : emb.integrals.v2.entries()) {
    const auto [i, j, k, l] = key;
    const double w = 0.25 * (weight(i) + weight(j) + weight(k) + weight(l));
    if (w == 0.0) continue;
    for (Index s = 0; s < 2; ++s)
      for (Index t = 0; t < 2; ++t) {
        e2 += w * v *
              rdms.two_rdm(fermion::spin_orbital(i, s), fermion::spin_orbital(j, t), fermion::spin_orbital(k, s),
                           fermion::spin_orbital(l, t));
      }
  }
  return e1 + 0.5 * e2;
}

DMETResult run(const DMETConfig& config, const SolveObserver& observer) {
  config.validate();
  const fermion::IntegralTensors lattice =
      fermion::hubbard_tensors(config.sites, config.hopping, config.interaction, config.boundary);
  const Index n_electrons = config.electron_count();
  const Index nf = config.fragment_size;
  const embedding::FragmentSpec frag = embedding::FragmentSpec::contiguous(0, nf);
  const double target = static_cast<double>(n_electrons * nf) / static_cast<double>(config.sites);
  const bool fit = nf > 1 && nf < config.sites;

  DMETResult result;
  result.u = Matrix::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  DMETConfig mu_config = config;
  bool all_solves_converged = true;
  for (int it = 0; it < config.max_macro_iterations; ++it) {
    const Matrix u_full = expand_potential(block_parameters(result.u), nf, config.sites);
    const meanfield::MeanFieldSolution sol = meanfield::solve(lattice.h1 + u_full, n_electrons);
    const embedding::EmbeddingBasis basis = embedding::build_basis(sol, frag);
    const embedding::EmbeddedHamiltonian emb = embedding::build_embedded_hamiltonian(lattice, basis);
    auto solver = make_solver(config, emb);
    MuSearchResult mu = chemical_potential_search(*solver, nf, target, mu_config);
    all_solves_converged = all_solves_converged && mu.solution.converged;
    if (observer) observer(emb, mu.mu, mu.solution);
    // Later searches start from a narrow bracket around the last answer.
    mu_config.mu_lower = mu.mu - 0.05;
    mu_config.mu_upper = mu.mu + 0.05;

    IterationRecord rec;
    rec.energy_per_site = fragment_energy(emb, mu.solution.rdms) / static_cast<double>(nf);
    rec.mu = mu.mu;
    rec.fragment_electrons = mu.electrons;
    const Matrix high = rdm::spatial_one_rdm(mu.solution.rdms.one_rdm)
                            .topLeftCorner(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));

    result.energy_per_site = rec.energy_per_site;
    result.mu = mu.mu;
    result.fragment_rdms = mu.solution.rdms;
    result.fragment_electrons = mu.electrons;
    result.u_full = u_full;
    if (!fit) {
      rec.cost = cost_function(high, mean_field_fragment_density(lattice.h1, u_full, n_electrons, frag),
                               config.sites / nf);
      result.history.push_back(rec);
      result.converged = all_solves_converged;
      break;
    }
    const FitResult f = fit_potential(lattice.h1, high, result.u, n_electrons, config.sites, config);
    rec.cost = f.cost;
    rec.u_change = (f.u_block - result.u).cwiseAbs().maxCoeff();
    result.history.push_back(rec);
    result.u = f.u_block;
    if (rec.u_change < config.u_tolerance) {
      result.converged = all_solves_converged;
      break;
    }
  }
  return result;
}

}  // namespace dmetvqe::dmet

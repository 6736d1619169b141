// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dmetvqe/circuit.hpp"
#include "dmetvqe/config.hpp"
#include "dmetvqe/dmet.hpp"
#include "dmetvqe/ed.hpp"
#include "dmetvqe/experiments.hpp"
#include "dmetvqe/meanfield.hpp"
#include "dmetvqe/pauli.hpp"
#include "dmetvqe/rdm.hpp"
#include "dmetvqe/vqe.hpp"
#include "oracles.hpp"

using namespace dmetvqe;
using fermion::Boundary;

namespace {

const std::vector<double> kU{2.0, 4.0, 6.0, 8.0, 10.0};

// Reference rows of the 4-site ring energy table.
const std::vector<double> kExactRow{-0.9809782, -0.68014156, -0.49157349, -0.37607898, -0.30214434};
const std::vector<double> kUCCSDRow{-0.9808687, -0.67928156, -0.48543800, -0.33051713, -0.02603051};
const std::vector<double> kDMET1Row{-0.9951259, -0.71791138, -0.54055767, -0.42535625, -0.34751768};
const std::vector<double> kDMET2Row{-0.9808783, -0.68014156, -0.49157349, -0.37607898, -0.30214434};

constexpr double kExactTol = 1e-6;
constexpr double kExactSeconds = 5.0;
constexpr double kDMETTol = 1e-5;
constexpr double kDMET1Seconds = 30.0;
constexpr double kDMET2ExactTol = 1e-6;
constexpr double kUCCSDTolWeak = 1e-4;
constexpr double kUCCSDTolMid = 1e-3;
constexpr double kTwoSiteUCCSDTol = 1e-3;
constexpr double kTrotterSpread = 1e-4;
constexpr double kGoldenSeconds = 1.0;
constexpr double kThermoTol = 1e-5;
constexpr double kThermoSeconds = 900.0;
constexpr double kPropertySeconds = 120.0;
constexpr double kVariationalSlack = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::vector<std::string>& details) {
  std::printf("%s  [%d] %s\n", pass ? "PASS" : "FAIL", id, title.c_str());
  for (const auto& d : details) std::printf("        %s\n", d.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

config::ExperimentConfig ring_config() { return config::table1_defaults(); }

double exact_per_site(double u) {
  return ed::ground_state(fermion::hubbard_tensors(4, 1.0, u, Boundary::AntiPeriodic), 4).energy / 4.0;
}

double mean_field_per_site(double u) {
  const auto ts = fermion::hubbard_tensors(4, 1.0, u, Boundary::AntiPeriodic);
  const auto mf = meanfield::solve(ts.h1, 4);
  return rdm::energy(ts, oracle::slater_rdms(mf.one_rdm)) / 4.0;
}

// Every UCCSD embedded solve is compared with exact diagonalization of the
// same shifted problem.
struct VariationalLog {
  int solves = 0;
  double worst = -1e300;  // max of (ED - VQE); must stay <= slack
  dmet::SolveObserver observer() {
    return [this](const embedding::EmbeddedHamiltonian& emb, double mu, const dmet::FragmentSolution& sol) {
      const double exact = ed::ground_state(dmet::shifted_integrals(emb, mu), emb.n_electrons).energy;
      worst = std::max(worst, exact - sol.energy);
      ++solves;
    };
  }
};

VariationalLog g_variational;

dmet::DMETResult run_dmet(const config::ExperimentConfig& cfg, double u, Index nf, dmet::SolverKind solver) {
  const auto d = cfg.dmet_config(u, nf, solver);
  if (solver == dmet::SolverKind::UCCSD) return dmet::run(d, g_variational.observer());
  return dmet::run(d);
}

void criterion_exact() {
  const auto t0 = Clock::now();
  std::vector<std::string> details;
  bool ok = true;
  for (std::size_t k = 0; k < kU.size(); ++k) {
    const double e = exact_per_site(kU[k]);
    const double dev = std::abs(e - kExactRow[k]);
    ok = ok && dev <= kExactTol;
    details.push_back(fmt("U=%g  E=%.8f  ref=%.8f  |diff|=%.2e", kU[k], e, kExactRow[k], dev));
  }
  const double s = seconds_since(t0);
  ok = ok && s < kExactSeconds;
  details.push_back(fmt("runtime %.2f s (limit %.0f s)", s, kExactSeconds));
  report(1, "4-site exact energies per site within 1e-6", ok, details);
}

void criterion_dmet1_ed() {
  const auto cfg = ring_config();
  const auto t0 = Clock::now();
  std::vector<std::string> details;
  bool ok = true;
  for (std::size_t k = 0; k < kU.size(); ++k) {
    const auto r = run_dmet(cfg, kU[k], 1, dmet::SolverKind::ED);
    const double dev = std::abs(r.energy_per_site - kDMET1Row[k]);
    ok = ok && r.converged && dev <= kDMETTol;
    details.push_back(fmt("U=%g  E=%.8f  ref=%.8f  |diff|=%.2e", kU[k], r.energy_per_site, kDMET1Row[k], dev));
  }
  const double s = seconds_since(t0);
  ok = ok && s < kDMET1Seconds;
  details.push_back(fmt("runtime %.2f s (limit %.0f s)", s, kDMET1Seconds));
  report(2, "DMET(1)-ED row within 1e-5", ok, details);
}

void criterion_dmet2_ed() {
  const auto cfg = ring_config();
  std::vector<std::string> details;
  bool ok = true;
  for (std::size_t k = 0; k < kU.size(); ++k) {
    const auto r = run_dmet(cfg, kU[k], 2, dmet::SolverKind::ED);
    const double exact = exact_per_site(kU[k]);
    const double dev = std::abs(r.energy_per_site - kDMET2Row[k]);
    const double dev_exact = std::abs(r.energy_per_site - exact);
    ok = ok && r.converged && dev <= kDMETTol;
    if (kU[k] >= 4.0) ok = ok && dev_exact <= kDMET2ExactTol;
    details.push_back(fmt("U=%g  E=%.8f  ref=%.8f  |diff|=%.2e", kU[k], r.energy_per_site, kDMET2Row[k], dev) +
                      fmt("  |E-exact|=%.2e", dev_exact));
  }
  report(3, "DMET(2)-ED row within 1e-5, equal to exact within 1e-6 for U >= 4", ok, details);
}

void criterion_uccsd() {
  const auto cfg = ring_config();
  std::vector<std::string> details;
  bool ok = true;
  for (std::size_t k = 0; k < kU.size(); ++k) {
    const auto cell = experiments::uccsd_cell(cfg, kU[k], 1, 1);
    const double fci = exact_per_site(kU[k]);
    const double hf = mean_field_per_site(kU[k]);
    const double dev = std::abs(cell.value - kUCCSDRow[k]);
    bool pass = cell.converged;
    std::string rule;
    if (kU[k] == 2.0) {
      pass = pass && dev <= kUCCSDTolWeak;
      rule = "tol 1e-4";
    } else if (kU[k] <= 6.0) {
      pass = pass && dev <= kUCCSDTolMid;
      rule = "tol 1e-3";
    } else {
      pass = pass && cell.value >= fci - kVariationalSlack && cell.value <= hf;
      rule = "FCI <= E <= mean field";
    }
    ok = ok && pass;
    details.push_back(fmt("U=%g  E=%.8f  ref=%.8f  |diff|=%.2e", kU[k], cell.value, kUCCSDRow[k], dev) +
                      fmt("  FCI=%.8f  MF=%.8f", fci, hf) + "  [" + rule + (pass ? "" : ", missed") + "]");
  }
  report(4, "full-lattice UCCSD row", ok, details);
}

void criterion_two_site_uccsd() {
  const auto cfg = ring_config();
  const std::vector<std::pair<double, double>> targets{{2.0, -0.9809165}, {8.0, -0.35446392}};
  std::vector<std::string> details;
  bool ok = true;
  for (const auto& [u, ref] : targets) {
    const auto t0 = Clock::now();
    const auto r = run_dmet(cfg, u, 2, dmet::SolverKind::UCCSD);
    const double dev = std::abs(r.energy_per_site - ref);
    ok = ok && r.converged && dev <= kTwoSiteUCCSDTol;
    details.push_back(fmt("U=%g  E=%.8f  ref=%.8f  |diff|=%.2e", u, r.energy_per_site, ref, dev) +
                      fmt("  (%.0f s)", seconds_since(t0)));
  }
  report(5, "DMET(2)-UCCSD within 1e-3", ok, details);
}

void criterion_trotter() {
  const auto scan = experiments::trotter_scan(config::trotter_scan_defaults(), 1);
  bool above = true;
  std::vector<std::string> details;
  for (const auto& p : scan.points) {
    above = above && p.cell.converged && p.cell.value >= scan.fci - kVariationalSlack;
    details.push_back(fmt("order %g steps %g  E=%.10f", p.order, p.steps, p.cell.value));
  }
  const double spread = scan.spread();
  details.push_back(fmt("FCI=%.10f  spread=%.2e (limit %.0e)", scan.fci, spread, kTrotterSpread));
  report(6, "Trotter order/step spread at U=2 below 1e-4, all points above FCI",
         above && spread < kTrotterSpread, details);
}

void criterion_golden() {
  const auto t0 = Clock::now();
  const std::string exponentiate = "H 0\nH 1\nCNOT 0 1\nRZ(4.0) 1\nCNOT 0 1\nH 0\nH 1\n";
  const std::string trotterized = exponentiate + "H 0\nCNOT 0 2\nRZ(-1.0) 2\nCNOT 0 2\nH 0\n";
  const std::string sample =
      "X 2\nX 3\nH 3\nRX(1.5707963267948966) 5\nCNOT 3 4\nCNOT 4 5\nRZ(0.00001) 5\nCNOT 4 5\nCNOT 3 4\nH 3\n"
      "RX(-1.5707963267948966) 5\nRX(1.5707963267948966) 1\nH 5\nCNOT 1 2\nCNOT 2 3\nCNOT 3 4\n";
  const std::string sliced =
      "Time Slice #1:  X 2\n"
      "                X 3\n"
      "                RX(1.5707963267948966) 5\n"
      "                RX(1.5707963267948966) 1\n"
      "Time Slice #2:  H 3\n"
      "                CNOT 1 2\n"
      "Time Slice #3:  CNOT 3 4\n"
      "Time Slice #4:  CNOT 4 5\n"
      "Time Slice #5:  RZ(0.00001) 5\n"
      "Time Slice #6:  CNOT 4 5\n"
      "Time Slice #7:  CNOT 3 4\n"
      "                RX(-1.5707963267948966) 5\n"
      "Time Slice #8:  H 3\n"
      "                H 5\n"
      "Time Slice #9:  CNOT 2 3\n"
      "Time Slice #10: CNOT 3 4\n";
  const auto a = pauli::parse_pauli_sum("2.0*X0*X1");
  const auto b = pauli::parse_pauli_sum("-0.5*X0*Z2");
  const bool e_ok = circuit::print_program(circuit::exponentiate_sum(a)) == exponentiate;
  const bool t_ok = circuit::print_program(circuit::trotterize(a, b)) == trotterized;
  const auto tp = circuit::parallelize(circuit::parse_program(sample));
  const bool p_ok = circuit::print_time_sliced(tp) == sliced;
  const auto st = circuit::gate_stats(tp);
  const bool s_ok = st.slice_count == 10 && std::abs(st.one_qubit_per_slice - 0.9) < 1e-12 &&
                    std::abs(st.two_qubit_per_slice - 0.7) < 1e-12;
  const double s = seconds_since(t0);
  report(7, "circuit listings, 10-slice schedule and stats (10, 0.9, 0.7)",
         e_ok && t_ok && p_ok && s_ok && s < kGoldenSeconds,
         {std::string("exponentiate ") + (e_ok ? "match" : "differs"),
          std::string("trotterize ") + (t_ok ? "match" : "differs"),
          std::string("parallelize ") + (p_ok ? "match" : "differs"),
          fmt("stats (%g, %g, %g)", static_cast<double>(st.slice_count), st.one_qubit_per_slice,
              st.two_qubit_per_slice),
          fmt("runtime %.3f s", s)});
}

void criterion_thermo() {
  const auto cfg = config::thermo_defaults();
  const auto t0 = Clock::now();
  std::vector<std::string> details;
  bool ok = true;
  for (double u : kU) {
    const auto ed1 = run_dmet(cfg, u, 1, dmet::SolverKind::ED);
    const auto uc1 = run_dmet(cfg, u, 1, dmet::SolverKind::UCCSD);
    const double dev = std::abs(ed1.energy_per_site - uc1.energy_per_site);
    ok = ok && ed1.converged && uc1.converged && dev <= kThermoTol;
    details.push_back(fmt("U=%g  DMET(1)-ED=%.8f  DMET(1)-UCCSD=%.8f  |diff|=%.2e", u, ed1.energy_per_site,
                          uc1.energy_per_site, dev));
  }
  const auto d1 = run_dmet(cfg, 4.0, 1, dmet::SolverKind::ED);
  const auto d2 = run_dmet(cfg, 4.0, 2, dmet::SolverKind::ED);
  const auto d4 = run_dmet(cfg, 4.0, 4, dmet::SolverKind::ED);
  const double g21 = std::abs(d2.energy_per_site - d1.energy_per_site);
  const double g42 = std::abs(d4.energy_per_site - d2.energy_per_site);
  ok = ok && d2.converged && d4.converged && g42 < g21;
  details.push_back(fmt("U=4  DMET(1)=%.8f  DMET(2)=%.8f  DMET(4)=%.8f", d1.energy_per_site, d2.energy_per_site,
                        d4.energy_per_site));
  details.push_back(fmt("|DMET(4)-DMET(2)|=%.2e  |DMET(2)-DMET(1)|=%.2e", g42, g21));
  const double s = seconds_since(t0);
  ok = ok && s < kThermoSeconds;
  details.push_back(fmt("runtime %.0f s (limit %.0f s)", s, kThermoSeconds));
  report(8, "100-site ring: DMET(1)-UCCSD = DMET(1)-ED, fragment differences shrink at U=4", ok, details);
}

bool rdm_identities(const RDMPair& r, double n, double tol) {
  bool ok = std::abs(r.one_rdm.trace() - n) < tol;
  ok = ok && rdm::antisymmetry_residual(r.two_rdm) < tol;
  ok = ok && (rdm::contract_one_rdm(r.two_rdm, n) - r.one_rdm).cwiseAbs().maxCoeff() < tol;
  return ok;
}

void criterion_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240901);
  std::vector<std::string> details;

  // Anticommutators of Jordan-Wigner ladder images on random modes.
  bool jw = true;
  std::uniform_int_distribution<Index> mode(0, 11);
  for (int k = 0; k < 100; ++k) {
    const Index p = mode(rng);
    const Index q = mode(rng);
    const auto ap = pauli::jw_lower(p);
    const auto adq = pauli::jw_raise(q);
    const auto mixed = pauli::simplify(ap * adq + adq * ap);
    const auto same = pauli::simplify(ap * pauli::jw_lower(q) + pauli::jw_lower(q) * ap);
    const bool expect_one = p == q;
    jw = jw && same.empty() &&
         (expect_one ? pauli::approx_equal(mixed, pauli::PauliSum(pauli::PauliTerm::identity())) : mixed.empty());
  }
  details.push_back(std::string("JW anticommutators on 100 random pairs: ") + (jw ? "ok" : "violated"));

  // Parallelizer semantics on random programs.
  bool par = true;
  std::uniform_int_distribution<Index> width(1, 6);
  std::uniform_int_distribution<std::size_t> length(0, 40);
  for (int k = 0; k < 200; ++k) {
    const Index n = width(rng);
    const auto prog = oracle::random_program(rng, n, length(rng));
    const auto flat = circuit::parallelize(prog).flatten();
    par = par && (oracle::program_unitary(flat, n) - oracle::program_unitary(prog, n)).cwiseAbs().maxCoeff() < 1e-12;
  }
  details.push_back(std::string("parallelize preserves 200 random programs: ") + (par ? "ok" : "violated"));

  // RDM identities on exact and VQE states.
  bool rdms = true;
  for (double u : {2.0, 8.0}) {
    const auto ts = fermion::hubbard_tensors(4, 1.0, u, Boundary::AntiPeriodic);
    rdms = rdms && rdm_identities(ed::ground_state(ts, 4).rdms, 4.0, 1e-10);
    vqe::VQEResult r;
    experiments::uccsd_cell(ring_config(), u, 1, 1, &r);
    rdms = rdms && rdm_identities(r.rdms, 4.0, 1e-8);
  }
  details.push_back(std::string("RDM trace/contraction/antisymmetry on ED and VQE states: ") + (rdms ? "ok" : "violated"));

  // Variational bound on every embedded UCCSD problem of this run.
  for (double u : {2.0, 8.0}) run_dmet(ring_config(), u, 1, dmet::SolverKind::UCCSD);
  const bool variational = g_variational.solves > 0 && g_variational.worst <= kVariationalSlack;
  details.push_back(fmt("variational bound over %g embedded solves: max(ED - VQE)=%.2e", g_variational.solves,
                        g_variational.worst) +
                    (variational ? "  ok" : "  violated"));

  // Fermionic ED against the qubit-space Hamiltonian.
  bool qubit = true;
  for (Boundary b : {Boundary::Periodic, Boundary::AntiPeriodic, Boundary::Open}) {
    for (Index l : {Index{2}, Index{3}}) {
      for (double u : {0.0, 3.0, 7.0}) {
        const auto ts = fermion::hubbard_tensors(l, 1.0, u, b);
        const ComplexMatrix h = oracle::sum_matrix(pauli::jw_transform(fermion::tensors_to_fermion_sum(ts)), 2 * l);
        for (Index n = 2; n <= l; n += 2) {
          qubit = qubit && std::abs(ed::ground_state(ts, n).energy - oracle::sector_ground(h.real(), 2 * l, n)) < 1e-10;
        }
      }
    }
  }
  details.push_back(std::string("fermionic ED = qubit-space diagonalization for L <= 3: ") + (qubit ? "ok" : "violated"));
  const double s = seconds_since(t0);
  details.push_back(fmt("runtime %.1f s (limit %.0f s)", s, kPropertySeconds));
  report(9, "property suites", jw && par && rdms && variational && qubit && s < kPropertySeconds, details);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion_exact,   criterion_dmet1_ed, criterion_dmet2_ed,
                                                    criterion_uccsd,   criterion_two_site_uccsd, criterion_trotter,
                                                    criterion_golden,  criterion_thermo,   criterion_properties};
  for (const auto& c : criteria) c();
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

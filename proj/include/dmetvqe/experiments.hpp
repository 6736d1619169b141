#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dmetvqe/config.hpp"
#include "dmetvqe/vqe.hpp"

namespace dmetvqe::experiments {

/// One computed energy per site.
struct Cell {
  double value = 0.0;
  bool converged = false;
  std::string diagnostic;
  double seconds = 0.0;
};

/// Runs task(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

/// Lattice Hamiltonian of the config at interaction U.
fermion::IntegralTensors lattice_tensors(const config::ExperimentConfig& cfg, double interaction);

/// Full-lattice integrals in a basis where the one-body part is diagonal:
/// momentum orbitals for rings, hopping eigenvectors otherwise.
fermion::IntegralTensors diagonal_basis_tensors(const config::ExperimentConfig& cfg, double interaction);

Cell exact_cell(const config::ExperimentConfig& cfg, double interaction);

/// Full-lattice UCCSD-VQE; `result` receives the optimizer output if given.
Cell uccsd_cell(const config::ExperimentConfig& cfg, double interaction, int order, int steps,
                vqe::VQEResult* result = nullptr);

Cell dmet_cell(const config::ExperimentConfig& cfg, double interaction, Index fragment_size, dmet::SolverKind solver);

Cell compute_cell(const config::ExperimentConfig& cfg, const config::Method& method, double interaction);

struct Table {
  std::vector<double> interactions;
  std::vector<std::string> row_labels;
  std::vector<std::vector<Cell>> cells;  // [row][interaction]

  bool all_converged() const;
  /// Cells as (row, column) lookup by label; throws if absent.
  const Cell& at(const std::string& row, std::size_t column) const;
};

/// Every (method, U) cell of the config.
Table energy_table(const config::ExperimentConfig& cfg, unsigned threads = 1);

/// Appends |row_b - row_a| rows for consecutive DMET-ED rows of increasing
/// fragment size.
void add_fragment_differences(Table& table, const config::ExperimentConfig& cfg);

struct ScanPoint {
  int order = 1;
  int steps = 1;
  Cell cell;
};

struct TrotterScan {
  double interaction = 0.0;
  double fci = 0.0;
  std::vector<ScanPoint> points;

  bool all_converged() const;
  double spread() const;
};

TrotterScan trotter_scan(const config::ExperimentConfig& cfg, unsigned threads = 1);

/// "method,<U>,<U>,..." followed by one row per method; 8 significant digits.
std::string to_csv(const Table& table);
/// "series,order,steps,energy_per_site" with the FCI reference last.
std::string to_csv(const TrotterScan& scan);

/// Human-readable lines for every unconverged cell.
std::vector<std::string> diagnostics(const Table& table);
std::vector<std::string> diagnostics(const TrotterScan& scan);

}  // namespace dmetvqe::experiments

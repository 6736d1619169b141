#pragma once

#include <string>
#include <vector>

#include "dmetvqe/dmet.hpp"
#include "dmetvqe/fermion.hpp"
#include "dmetvqe/optimize.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::config {

/// One row of an energy table: "Exact", "UCCSD", "DMET(n)-ED" or
/// "DMET(n)-UCCSD".
struct Method {
  enum class Kind { Exact, UCCSD, DMET };
  Kind kind = Kind::Exact;
  Index fragment_size = 0;
  dmet::SolverKind solver = dmet::SolverKind::ED;

  std::string label() const;
  /// Case-insensitive; throws ConfigError on anything else.
  static Method parse(const std::string& text);

  friend bool operator==(const Method&, const Method&) = default;
};

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Everything an experiment command needs. JSON layout:
///
///   {
///     "lattice":   {"sites": 4, "hopping": 1.0, "interactions": [2, 4],
///                   "boundary": "anti-periodic", "electrons": 4},
///     "methods":   ["Exact", "UCCSD", "DMET(1)-ED"],
///     "trotter":   {"order": 1, "steps": 1},
///     "trotter_scan": {"orders": [1, 2], "steps": [1, 2, 3, 4]},
///     "optimizer": {"max_iterations": 200, "gradient_tolerance": 1e-6,
///                   "value_tolerance": 1e-9, "fd_step": 1e-5},
///     "dmet":      {"max_iterations": 50, "u_tolerance": 1e-6,
///                   "electron_tolerance": 1e-6},
///     "output":    "table1.csv"
///   }
///
/// Every section is optional; unknown keys anywhere are rejected.
struct ExperimentConfig {
  Index sites = 4;
  double hopping = 1.0;
  std::vector<double> interactions{2.0, 4.0, 6.0, 8.0, 10.0};
  fermion::Boundary boundary = fermion::Boundary::AntiPeriodic;
  /// Half filling when zero.
  Index electrons = 0;
  std::vector<Method> methods;
  int trotter_order = 1;
  int trotter_steps = 1;
  std::vector<int> scan_orders{1, 2};
  std::vector<int> scan_steps{1, 2, 3, 4};
  optimize::BFGSOptions optimizer{};
  int dmet_max_iterations = 50;
  double u_tolerance = 1e-6;
  double electron_tolerance = 1e-6;
  std::string output;

  Index electron_count() const noexcept { return electrons == 0 ? sites : electrons; }
  void validate() const;

  /// DMET settings for one cell.
  dmet::DMETConfig dmet_config(double interaction, Index fragment_size, dmet::SolverKind solver) const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Built-in setups of the three experiment commands.
ExperimentConfig table1_defaults();
ExperimentConfig trotter_scan_defaults();
ExperimentConfig thermo_defaults();

fermion::Boundary parse_boundary(const std::string& text);
std::string to_string(fermion::Boundary boundary);

}  // namespace dmetvqe::config

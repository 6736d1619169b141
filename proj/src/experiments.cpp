#include "dmetvqe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "dmetvqe/ed.hpp"
#include "dmetvqe/format.hpp"

namespace dmetvqe::experiments {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

fermion::IntegralTensors lattice_tensors(const config::ExperimentConfig& cfg, double interaction) {
  return fermion::hubbard_tensors(cfg.sites, cfg.hopping, interaction, cfg.boundary);
}

fermion::IntegralTensors diagonal_basis_tensors(const config::ExperimentConfig& cfg, double interaction) {
  const fermion::IntegralTensors site = lattice_tensors(cfg, interaction);
  if (cfg.boundary != fermion::Boundary::Open) return fermion::momentum_transform(site);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(site.h1);
  Matrix vecs = eig.eigenvectors();
  meanfield::fix_column_signs(vecs);
  return vqe::rotate_integrals(site, vecs);
}

namespace {

template <class F>
Cell timed(F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Cell c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.converged = false;
    c.value = std::nan("");
    c.diagnostic = e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace

Cell exact_cell(const config::ExperimentConfig& cfg, double interaction) {
  return timed([&](Cell& c) {
    const ed::GroundState gs = ed::ground_state(lattice_tensors(cfg, interaction), cfg.electron_count());
    c.value = gs.energy / static_cast<double>(cfg.sites);
    c.converged = true;
  });
}

Cell uccsd_cell(const config::ExperimentConfig& cfg, double interaction, int order, int steps,
                vqe::VQEResult* result) {
  return timed([&](Cell& c) {
    const fermion::IntegralTensors ts = diagonal_basis_tensors(cfg, interaction);
    vqe::UCCSDAnsatz ansatz{cfg.sites, cfg.electron_count() / 2, order, steps};
    vqe::VQEOptions options;
    options.bfgs = cfg.optimizer;
    vqe::VQEResult res = vqe::minimize(ts, ansatz, options);
    c.value = res.energy / static_cast<double>(cfg.sites);
    c.converged = res.converged;
    if (!res.converged) c.diagnostic = "BFGS stopped after " + std::to_string(res.iterations) + " iterations";
    if (result != nullptr) *result = std::move(res);
  });
}

Cell dmet_cell(const config::ExperimentConfig& cfg, double interaction, Index fragment_size, dmet::SolverKind solver) {
  return timed([&](Cell& c) {
    const dmet::DMETResult r = dmet::run(cfg.dmet_config(interaction, fragment_size, solver));
    c.value = r.energy_per_site;
    c.converged = r.converged;
    if (!r.converged) {
      c.diagnostic = "DMET not converged after " + std::to_string(r.history.size()) + " macro-iterations";
    }
  });
}

Cell compute_cell(const config::ExperimentConfig& cfg, const config::Method& method, double interaction) {
  switch (method.kind) {
    case config::Method::Kind::Exact:
      return exact_cell(cfg, interaction);
    case config::Method::Kind::UCCSD:
      return uccsd_cell(cfg, interaction, cfg.trotter_order, cfg.trotter_steps);
    case config::Method::Kind::DMET:
      return dmet_cell(cfg, interaction, method.fragment_size, method.solver);
  }
  return {};
}

bool Table::all_converged() const {
  for (const auto& row : cells)
    for (const auto& c : row)
      if (!c.converged) return false;
  return true;
}

const Cell& Table::at(const std::string& row, std::size_t column) const {
  const auto it = std::find(row_labels.begin(), row_labels.end(), row);
  if (it == row_labels.end()) throw InvalidArgument("table has no row '" + row + "'");
  return cells[static_cast<std::size_t>(it - row_labels.begin())].at(column);
}

Table energy_table(const config::ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  Table t;
  t.interactions = cfg.interactions;
  const std::size_t cols = cfg.interactions.size();
  for (const auto& m : cfg.methods) t.row_labels.push_back(m.label());
  t.cells.assign(cfg.methods.size(), std::vector<Cell>(cols));
  parallel_for(cfg.methods.size() * cols, threads, [&](std::size_t k) {
    const std::size_t r = k / cols;
    const std::size_t u = k % cols;
    t.cells[r][u] = compute_cell(cfg, cfg.methods[r], cfg.interactions[u]);
  });
  return t;
}

void add_fragment_differences(Table& table, const config::ExperimentConfig& cfg) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < cfg.methods.size(); ++r) {
    const auto& m = cfg.methods[r];
    if (m.kind == config::Method::Kind::DMET && m.solver == dmet::SolverKind::ED) rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(),
            [&](std::size_t a, std::size_t b) { return cfg.methods[a].fragment_size < cfg.methods[b].fragment_size; });
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const std::size_t a = rows[i];
    const std::size_t b = rows[i + 1];
    std::vector<Cell> diff(table.interactions.size());
    for (std::size_t u = 0; u < diff.size(); ++u) {
      diff[u].value = std::abs(table.cells[b][u].value - table.cells[a][u].value);
      diff[u].converged = table.cells[a][u].converged && table.cells[b][u].converged;
    }
    table.row_labels.push_back("|" + table.row_labels[b] + " - " + table.row_labels[a] + "|");
    table.cells.push_back(std::move(diff));
  }
}

bool TrotterScan::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const ScanPoint& p) { return p.cell.converged; });
}

double TrotterScan::spread() const {
  if (points.empty()) return 0.0;
  double lo = points.front().cell.value;
  double hi = lo;
  for (const auto& p : points) {
    lo = std::min(lo, p.cell.value);
    hi = std::max(hi, p.cell.value);
  }
  return hi - lo;
}

TrotterScan trotter_scan(const config::ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  TrotterScan scan;
  scan.interaction = cfg.interactions.front();
  scan.fci = exact_cell(cfg, scan.interaction).value;
  for (int o : cfg.scan_orders)
    for (int s : cfg.scan_steps) scan.points.push_back({o, s, {}});
  parallel_for(scan.points.size(), threads, [&](std::size_t k) {
    auto& p = scan.points[k];
    p.cell = uccsd_cell(cfg, scan.interaction, p.order, p.steps);
  });
  return scan;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  out << "method";
  for (double u : table.interactions) out << ',' << format_significant(u, 8);
  out << '\n';
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    out << table.row_labels[r];
    for (const auto& c : table.cells[r]) out << ',' << format_significant(c.value, 8);
    out << '\n';
  }
  return out.str();
}

std::string to_csv(const TrotterScan& scan) {
  std::ostringstream out;
  out << "series,order,steps,energy_per_site\n";
  for (const auto& p : scan.points) {
    out << "uccsd," << p.order << ',' << p.steps << ',' << format_significant(p.cell.value, 8) << '\n';
  }
  out << "fci,,," << format_significant(scan.fci, 8) << '\n';
  return out.str();
}

std::vector<std::string> diagnostics(const Table& table) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < table.row_labels.size(); ++r)
    for (std::size_t u = 0; u < table.interactions.size(); ++u) {
      const Cell& c = table.cells[r][u];
      if (!c.converged) {
        out.push_back(table.row_labels[r] + " U=" + format_significant(table.interactions[u], 8) + ": " +
                      (c.diagnostic.empty() ? "not converged" : c.diagnostic));
      }
    }
  return out;
}

std::vector<std::string> diagnostics(const TrotterScan& scan) {
  std::vector<std::string> out;
  for (const auto& p : scan.points) {
    if (!p.cell.converged) {
      out.push_back("order " + std::to_string(p.order) + " steps " + std::to_string(p.steps) + ": " +
                    (p.cell.diagnostic.empty() ? "not converged" : p.cell.diagnostic));
    }
  }
  return out;
}

}  // namespace dmetvqe::experiments

// Experiment runner and circuit toolbox.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dmetvqe/circuit.hpp"
#include "dmetvqe/config.hpp"
#include "dmetvqe/experiments.hpp"
#include "dmetvqe/format.hpp"
#include "dmetvqe/pauli.hpp"

namespace {

using namespace dmetvqe;

struct Common {
  std::string config_path;
  std::string out;
  unsigned threads = 0;
};

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("DMETVQE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::string resolve_output(const Common& c, const config::ExperimentConfig& cfg) {
  std::string path = !c.out.empty() ? c.out : cfg.output;
  if (path.empty() || path == "-") return path;
  if (const char* dir = std::getenv("DMETVQE_OUTPUT_DIR")) {
    if (std::filesystem::path(path).is_relative()) path = (std::filesystem::path(dir) / path).string();
  }
  return path;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  std::cerr << "wrote " << path << '\n';
}

config::ExperimentConfig load_or(const Common& c, config::ExperimentConfig defaults) {
  if (c.config_path.empty()) return defaults;
  config::ExperimentConfig cfg = config::load_config(c.config_path);
  if (cfg.methods.empty()) cfg.methods = defaults.methods;
  return cfg;
}

int report(const std::vector<std::string>& problems) {
  for (const auto& p : problems) std::cerr << "not converged: " << p << '\n';
  return problems.empty() ? 0 : 1;
}

// Argument text, a file of that name, or stdin for "-" / nothing.
std::string read_input(const std::string& arg) {
  if (arg.empty() || arg == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream f(arg);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  return arg;
}

circuit::TimeSlicedProgram read_schedule(const std::string& text) {
  if (text.find("Time Slice") != std::string::npos) return circuit::parse_time_sliced(text);
  return circuit::parallelize(circuit::parse_program(text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DMET with a UCCSD-VQE fragment solver on a statevector simulator"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--out", common.out, "Output CSV path (default: config 'output' or stdout)");
    sub->add_option("--threads", common.threads, "Worker threads for independent cells");
  };

  auto* table1 = app.add_subcommand("table1", "Energy per site of the 4-site ring for every method and U");
  add_common(table1);
  bool with_u0 = false;
  table1->add_flag("--with-u0", with_u0, "Prepend a U=0 column");

  auto* scan = app.add_subcommand("trotter-scan", "UCCSD energy per site over Trotter orders and steps");
  add_common(scan);

  auto* thermo = app.add_subcommand("thermo", "DMET on the 100-site ring for several fragment sizes");
  add_common(thermo);

  auto* circ = app.add_subcommand("circuit", "Circuit compiler utilities");
  circ->require_subcommand(1);
  std::string expr_a;
  std::string expr_b;
  int order = 1;
  int steps = 1;
  auto* c_exp = circ->add_subcommand("exponentiate", "Program for exp(-i A) of a Pauli sum");
  c_exp->add_option("sum", expr_a, "Pauli sum, e.g. 2.0*X0*X1 (file or '-' for stdin)");
  auto* c_trot = circ->add_subcommand("trotterize", "Trotter program for exp(-i (A + B))");
  c_trot->add_option("a", expr_a, "Pauli sum A")->required();
  c_trot->add_option("b", expr_b, "Pauli sum B")->required();
  c_trot->add_option("--order", order, "Trotter order (1 or 2)");
  c_trot->add_option("--steps", steps, "Trotter steps");
  std::string program_arg;
  auto* c_par = circ->add_subcommand("parallelize", "Greedy time-slice schedule of a program");
  c_par->add_option("program", program_arg, "Program text, file, or '-' for stdin");
  auto* c_stats = circ->add_subcommand("stats", "Slice count and mean one/two-qubit gates per slice");
  c_stats->add_option("program", program_arg, "Program or time-sliced listing, file, or '-' for stdin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) {
      config::ExperimentConfig cfg = load_or(common, config::table1_defaults());
      if (with_u0 && (cfg.interactions.empty() || cfg.interactions.front() != 0.0)) {
        cfg.interactions.insert(cfg.interactions.begin(), 0.0);
      }
      const experiments::Table t = experiments::energy_table(cfg, resolve_threads(common.threads));
      emit(experiments::to_csv(t), resolve_output(common, cfg));
      return report(experiments::diagnostics(t));
    }
    if (*scan) {
      const config::ExperimentConfig cfg = load_or(common, config::trotter_scan_defaults());
      const experiments::TrotterScan s = experiments::trotter_scan(cfg, resolve_threads(common.threads));
      emit(experiments::to_csv(s), resolve_output(common, cfg));
      std::cerr << "spread " << format_significant(s.spread(), 3) << '\n';
      return report(experiments::diagnostics(s));
    }
    if (*thermo) {
      const config::ExperimentConfig cfg = load_or(common, config::thermo_defaults());
      experiments::Table t = experiments::energy_table(cfg, resolve_threads(common.threads));
      const auto problems = experiments::diagnostics(t);
      experiments::add_fragment_differences(t, cfg);
      emit(experiments::to_csv(t), resolve_output(common, cfg));
      return report(problems);
    }
    if (*c_exp) {
      std::cout << circuit::print_program(circuit::exponentiate_sum(pauli::parse_pauli_sum(read_input(expr_a))));
      return 0;
    }
    if (*c_trot) {
      const pauli::PauliSum a = pauli::parse_pauli_sum(read_input(expr_a));
      const pauli::PauliSum b = pauli::parse_pauli_sum(read_input(expr_b));
      std::cout << circuit::print_program(circuit::trotterize(a, b, order, steps));
      return 0;
    }
    if (*c_par) {
      std::cout << circuit::print_time_sliced(circuit::parallelize(circuit::parse_program(read_input(program_arg))));
      return 0;
    }
    if (*c_stats) {
      const circuit::GateStats s = circuit::gate_stats(read_schedule(read_input(program_arg)));
      std::cout << s.slice_count << ", " << format_significant(s.one_qubit_per_slice, 10) << ", "
                << format_significant(s.two_qubit_per_slice, 10) << '\n';
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

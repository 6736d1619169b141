#include "dmetvqe/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dmetvqe::config {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

Index count(const json& v, const std::string& where) {
  const long long n = integer(v, where);
  if (n < 0) throw ConfigError(where + ": must not be negative");
  return static_cast<Index>(n);
}

template <class T, class F>
std::vector<T> list(const json& v, const std::string& where, F item) {
  if (!v.is_array()) throw ConfigError(where + ": expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(item(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string Method::label() const {
  switch (kind) {
    case Kind::Exact:
      return "Exact";
    case Kind::UCCSD:
      return "UCCSD";
    case Kind::DMET:
      return "DMET(" + std::to_string(fragment_size) + ")-" + (solver == dmet::SolverKind::ED ? "ED" : "UCCSD");
  }
  return "";
}

Method Method::parse(const std::string& text) {
  const std::string s = lower(text);
  Method m;
  if (s == "exact") return m;
  if (s == "uccsd") {
    m.kind = Kind::UCCSD;
    return m;
  }
  static const std::regex pattern(R"(dmet\((\d+)\)-(ed|uccsd))");
  std::smatch match;
  if (std::regex_match(s, match, pattern)) {
    m.kind = Kind::DMET;
    m.fragment_size = static_cast<Index>(std::stoul(match[1].str()));
    m.solver = dmet::parse_solver(match[2].str());
    if (m.fragment_size == 0) throw ConfigError("method '" + text + "': fragment size must be positive");
    return m;
  }
  throw ConfigError("unknown method '" + text + "' (expected Exact, UCCSD, DMET(n)-ED or DMET(n)-UCCSD)");
}

fermion::Boundary parse_boundary(const std::string& text) {
  const std::string s = lower(text);
  if (s == "periodic") return fermion::Boundary::Periodic;
  if (s == "anti-periodic" || s == "antiperiodic") return fermion::Boundary::AntiPeriodic;
  if (s == "open") return fermion::Boundary::Open;
  throw ConfigError("unknown boundary '" + text + "' (expected periodic, anti-periodic or open)");
}

std::string to_string(fermion::Boundary boundary) {
  switch (boundary) {
    case fermion::Boundary::Periodic:
      return "periodic";
    case fermion::Boundary::AntiPeriodic:
      return "anti-periodic";
    case fermion::Boundary::Open:
      return "open";
  }
  return "";
}

void ExperimentConfig::validate() const {
  if (sites < 2) throw ConfigError("lattice.sites must be at least 2");
  if (!(hopping >= 0.0)) throw ConfigError("lattice.hopping must not be negative");
  if (interactions.empty()) throw ConfigError("lattice.interactions is empty");
  if (electron_count() % 2 != 0 || electron_count() > 2 * sites) {
    throw ConfigError("lattice.electrons must be even and at most twice the site count");
  }
  for (const auto& m : methods) {
    if (m.kind == Method::Kind::DMET && sites % m.fragment_size != 0) {
      throw ConfigError("method " + m.label() + ": fragment size does not divide the lattice");
    }
  }
  auto check_trotter = [](int order, int steps, const std::string& where) {
    if (order != 1 && order != 2) throw ConfigError(where + ": order must be 1 or 2");
    if (steps < 1) throw ConfigError(where + ": steps must be positive");
  };
  check_trotter(trotter_order, trotter_steps, "trotter");
  for (int o : scan_orders) check_trotter(o, 1, "trotter_scan.orders");
  for (int s : scan_steps) check_trotter(1, s, "trotter_scan.steps");
  if (optimizer.max_iterations < 1) throw ConfigError("optimizer.max_iterations must be positive");
  if (!(optimizer.gradient_tolerance > 0.0 && optimizer.value_tolerance >= 0.0 && optimizer.fd_step > 0.0)) {
    throw ConfigError("optimizer tolerances must be positive");
  }
  if (dmet_max_iterations < 1) throw ConfigError("dmet.max_iterations must be positive");
  if (!(u_tolerance > 0.0 && electron_tolerance > 0.0)) throw ConfigError("dmet tolerances must be positive");
}

dmet::DMETConfig ExperimentConfig::dmet_config(double interaction, Index fragment_size,
                                               dmet::SolverKind solver) const {
  dmet::DMETConfig c;
  c.sites = sites;
  c.hopping = hopping;
  c.interaction = interaction;
  c.boundary = boundary;
  c.electrons = electrons;
  c.fragment_size = fragment_size;
  c.solver = solver;
  c.trotter_order = trotter_order;
  c.trotter_steps = trotter_steps;
  c.max_macro_iterations = dmet_max_iterations;
  c.u_tolerance = u_tolerance;
  c.electron_tolerance = electron_tolerance;
  c.vqe.bfgs = optimizer;
  return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config", {"lattice", "methods", "trotter", "trotter_scan", "optimizer", "dmet", "output"});
  ExperimentConfig c;
  if (doc.contains("lattice")) {
    const json& l = doc["lattice"];
    reject_unknown(l, "lattice", {"sites", "hopping", "interactions", "boundary", "electrons"});
    if (l.contains("sites")) c.sites = count(l["sites"], "lattice.sites");
    if (l.contains("hopping")) c.hopping = number(l["hopping"], "lattice.hopping");
    if (l.contains("interactions")) c.interactions = list<double>(l["interactions"], "lattice.interactions", number);
    if (l.contains("electrons")) c.electrons = count(l["electrons"], "lattice.electrons");
    if (l.contains("boundary")) {
      if (!l["boundary"].is_string()) throw ConfigError("lattice.boundary: expected a string");
      c.boundary = parse_boundary(l["boundary"].get<std::string>());
    }
  }
  if (doc.contains("methods")) {
    c.methods = list<Method>(doc["methods"], "methods", [](const json& v, const std::string& where) {
      if (!v.is_string()) throw ConfigError(where + ": expected a string");
      return Method::parse(v.get<std::string>());
    });
  }
  auto as_int = [](const json& v, const std::string& where) { return static_cast<int>(integer(v, where)); };
  if (doc.contains("trotter")) {
    const json& t = doc["trotter"];
    reject_unknown(t, "trotter", {"order", "steps"});
    if (t.contains("order")) c.trotter_order = as_int(t["order"], "trotter.order");
    if (t.contains("steps")) c.trotter_steps = as_int(t["steps"], "trotter.steps");
  }
  if (doc.contains("trotter_scan")) {
    const json& t = doc["trotter_scan"];
    reject_unknown(t, "trotter_scan", {"orders", "steps"});
    if (t.contains("orders")) c.scan_orders = list<int>(t["orders"], "trotter_scan.orders", as_int);
    if (t.contains("steps")) c.scan_steps = list<int>(t["steps"], "trotter_scan.steps", as_int);
  }
  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    reject_unknown(o, "optimizer", {"max_iterations", "gradient_tolerance", "value_tolerance", "fd_step"});
    if (o.contains("max_iterations")) c.optimizer.max_iterations = as_int(o["max_iterations"], "optimizer.max_iterations");
    if (o.contains("gradient_tolerance")) {
      c.optimizer.gradient_tolerance = number(o["gradient_tolerance"], "optimizer.gradient_tolerance");
    }
    if (o.contains("value_tolerance")) c.optimizer.value_tolerance = number(o["value_tolerance"], "optimizer.value_tolerance");
    if (o.contains("fd_step")) c.optimizer.fd_step = number(o["fd_step"], "optimizer.fd_step");
  }
  if (doc.contains("dmet")) {
    const json& d = doc["dmet"];
    reject_unknown(d, "dmet", {"max_iterations", "u_tolerance", "electron_tolerance"});
    if (d.contains("max_iterations")) c.dmet_max_iterations = as_int(d["max_iterations"], "dmet.max_iterations");
    if (d.contains("u_tolerance")) c.u_tolerance = number(d["u_tolerance"], "dmet.u_tolerance");
    if (d.contains("electron_tolerance")) c.electron_tolerance = number(d["electron_tolerance"], "dmet.electron_tolerance");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output: expected a string");
    c.output = doc["output"].get<std::string>();
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig table1_defaults() {
  ExperimentConfig c;
  for (const char* m : {"Exact", "UCCSD", "DMET(1)-ED", "DMET(2)-ED", "DMET(1)-UCCSD"}) c.methods.push_back(Method::parse(m));
  return c;
}

ExperimentConfig trotter_scan_defaults() {
  ExperimentConfig c;
  c.interactions = {2.0};
  return c;
}

ExperimentConfig thermo_defaults() {
  ExperimentConfig c;
  c.sites = 100;
  for (const char* m : {"DMET(1)-ED", "DMET(1)-UCCSD", "DMET(2)-ED", "DMET(4)-ED"}) c.methods.push_back(Method::parse(m));
  return c;
}

}  // namespace dmetvqe::config

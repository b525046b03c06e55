#include "wopsip/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wopsip {

SolverFailure::SolverFailure(int n_, double bestResidual_)
    : std::runtime_error("solver did not converge at N=" + std::to_string(n_) +
                         " (best residual " + std::to_string(bestResidual_) + ")"),
      n(n_),
      bestResidual(bestResidual_) {}

void ExperimentConfig::validate() const {
  if (nList.empty()) throw std::invalid_argument("empty N list");
  for (std::size_t i = 0; i + 1 < nList.size(); ++i)
    if (nList[i] >= nList[i + 1])
      throw std::invalid_argument("N list must be strictly increasing");
  for (int n : nList)
    generate_mesh(parse_mesh_family(meshName, delta), n);  // rejects invalid N
  parse_scheme(scheme_name(scheme));
  make_problem(problemName, delta);
}

ConvergenceReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Problem problem = make_problem(config.problemName, config.delta);
  const MeshFamily family = parse_mesh_family(config.meshName, config.delta);

  ConvergenceReport report;
  report.config = config;
  for (int n : config.nList) {
    const auto start = std::chrono::steady_clock::now();
    const Mesh mesh = generate_mesh(family, n);
    const AssembledSystem system = config.scheme == Scheme::Wopsip
                                       ? assemble_wopsip(mesh, problem, config.penaltyMode)
                                       : assemble_wbcr(mesh, problem);
    SolveResult solution;
    try {
      solution = solve_saddle(system, config.solver);
    } catch (const NonConvergence& failure) {
      throw SolverFailure(n, failure.bestResidual);
    }

    ConvergenceRow row;
    row.n = n;
    row.np = dof_count(mesh, config.scheme);
    row.h = mesh.h;
    row.errors = error_report(mesh, problem, system.dofMap, solution.u, solution.p);
    row.iterations = solution.iterations;
    if (!report.rows.empty()) {
      const ErrorReport& prev = report.rows.back().errors;
      row.rateH1 = convergence_rate(prev.relH1Broken, row.errors.relH1Broken);
      row.rateL2u = convergence_rate(prev.relL2u, row.errors.relL2u);
      row.rateL2p = convergence_rate(prev.relL2p, row.errors.relL2p);
      row.rateCombined = convergence_rate(prev.relCombined, row.errors.relCombined);
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(row);
  }
  return report;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

std::string maybe(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

}  // namespace

void emit_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "N,Np,h,err_h1,err_l2u,err_l2p,err_energy,err_combined,"
         "rate_h1,rate_l2u,rate_l2p,rate_combined,iters,seconds\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << row.np << ',' << sci(row.h) << ',' << sci(row.errors.relH1Broken)
        << ',' << sci(row.errors.relL2u) << ',' << sci(row.errors.relL2p) << ','
        << sci(row.errors.relEnergy) << ',' << sci(row.errors.relCombined) << ','
        << maybe(row.rateH1) << ',' << maybe(row.rateL2u) << ',' << maybe(row.rateL2p) << ','
        << maybe(row.rateCombined) << ',' << row.iterations << ',' << sci(row.seconds) << "\n";
  }
}

void emit_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_csv(report, out);
  if (!out.good()) throw std::runtime_error("write failure: " + path);
}

double parse_delta(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse delta: " + text);
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto notBlank = line.find_first_not_of(" \t\r");
    if (notBlank == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "scheme")
      config.scheme = parse_scheme(value);
    else if (key == "penalty")
      config.penaltyMode = parse_penalty_mode(value);
    else if (key == "mesh")
      config.meshName = value;
    else if (key == "problem")
      config.problemName = value;
    else if (key == "delta")
      config.delta = parse_delta(value);
    else if (key == "n") {
      config.nList.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) config.nList.push_back(std::stoi(item));
    } else if (key == "tol")
      config.solver.relTolerance = std::stod(value);
    else if (key == "solver")
      config.solver.method = value == "minres"
                                 ? SolveOptions::Method::KrylovIndefinite
                                 : SolveOptions::Method::SchurComplement;
    else if (key == "precond")
      config.solver.diagonalPreconditioner = (value == "diag");
    else if (key == "max-iters")
      config.solver.maxIterations = std::stol(value);
    else if (key == "out")
      config.outPath = value;
    else
      throw std::invalid_argument("unknown config key: " + key);
  }
  return config;
}

}  // namespace wopsip

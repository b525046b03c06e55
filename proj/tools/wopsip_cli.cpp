#include "wopsip/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  return ns;
}

void print_report(const wopsip::ConvergenceReport& report) {
  std::printf("# scheme=%s mesh=%s problem=%s delta=%g penalty=%s\n",
              wopsip::scheme_name(report.config.scheme).c_str(),
              report.config.meshName.c_str(), report.config.problemName.c_str(),
              report.config.delta,
              report.config.penaltyMode == wopsip::PenaltyMode::Kappa ? "kappa" : "kappa-star");
  std::printf("%6s %9s %10s %12s %6s %12s %6s %12s %6s %12s %6s %8s %8s\n", "N", "Np", "h",
              "err_h1", "r", "err_l2u", "r", "err_l2p", "r", "err_comb", "r", "iters", "sec");
  for (const auto& row : report.rows) {
    const auto rate = [](const std::optional<double>& r) {
      return r ? *r : std::numeric_limits<double>::quiet_NaN();
    };
    std::printf("%6d %9ld %10.3e %12.5e %6.2f %12.5e %6.2f %12.5e %6.2f %12.5e %6.2f %8ld %8.2f\n",
                row.n, row.np, row.h, row.errors.relH1Broken, rate(row.rateH1),
                row.errors.relL2u, rate(row.rateL2u), row.errors.relL2p, rate(row.rateL2p),
                row.errors.relCombined, rate(row.rateCombined), row.iterations, row.seconds);
  }
}

int run_converge(const wopsip::ExperimentConfig& config, const std::string& matrixPrefix) {
  const auto report = wopsip::run_experiment(config);
  print_report(report);
  if (!config.outPath.empty()) wopsip::emit_csv(report, config.outPath);

  if (!matrixPrefix.empty()) {
    const wopsip::Problem problem = wopsip::make_problem(config.problemName, config.delta);
    const auto family = wopsip::parse_mesh_family(config.meshName, config.delta);
    for (int n : config.nList) {
      const wopsip::Mesh mesh = wopsip::generate_mesh(family, n);
      const auto system = config.scheme == wopsip::Scheme::Wopsip
                              ? wopsip::assemble_wopsip(mesh, problem, config.penaltyMode)
                              : wopsip::assemble_wbcr(mesh, problem);
      std::ofstream outA(matrixPrefix + "_A_n" + std::to_string(n) + ".mtx");
      wopsip::export_matrix_market(system.A, outA);
      std::ofstream outB(matrixPrefix + "_B_n" + std::to_string(n) + ".mtx");
      wopsip::export_matrix_market(system.B, outB);
    }
  }
  return 0;
}

int run_diagnose(const std::string& meshName, double delta, const std::vector<int>& ns,
                 const std::string& outPath) {
  std::ostringstream csv;
  csv << "N,h,min_angle,max_angle,semi_regularity,tau_f,tau_ave,tau_dg,tau_wop\n";
  std::printf("%6s %10s %12s %12s %12s %12s %12s %12s\n", "N", "1/h", "min_angle", "max_angle",
              "tau_f", "tau_ave", "tau_dg", "tau_wop");
  for (int n : ns) {
    const auto mesh = wopsip::generate_mesh(wopsip::parse_mesh_family(meshName, delta), n);
    const auto quality = wopsip::mesh_quality(mesh);
    const auto tau = wopsip::penalty_diagnostics(mesh);
    std::printf("%6d %10.4e %12.5e %12.5e %12.4e %12.4e %12.4e %12.4e\n", n, 1.0 / mesh.h,
                quality.minAngleMetric, quality.maxAngleMetric, tau.tauF, tau.tauAve, tau.tauDg,
                tau.tauWop);
    char line[256];
    std::snprintf(line, sizeof(line), "%d,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e,%.5e\n", n, mesh.h,
                  quality.minAngleMetric, quality.maxAngleMetric, quality.semiRegularity,
                  tau.tauF, tau.tauAve, tau.tauDg, tau.tauWop);
    csv << line;
  }
  if (!outPath.empty()) {
    std::ofstream out(outPath);
    if (!out) throw std::runtime_error("cannot open output file: " + outPath);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WOPSIP / well-balanced CR Stokes solver on graded meshes"};
  app.require_subcommand(1);

  // converge
  auto* converge = app.add_subcommand("converge", "run a convergence study");
  std::string configPath, scheme, penalty, meshName, problemName, deltaText, nText, outPath;
  std::string solver = "schur", precond = "diag", matrixPrefix;
  double tol = -1.0;
  long maxIters = 0;
  converge->add_option("--config", configPath, "key=value config file");
  converge->add_option("--scheme", scheme, "wopsip | wbcr");
  converge->add_option("--penalty", penalty, "kappa | kappa-star");
  converge->add_option("--mesh", meshName, "uniform | shishkin | cosine | quadratic");
  converge->add_option("--problem", problemName, "poly | layer");
  converge->add_option("--delta", deltaText, "layer width, e.g. 1/128");
  converge->add_option("--n", nText, "comma-separated divisions, e.g. 16,32,64");
  converge->add_option("--tol", tol, "solver relative residual tolerance");
  converge->add_option("--solver", solver, "schur | minres")
      ->check(CLI::IsMember({"schur", "minres"}));
  converge->add_option("--precond", precond, "diag | none")->check(CLI::IsMember({"diag", "none"}));
  converge->add_option("--max-iters", maxIters, "solver iteration cap");
  converge->add_option("--out", outPath, "CSV output path");
  converge->add_option("--export-matrix", matrixPrefix, "MatrixMarket dump prefix");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "mesh quality and penalty scales");
  std::string dMesh = "shishkin", dDelta = "1/1024", dN = "16,32,64", dOut;
  diagnose->add_option("--mesh", dMesh, "mesh family");
  diagnose->add_option("--delta", dDelta, "Shishkin layer width");
  diagnose->add_option("--n", dN, "comma-separated divisions");
  diagnose->add_option("--out", dOut, "CSV output path");

  // export-mesh
  auto* exportMesh = app.add_subcommand("export-mesh", "write a mesh as plain text");
  std::string eMesh = "uniform", eDelta = "1/128", eOut;
  int eN = 16;
  exportMesh->add_option("--mesh", eMesh, "mesh family");
  exportMesh->add_option("--delta", eDelta, "Shishkin layer width");
  exportMesh->add_option("--n", eN, "divisions per side");
  exportMesh->add_option("--out", eOut, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (converge->parsed()) {
      wopsip::ExperimentConfig config;
      if (!configPath.empty()) config = wopsip::load_config(configPath);
      if (!scheme.empty()) config.scheme = wopsip::parse_scheme(scheme);
      if (!penalty.empty()) config.penaltyMode = wopsip::parse_penalty_mode(penalty);
      if (!meshName.empty()) config.meshName = meshName;
      if (!problemName.empty()) config.problemName = problemName;
      if (!deltaText.empty()) config.delta = wopsip::parse_delta(deltaText);
      if (!nText.empty()) config.nList = parse_n_list(nText);
      if (tol > 0.0) config.solver.relTolerance = tol;
      config.solver.method = solver == "minres"
                                 ? wopsip::SolveOptions::Method::KrylovIndefinite
                                 : wopsip::SolveOptions::Method::SchurComplement;
      if (maxIters > 0) config.solver.maxIterations = maxIters;
      config.solver.diagonalPreconditioner = (precond == "diag");
      if (!outPath.empty()) config.outPath = outPath;
      return run_converge(config, matrixPrefix);
    }
    if (diagnose->parsed())
      return run_diagnose(dMesh, wopsip::parse_delta(dDelta), parse_n_list(dN), dOut);
    if (exportMesh->parsed()) {
      const auto mesh =
          wopsip::generate_mesh(wopsip::parse_mesh_family(eMesh, wopsip::parse_delta(eDelta)), eN);
      if (eOut.empty()) {
        wopsip::export_mesh(mesh, std::cout);
      } else {
        std::ofstream out(eOut);
        if (!out) throw std::runtime_error("cannot open output file: " + eOut);
        wopsip::export_mesh(mesh, out);
      }
      return 0;
    }
  } catch (const wopsip::SolverFailure& failure) {
    std::cerr << "error: " << failure.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

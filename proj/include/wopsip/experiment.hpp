#pragma once

#include "wopsip/analysis.hpp"
#include "wopsip/linsolve.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wopsip {

/// One convergence study: a scheme, a mesh family, a manufactured problem and
/// a list of division counts. `delta` feeds both the Shishkin grading and the
/// boundary-layer problem where applicable.
struct ExperimentConfig {
  Scheme scheme = Scheme::Wopsip;
  PenaltyMode penaltyMode = PenaltyMode::Kappa;
  std::string meshName = "uniform";
  std::string problemName = "poly";
  double delta = 1.0 / 128.0;
  std::vector<int> nList;
  SolveOptions solver;
  std::string outPath;

  void validate() const;
};

struct ConvergenceRow {
  int n = 0;
  long np = 0;
  double h = 0.0;
  ErrorReport errors;
  // log2 ratios against the previous row; absent on the first row
  std::optional<double> rateH1, rateL2u, rateL2p, rateCombined;
  long iterations = 0;
  double seconds = 0.0;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;
};

struct SolverFailure : std::runtime_error {
  SolverFailure(int n, double bestResidual);
  int n;
  double bestResidual;
};

ConvergenceReport run_experiment(const ExperimentConfig& config);

/// Header: N,Np,h,err_h1,err_l2u,err_l2p,err_energy,err_combined,
/// rate_h1,rate_l2u,rate_l2p,rate_combined,iters,seconds.
/// Errors are relative, in scientific notation with 6 significant digits.
void emit_csv(const ConvergenceReport& report, std::ostream& out);
void emit_csv(const ConvergenceReport& report, const std::string& path);

/// Key=value configuration file; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

/// Accepts plain decimals and fractions like "1/1024".
double parse_delta(const std::string& text);

}  // namespace wopsip

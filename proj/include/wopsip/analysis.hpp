#pragma once

#include "wopsip/assembly.hpp"
#include "wopsip/problems.hpp"

namespace wopsip {

/// Error norms of a discrete pair against the exact solution. Energy splits
/// as errEnergy^2 = errH1Broken^2 + jumpSemi^2; the jump seminorm uses the
/// h^-2 scaled weights and applies to the discontinuous layout only.
struct ErrorReport {
  double errH1Broken = 0.0;
  double jumpSemi = 0.0;
  double errEnergy = 0.0;
  double errL2u = 0.0;
  double errL2p = 0.0;

  double normH1u = 0.0;  // |u|_{H1}, denominator of the relative errors
  double normL2u = 0.0;
  double normL2p = 0.0;

  double relH1Broken = 0.0;
  double relL2u = 0.0;
  double relL2p = 0.0;
  double relEnergy = 0.0;
  double relCombined = 0.0;  // (errEnergy + errL2p) / (|u|_H1 + ||p||)
};

ErrorReport error_report(const Mesh& mesh, const Problem& problem, const DofMap& dofMap,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& p);

/// r = log2(errCoarse / errFine); both inputs must be positive.
double convergence_rate(double errCoarse, double errFine);

/// Maxima over interior faces of the four penalty scales.
struct PenaltyDiagnostics {
  double tauF = 0.0;    // max 1/h_F
  double tauAve = 0.0;  // max (1/l1 + 1/l2)/4
  double tauDg = 0.0;   // max 2/(sqrt(l1)+sqrt(l2))^2
  double tauWop = 0.0;  // tauDg / h^2
};

PenaltyDiagnostics penalty_diagnostics(const Mesh& mesh);

/// Nodal points including the boundary: 7 Ne for WOPSIP, 2 #faces + Ne for WBCR.
long dof_count(const Mesh& mesh, Scheme scheme);

}  // namespace wopsip

#pragma once

#include "wopsip/fem_spaces.hpp"
#include "wopsip/problems.hpp"

#include <Eigen/Sparse>

#include <iosfwd>

namespace wopsip {

/// Kappa is the h^-2 scaled interior-penalty weight; KappaStar drops the
/// h^-2 factor (used only for the comparison study, the scheme stagnates).
enum class PenaltyMode { Kappa, KappaStar };

enum class Scheme { Wopsip, Wbcr };

PenaltyMode parse_penalty_mode(const std::string& name);
Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme scheme);

/// Penalty weight of one face:
///   interior: (sqrt(l1) + sqrt(l2))^-2, boundary: 1/l, times h^-2 for Kappa.
double penalty_kappa(const Face& face, double h, PenaltyMode mode);

/// Weight multiplying (projected jump)^2 in the scheme and in the jump
/// seminorm: 2 kappa_F |F| on interior faces, kappa_F |F| on the boundary.
double face_penalty_weight(const Face& face, double h, PenaltyMode mode);

/// Velocity operator A (broken stiffness + jump penalty, block diagonal over
/// the two components), divergence coupling B with one pressure row per cell,
/// and the assembled load vector. A excludes the viscosity factor.
struct AssembledSystem {
  Eigen::SparseMatrix<double> A;  // numVelocity x numVelocity, symmetric
  Eigen::SparseMatrix<double> B;  // numPressure x numVelocity
  Eigen::VectorXd rhs;            // numVelocity
  Eigen::VectorXd meanVector;     // cell areas; m^T p = 0 encodes zero mean
  DofMap dofMap;
  Scheme scheme = Scheme::Wopsip;
  PenaltyMode penaltyMode = PenaltyMode::Kappa;
  double nu = 1.0;
};

AssembledSystem assemble_wopsip(const Mesh& mesh, const Problem& problem, PenaltyMode mode);

/// Classical CR scheme on the midpoint-continuous space with boundary DOFs
/// eliminated; the load tests f against the RT lift of each basis field.
AssembledSystem assemble_wbcr(const Mesh& mesh, const Problem& problem);

Eigen::VectorXd pressure_mean_vector(const Mesh& mesh);

/// MatrixMarket coordinate format (1-based, general).
void export_matrix_market(const Eigen::SparseMatrix<double>& m, std::ostream& out);

}  // namespace wopsip

#pragma once

#include "wopsip/assembly.hpp"

#include <stdexcept>

namespace wopsip {

struct SolveOptions {
  double relTolerance = 1e-10;
  long maxIterations = -1;  // default 50 * unknowns
  // SchurComplement: sparse Cholesky of A plus projected CG on the pressure
  // Schur complement, with iterative refinement of the full residual.
  // KrylovIndefinite: preconditioned MINRES on the augmented operator.
  enum class Method {
    SchurComplement,
    KrylovIndefinite,
    DirectOracle,
  } method = Method::SchurComplement;
  // Jacobi scaling for MINRES; the penalty grows like h^-2 / anisotropy, so
  // unpreconditioned iteration counts explode on fine graded meshes.
  bool diagonalPreconditioner = false;
};

struct SolveResult {
  Eigen::VectorXd u;
  Eigen::VectorXd p;
  double relativeResidual = 0.0;  // recomputed from scratch, not the recurrence
  long iterations = 0;
};

struct NonConvergence : std::runtime_error {
  NonConvergence(double residual, long iters);
  double bestResidual;
  long iterations;
};

struct SingularSystem : std::runtime_error {
  SingularSystem() : std::runtime_error("singular saddle-point system") {}
};

/// Solve [nu A, B^T; B, 0] augmented with one Lagrange row/column enforcing
/// m^T p = 0, to a relative Euclidean residual <= opts.relTolerance.
SolveResult solve_saddle(const AssembledSystem& system, const SolveOptions& opts = {});

/// Dense LU reference for cross-checks; intended for small systems.
SolveResult direct_oracle(const AssembledSystem& system);

}  // namespace wopsip

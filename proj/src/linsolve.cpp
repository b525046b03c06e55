#include "wopsip/linsolve.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <string>

namespace wopsip {

NonConvergence::NonConvergence(double residual, long iters)
    : std::runtime_error("saddle solver did not converge (best residual " +
                         std::to_string(residual) + " after " + std::to_string(iters) +
                         " iterations)"),
      bestResidual(residual),
      iterations(iters) {}

namespace {

// z = [u; p; mu] with the Lagrange multiplier mu for the zero-mean constraint.
class SaddleOperator {
 public:
  explicit SaddleOperator(const AssembledSystem& sys)
      : sys_(sys), nU_(sys.A.rows()), nP_(sys.B.rows()) {}

  long size() const { return nU_ + nP_ + 1; }

  Eigen::VectorXd apply(const Eigen::VectorXd& z) const {
    Eigen::VectorXd r(size());
    const auto u = z.head(nU_);
    const auto p = z.segment(nU_, nP_);
    const double mu = z[size() - 1];
    r.head(nU_) = sys_.nu * (sys_.A * u) + sys_.B.transpose() * p;
    r.segment(nU_, nP_) = sys_.B * u + mu * sys_.meanVector;
    r[size() - 1] = sys_.meanVector.dot(p);
    return r;
  }

  Eigen::VectorXd inverseDiagonal() const {
    Eigen::VectorXd d(size());
    d.head(nU_) = sys_.nu * sys_.A.diagonal();
    d.segment(nU_, nP_) = sys_.meanVector;  // P0 pressure mass diagonal
    d[size() - 1] = 1.0;
    return d.cwiseInverse();
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(size(), size());
    k.topLeftCorner(nU_, nU_) = sys_.nu * Eigen::MatrixXd(sys_.A);
    k.block(0, nU_, nU_, nP_) = Eigen::MatrixXd(sys_.B).transpose();
    k.block(nU_, 0, nP_, nU_) = Eigen::MatrixXd(sys_.B);
    k.block(nU_, nU_ + nP_, nP_, 1) = sys_.meanVector;
    k.block(nU_ + nP_, nU_, 1, nP_) = sys_.meanVector.transpose();
    return k;
  }

  long nU() const { return nU_; }
  long nP() const { return nP_; }

 private:
  const AssembledSystem& sys_;
  long nU_;
  long nP_;
};

// Preconditioned MINRES; the Lanczos vectors use the M^-1 inner product so the
// recurrence tracks the M^-1 norm of the residual. Deterministic: fixed-order
// Eigen reductions, no data-dependent branching.
struct MinresOutcome {
  long iterations = 0;
};

MinresOutcome minres(const SaddleOperator& op, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                     const Eigen::VectorXd* invDiag, double relTol, long maxIter) {
  const long n = op.size();
  Eigen::VectorXd v1 = b - op.apply(x);
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w0 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w1 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u1 = invDiag ? Eigen::VectorXd(invDiag->cwiseProduct(v1)) : v1;

  double beta = std::sqrt(u1.dot(v1));
  if (beta == 0.0) return {0};
  double eta = beta;
  const double goal = relTol * beta;
  double gamma0 = 1.0, gamma1 = 1.0, sigma0 = 0.0, sigma1 = 0.0;

  MinresOutcome out;
  for (long it = 1; it <= maxIter; ++it) {
    out.iterations = it;
    v1 /= beta;
    if (invDiag) u1 /= beta;
    const Eigen::VectorXd& z = invDiag ? u1 : v1;
    Eigen::VectorXd q = op.apply(z);
    const double alpha = z.dot(q);
    if (it > 1) q -= beta * v0;
    v0 = q - alpha * v1;

    const double delta = gamma1 * alpha - gamma0 * sigma1 * beta;
    const double rho3 = sigma0 * beta;
    const double rho2 = sigma1 * alpha + gamma0 * gamma1 * beta;
    if (invDiag) {
      q = invDiag->cwiseProduct(v0);
      beta = std::sqrt(std::max(0.0, v0.dot(q)));
    } else {
      beta = v0.norm();
    }
    const double rho1 = std::hypot(delta, beta);
    if (rho1 == 0.0) break;

    if (it == 1)
      w0 = z / rho1;
    else if (it == 2)
      w0 = (z - rho2 * w1) / rho1;
    else
      w0 = (z - rho3 * w0 - rho2 * w1) / rho1;

    gamma0 = gamma1;
    gamma1 = delta / rho1;
    x += gamma1 * eta * w0;
    sigma0 = sigma1;
    sigma1 = beta / rho1;
    eta = -sigma1 * eta;

    if (std::abs(eta) <= goal) break;

    if (invDiag) std::swap(u1, q);
    std::swap(v0, v1);
    std::swap(w0, w1);
  }
  return out;
}

// Block elimination: factor nu*A once, run projected CG on the pressure
// Schur complement S = B (nu A)^-1 B^T over zero-mean pressures, and polish
// the full saddle residual by iterative refinement.
class SchurSolver {
 public:
  SchurSolver(const AssembledSystem& sys)
      : sys_(sys), factor_(Eigen::SparseMatrix<double>(sys.nu * sys.A)) {
    if (factor_.info() != Eigen::Success) throw SingularSystem();
    massSum_ = sys.meanVector.sum();
    invMass_ = sys.meanVector.cwiseInverse();
  }

  // Solve the saddle system with blocks (a, b, c); returns (u, p, mu).
  struct Blocks {
    Eigen::VectorXd u, p;
    double mu = 0.0;
  };

  Blocks solve(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double c, double cgTol,
               long maxIter, long& iterations) {
    const Eigen::VectorXd aSolved = factor_.solve(a);
    const double alpha = c / massSum_;  // p = pHat + alpha*m with m^T pHat = 0
    Eigen::VectorXd g = sys_.B * aSolved - b;
    if (alpha != 0.0) g -= applySchur(Eigen::VectorXd(alpha * sys_.meanVector));

    Blocks out;
    out.p = projectedCg(g, cgTol, maxIter, iterations);
    const Eigen::VectorXd schurP = applySchur(out.p);
    out.mu = sys_.meanVector.dot(schurP - g) / massSum_;
    out.p += alpha * sys_.meanVector;
    out.u = factor_.solve(Eigen::VectorXd(a - sys_.B.transpose() * out.p));
    return out;
  }

 private:
  Eigen::VectorXd applySchur(const Eigen::VectorXd& p) const {
    return sys_.B * factor_.solve(Eigen::VectorXd(sys_.B.transpose() * p));
  }

  Eigen::VectorXd project(Eigen::VectorXd z) const {
    z.array() -= sys_.meanVector.dot(z) / sys_.meanVector.squaredNorm() *
                 sys_.meanVector.array();
    return z;
  }

  // CG on the zero-mean subspace with the P0 mass diagonal as preconditioner.
  Eigen::VectorXd projectedCg(const Eigen::VectorXd& g, double relTol, long maxIter,
                              long& iterations) const {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(g.size());
    Eigen::VectorXd r = project(g);
    const double r0 = r.norm();
    if (r0 == 0.0) return p;
    Eigen::VectorXd z = project(invMass_.cwiseProduct(r));
    Eigen::VectorXd d = z;
    double rz = r.dot(z);
    for (long it = 0; it < maxIter; ++it) {
      ++iterations;
      const Eigen::VectorXd sd = project(applySchur(d));
      const double dsd = d.dot(sd);
      if (dsd <= 0.0) break;
      const double step = rz / dsd;
      p += step * d;
      r -= step * sd;
      if (r.norm() <= relTol * r0) break;
      z = project(invMass_.cwiseProduct(r));
      const double rzNext = r.dot(z);
      d = z + (rzNext / rz) * d;
      rz = rzNext;
    }
    return p;
  }

  const AssembledSystem& sys_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor_;
  Eigen::VectorXd invMass_;
  double massSum_ = 0.0;
};

SolveResult package(const AssembledSystem& sys, const SaddleOperator& op,
                    const Eigen::VectorXd& z, const Eigen::VectorXd& b, long iterations) {
  SolveResult result;
  result.u = z.head(op.nU());
  result.p = z.segment(op.nU(), op.nP());
  // Exact zero mean; shifts p by O(solver tolerance) only.
  const double mass = sys.meanVector.sum();
  result.p.array() -= sys.meanVector.dot(result.p) / mass;

  Eigen::VectorXd corrected(op.size());
  corrected << result.u, result.p, z[op.size() - 1];
  const double bnorm = b.norm();
  result.relativeResidual = bnorm == 0.0 ? 0.0 : (b - op.apply(corrected)).norm() / bnorm;
  result.iterations = iterations;
  return result;
}

}  // namespace

namespace {

SolveResult solve_minres(const AssembledSystem& system, const SolveOptions& opts) {
  const SaddleOperator op(system);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(op.size());
  b.head(op.nU()) = system.rhs;
  const double bnorm = b.norm();

  const long maxIter = opts.maxIterations > 0 ? opts.maxIterations : 50L * op.size();
  const Eigen::VectorXd invDiag = op.inverseDiagonal();
  const Eigen::VectorXd* prec = opts.diagonalPreconditioner ? &invDiag : nullptr;

  Eigen::VectorXd z = Eigen::VectorXd::Zero(op.size());
  long used = 0;
  // The recurrence tracks a preconditioned norm; accept only once the true
  // Euclidean residual meets the tolerance, restarting if needed.
  while (true) {
    const auto outcome = minres(op, b, z, prec, opts.relTolerance * 0.1, maxIter - used);
    used += outcome.iterations;
    const double rel = (b - op.apply(z)).norm() / bnorm;
    if (rel <= opts.relTolerance) break;
    if (used >= maxIter || outcome.iterations == 0) throw NonConvergence(rel, used);
  }
  return package(system, op, z, b, used);
}

SolveResult solve_schur(const AssembledSystem& system, const SolveOptions& opts) {
  const SaddleOperator op(system);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(op.size());
  b.head(op.nU()) = system.rhs;
  const double bnorm = b.norm();

  const long maxIter = opts.maxIterations > 0 ? opts.maxIterations : 50L * op.size();
  const double cgTol = std::min(1e-8, opts.relTolerance);
  SchurSolver schur(system);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(op.size());
  long used = 0;
  double rel = 1.0;
  for (int refinement = 0; refinement < 50 && used < maxIter; ++refinement) {
    const Eigen::VectorXd residual = b - op.apply(z);
    rel = residual.norm() / bnorm;
    if (rel <= opts.relTolerance) return package(system, op, z, b, used);
    const auto delta = schur.solve(residual.head(op.nU()),
                                   residual.segment(op.nU(), op.nP()),
                                   residual[op.size() - 1], cgTol, maxIter - used, used);
    z.head(op.nU()) += delta.u;
    z.segment(op.nU(), op.nP()) += delta.p;
    z[op.size() - 1] += delta.mu;
  }
  rel = (b - op.apply(z)).norm() / bnorm;
  if (rel <= opts.relTolerance) return package(system, op, z, b, used);
  throw NonConvergence(rel, used);
}

}  // namespace

SolveResult solve_saddle(const AssembledSystem& system, const SolveOptions& opts) {
  if (opts.method == SolveOptions::Method::DirectOracle) return direct_oracle(system);

  if (system.rhs.norm() == 0.0) {
    SolveResult zero;
    zero.u = Eigen::VectorXd::Zero(system.A.rows());
    zero.p = Eigen::VectorXd::Zero(system.B.rows());
    return zero;
  }
  if (opts.method == SolveOptions::Method::KrylovIndefinite)
    return solve_minres(system, opts);
  return solve_schur(system, opts);
}

SolveResult direct_oracle(const AssembledSystem& system) {
  const SaddleOperator op(system);
  if (op.size() > 20001) throw std::invalid_argument("direct oracle limited to 2e4 unknowns");

  Eigen::VectorXd b = Eigen::VectorXd::Zero(op.size());
  b.head(op.nU()) = system.rhs;

  const Eigen::MatrixXd k = op.dense();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (!lu.isInvertible()) throw SingularSystem();
  const Eigen::VectorXd z = lu.solve(b);
  return package(system, op, z, b, 0);
}

}  // namespace wopsip

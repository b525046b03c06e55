#include "wopsip/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace wopsip {

PenaltyMode parse_penalty_mode(const std::string& name) {
  if (name == "kappa") return PenaltyMode::Kappa;
  if (name == "kappa-star") return PenaltyMode::KappaStar;
  throw std::invalid_argument("unknown penalty mode: " + name);
}

Scheme parse_scheme(const std::string& name) {
  if (name == "wopsip") return Scheme::Wopsip;
  if (name == "wbcr") return Scheme::Wbcr;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::Wopsip ? "wopsip" : "wbcr";
}

double penalty_kappa(const Face& face, double h, PenaltyMode mode) {
  double base;
  if (face.interior()) {
    const double s = std::sqrt(face.ell[0]) + std::sqrt(face.ell[1]);
    base = 1.0 / (s * s);
  } else {
    base = 1.0 / face.ell[0];
  }
  return mode == PenaltyMode::Kappa ? base / (h * h) : base;
}

double face_penalty_weight(const Face& face, double h, PenaltyMode mode) {
  const double constant = face.interior() ? 2.0 : 1.0;
  return constant * penalty_kappa(face, h, mode) * face.length;
}

namespace {

using Triplet = Eigen::Triplet<double>;

// Collects entries of the upper triangle; build() mirrors them so the
// assembled matrix is symmetric to the bit.
class SymmetricBuilder {
 public:
  void add(int r, int c, double v) {
    if (r <= c)
      upper_.emplace_back(r, c, v);
    else
      upper_.emplace_back(c, r, v);
  }

  Eigen::SparseMatrix<double> build(int n) const {
    std::vector<Triplet> all;
    all.reserve(2 * upper_.size());
    for (const auto& t : upper_) {
      all.emplace_back(t.row(), t.col(), t.value());
      if (t.row() != t.col()) all.emplace_back(t.col(), t.row(), t.value());
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(all.begin(), all.end());
    return m;
  }

 private:
  std::vector<Triplet> upper_;
};

void add_broken_stiffness(const Mesh& mesh, const DofMap& dofMap, SymmetricBuilder& builder) {
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    const CRLocalBasis basis = cr_local_basis(mesh, t);
    const double area = mesh.triangles[t].area;
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 3; ++i) {
        const int gi = dofMap.velocityDof(t, i, c);
        if (gi < 0) continue;
        for (int j = i; j < 3; ++j) {
          const int gj = dofMap.velocityDof(t, j, c);
          if (gj < 0) continue;
          builder.add(gi, gj, area * basis.gradients[i].dot(basis.gradients[j]));
        }
      }
    }
  }
}

Eigen::SparseMatrix<double> divergence_coupling(const Mesh& mesh, const DofMap& dofMap) {
  std::vector<Triplet> triplets;
  triplets.reserve(6 * mesh.triangles.size());
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    const CRLocalBasis basis = cr_local_basis(mesh, t);
    const double area = mesh.triangles[t].area;
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 3; ++i) {
        const int dof = dofMap.velocityDof(t, i, c);
        if (dof < 0) continue;
        triplets.emplace_back(t, dof, -area * basis.gradients[i][c]);
      }
    }
  }
  Eigen::SparseMatrix<double> B(dofMap.numPressure(), dofMap.numVelocity());
  B.setFromTriplets(triplets.begin(), triplets.end());
  return B;
}

void check_inputs(const Mesh& mesh, const Problem& problem) {
  if (mesh.triangles.empty()) throw std::invalid_argument("cannot assemble on an empty mesh");
  if (problem.nu <= 0.0) throw std::invalid_argument("viscosity must be positive");
}

}  // namespace

AssembledSystem assemble_wopsip(const Mesh& mesh, const Problem& problem, PenaltyMode mode) {
  check_inputs(mesh, problem);
  DofMap dofMap(mesh, DofMap::Layout::WopsipCell);

  SymmetricBuilder builder;
  add_broken_stiffness(mesh, dofMap, builder);

  // Midpoint jumps of CR traces involve exactly one DOF per side: the basis
  // function of the face itself (theta_i(x_{F_j}) = delta_ij), so each face
  // couples one DOF pair per component.
  for (const Face& face : mesh.faces) {
    const double w = face_penalty_weight(face, mesh.h, mode);
    for (int c = 0; c < 2; ++c) {
      const int d1 = dofMap.velocityDof(face.triangle[0], face.localFace[0], c);
      if (face.interior()) {
        const int d2 = dofMap.velocityDof(face.triangle[1], face.localFace[1], c);
        builder.add(d1, d1, w);
        builder.add(d2, d2, w);
        builder.add(d1, d2, -w);
      } else {
        builder.add(d1, d1, w);
      }
    }
  }

  AssembledSystem sys{builder.build(dofMap.numVelocity()),
                      divergence_coupling(mesh, dofMap),
                      Eigen::VectorXd::Zero(dofMap.numVelocity()),
                      pressure_mean_vector(mesh),
                      dofMap,
                      Scheme::Wopsip,
                      mode,
                      problem.nu};

  const QuadRule& rule = triangle_rule(5);
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const auto weight = [&](const Vec2& x) {
        return Vec2(problem.forcing(x) * CRLocalBasis::value(i, barycentric(mesh, t, x)));
      };
      const Vec2 load = integrate_on_triangle(weight, mesh, t, rule);
      for (int c = 0; c < 2; ++c) sys.rhs[dofMap.velocityDof(t, i, c)] += load[c];
    }
  }
  return sys;
}

AssembledSystem assemble_wbcr(const Mesh& mesh, const Problem& problem) {
  check_inputs(mesh, problem);
  DofMap dofMap(mesh, DofMap::Layout::WbcrEdge);

  SymmetricBuilder builder;
  add_broken_stiffness(mesh, dofMap, builder);

  AssembledSystem sys{builder.build(dofMap.numVelocity()),
                      divergence_coupling(mesh, dofMap),
                      Eigen::VectorXd::Zero(dofMap.numVelocity()),
                      pressure_mean_vector(mesh),
                      dofMap,
                      Scheme::Wbcr,
                      PenaltyMode::Kappa,
                      problem.nu};

  // Load: int f . I_RT(phi_F e_c). The lift of a CR basis field reduces to
  // |F| (e_c . n_F) theta_F^RT on each triangle sharing F, since the flux of
  // phi_F through any face equals |F'| delta_{F,F'}.
  const QuadRule& rule = triangle_rule(5);
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    const RTLocalBasis rt = rt_local_basis(mesh, t);
    for (int i = 0; i < 3; ++i) {
      const Face& face = mesh.faces[mesh.triangles[t].faceIds[i]];
      const auto weighted = [&](const Vec2& x) {
        return Vec2(problem.forcing(x).dot(rt.value(i, x)) * face.normal);
      };
      const Vec2 load = face.length * integrate_on_triangle(weighted, mesh, t, rule);
      for (int c = 0; c < 2; ++c) {
        const int dof = dofMap.velocityDof(t, i, c);
        if (dof >= 0) sys.rhs[dof] += load[c];
      }
    }
  }
  return sys;
}

Eigen::VectorXd pressure_mean_vector(const Mesh& mesh) {
  Eigen::VectorXd m(mesh.numTriangles());
  for (int t = 0; t < mesh.numTriangles(); ++t) m[t] = mesh.triangles[t].area;
  return m;
}

void export_matrix_market(const Eigen::SparseMatrix<double>& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  out.precision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

}  // namespace wopsip

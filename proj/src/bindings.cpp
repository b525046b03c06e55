#include "wopsip/experiment.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace wopsip;

PYBIND11_MODULE(_core, m) {
  m.doc() = "WOPSIP / well-balanced CR Stokes discretizations on graded meshes";

  py::class_<Triangle>(m, "Triangle")
      .def_readonly("vertex_ids", &Triangle::vertexIds)
      .def_readonly("face_ids", &Triangle::faceIds)
      .def_readonly("area", &Triangle::area)
      .def_readonly("diameter", &Triangle::diameter);

  py::class_<Face>(m, "Face")
      .def_readonly("vertex_ids", &Face::vertexIds)
      .def_readonly("length", &Face::length)
      .def_readonly("midpoint", &Face::midpoint)
      .def_readonly("normal", &Face::normal)
      .def_readonly("triangle", &Face::triangle)
      .def_readonly("ell", &Face::ell)
      .def("interior", &Face::interior);

  py::class_<Mesh>(m, "Mesh")
      .def_readonly("vertices", &Mesh::vertices)
      .def_readonly("triangles", &Mesh::triangles)
      .def_readonly("faces", &Mesh::faces)
      .def_readonly("interior_face_ids", &Mesh::interiorFaceIds)
      .def_readonly("boundary_face_ids", &Mesh::boundaryFaceIds)
      .def_readonly("h", &Mesh::h)
      .def_readonly("n", &Mesh::n)
      .def("export_text", [](const Mesh& mesh) {
        std::ostringstream out;
        export_mesh(mesh, out);
        return out.str();
      });

  py::class_<MeshQuality>(m, "MeshQuality")
      .def_readonly("min_angle_metric", &MeshQuality::minAngleMetric)
      .def_readonly("max_angle_metric", &MeshQuality::maxAngleMetric)
      .def_readonly("h", &MeshQuality::h)
      .def_readonly("semi_regularity", &MeshQuality::semiRegularity);

  m.def(
      "generate_mesh",
      [](const std::string& family, int n, double delta) {
        return generate_mesh(parse_mesh_family(family, delta), n);
      },
      py::arg("family"), py::arg("n"), py::arg("delta") = 1.0 / 128.0);
  m.def("mesh_quality", &mesh_quality);

  py::class_<PenaltyDiagnostics>(m, "PenaltyDiagnostics")
      .def_readonly("tau_f", &PenaltyDiagnostics::tauF)
      .def_readonly("tau_ave", &PenaltyDiagnostics::tauAve)
      .def_readonly("tau_dg", &PenaltyDiagnostics::tauDg)
      .def_readonly("tau_wop", &PenaltyDiagnostics::tauWop);
  m.def("penalty_diagnostics", &penalty_diagnostics);

  py::class_<Problem>(m, "Problem")
      .def_readonly("nu", &Problem::nu)
      .def_readonly("label", &Problem::label)
      .def("velocity", [](const Problem& p, double x, double y) { return p.velocity({x, y}); })
      .def("pressure", [](const Problem& p, double x, double y) { return p.pressure({x, y}); })
      .def("forcing", [](const Problem& p, double x, double y) { return p.forcing({x, y}); });
  m.def("make_problem", &make_problem, py::arg("name"), py::arg("delta") = 1.0 / 128.0);

  py::enum_<Scheme>(m, "Scheme")
      .value("Wopsip", Scheme::Wopsip)
      .value("Wbcr", Scheme::Wbcr);
  py::enum_<PenaltyMode>(m, "PenaltyMode")
      .value("Kappa", PenaltyMode::Kappa)
      .value("KappaStar", PenaltyMode::KappaStar);

  py::class_<ErrorReport>(m, "ErrorReport")
      .def_readonly("err_h1_broken", &ErrorReport::errH1Broken)
      .def_readonly("jump_semi", &ErrorReport::jumpSemi)
      .def_readonly("err_energy", &ErrorReport::errEnergy)
      .def_readonly("err_l2u", &ErrorReport::errL2u)
      .def_readonly("err_l2p", &ErrorReport::errL2p)
      .def_readonly("rel_h1_broken", &ErrorReport::relH1Broken)
      .def_readonly("rel_l2u", &ErrorReport::relL2u)
      .def_readonly("rel_l2p", &ErrorReport::relL2p)
      .def_readonly("rel_energy", &ErrorReport::relEnergy)
      .def_readonly("rel_combined", &ErrorReport::relCombined);

  m.def("dof_count", &dof_count);
  m.def("convergence_rate", &convergence_rate);

  // One-call discretize-and-solve returning (u, p, report).
  m.def(
      "solve",
      [](const Mesh& mesh, const std::string& problemName, double delta,
         const std::string& scheme, const std::string& penalty, double tol,
         const std::string& method) {
        const Problem problem = make_problem(problemName, delta);
        const AssembledSystem system =
            parse_scheme(scheme) == Scheme::Wopsip
                ? assemble_wopsip(mesh, problem, parse_penalty_mode(penalty))
                : assemble_wbcr(mesh, problem);
        SolveOptions opts;
        opts.relTolerance = tol;
        opts.diagonalPreconditioner = true;
        if (method == "minres")
          opts.method = SolveOptions::Method::KrylovIndefinite;
        else if (method == "oracle")
          opts.method = SolveOptions::Method::DirectOracle;
        const SolveResult solution = solve_saddle(system, opts);
        const ErrorReport report =
            error_report(mesh, problem, system.dofMap, solution.u, solution.p);
        return py::make_tuple(solution.u, solution.p, report);
      },
      py::arg("mesh"), py::arg("problem"), py::arg("delta"), py::arg("scheme") = "wopsip",
      py::arg("penalty") = "kappa", py::arg("tol") = 1e-10, py::arg("method") = "schur");

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("n", &ConvergenceRow::n)
      .def_readonly("np", &ConvergenceRow::np)
      .def_readonly("h", &ConvergenceRow::h)
      .def_readonly("errors", &ConvergenceRow::errors)
      .def_readonly("rate_h1", &ConvergenceRow::rateH1)
      .def_readonly("rate_l2u", &ConvergenceRow::rateL2u)
      .def_readonly("rate_l2p", &ConvergenceRow::rateL2p)
      .def_readonly("rate_combined", &ConvergenceRow::rateCombined)
      .def_readonly("iterations", &ConvergenceRow::iterations)
      .def_readonly("seconds", &ConvergenceRow::seconds);

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("rows", &ConvergenceReport::rows)
      .def("to_csv", [](const ConvergenceReport& report) {
        std::ostringstream out;
        emit_csv(report, out);
        return out.str();
      });

  m.def(
      "run_experiment",
      [](const std::string& scheme, const std::string& mesh, const std::string& problem,
         double delta, const std::vector<int>& ns, const std::string& penalty,
         double tol) {
        ExperimentConfig config;
        config.scheme = parse_scheme(scheme);
        config.penaltyMode = parse_penalty_mode(penalty);
        config.meshName = mesh;
        config.problemName = problem;
        config.delta = delta;
        config.nList = ns;
        config.solver.relTolerance = tol;
        return run_experiment(config);
      },
      py::arg("scheme"), py::arg("mesh"), py::arg("problem"), py::arg("delta"), py::arg("ns"),
      py::arg("penalty") = "kappa", py::arg("tol") = 1e-10);
}

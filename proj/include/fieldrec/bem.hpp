#pragma once

#include <array>
#include <complex>
#include <vector>

#include "fieldrec/geometry.hpp"

namespace fieldrec {

using Complex = std::complex<double>;

struct Wavenumber {
    double k = 0.0;

    explicit Wavenumber(double value) : k(value) {
        if (!(k >= 0.0)) throw ConfigError("wavenumber must be non-negative");
    }
};

enum class BCKind { Dirichlet, Neumann };

struct FaceBC {
    BCKind kind = BCKind::Neumann;
    double value = 0.0;
};

// One boundary condition per face, constant over the face.
struct BCSpec {
    std::array<FaceBC, 6> faces;

    const FaceBC& at(Face f) const { return faces[static_cast<int>(f)]; }
    FaceBC& at(Face f) { return faces[static_cast<int>(f)]; }

    static BCSpec all_dirichlet(double value);
    static BCSpec all_neumann(double value);
    // Dirichlet u = dirichlet_value on the listed faces, Neumann du/dn = neumann_value elsewhere.
    static BCSpec mixed(const std::vector<Face>& dirichlet_faces, double dirichlet_value,
                        double neumann_value);
};

// Per-element boundary trace (u_j, q_j) with q = du/dn along the outward normal.
struct CauchyData {
    std::vector<Complex> u;
    std::vector<Complex> q;

    std::size_t size() const { return u.size(); }
    std::vector<double> u_real() const;
    std::vector<double> q_real() const;
};

// Free-space kernel e^{ikR} / (4 pi R). Throws CoincidentPoints when R < 1e-12.
Complex greens_3d(Wavenumber k, const Vec3& r, const Vec3& rp);

// Normal derivative of the kernel at rp along the unit vector n:
//   n . grad_rp G = e^{ikR} (1 - ikR) / (4 pi R^2) * ((r - rp) . n) / R.
Complex greens_normal_deriv(Wavenumber k, const Vec3& r, const Vec3& rp, const Vec3& n);

struct PanelIntegrals {
    Complex single_layer; // S = int_panel G dGamma
    Complex double_layer; // D = int_panel dG/dn dGamma
};

// Panel quadrature for a square panel:
//  - self panel (target at the centroid): D = 0 and the analytic
//    S = (4 L ln(1+sqrt 2) + i k L^2) / (4 pi) for panel side L;
//  - targets closer than 2 panel sides: 2x2 recursive subdivision, depth <= 3;
//  - otherwise one-point (centroid) quadrature.
PanelIntegrals panel_integrals(Wavenumber k, const Vec3& target, const BoundaryElement& element);

struct SolveResult {
    CauchyData cauchy;
    double condition_estimate = 0.0;
};

// Direct collocation BEM: enforce (1/2) u_i + sum_j D_ij u_j = sum_j S_ij q_j at every
// centroid, move the BC-imposed Cauchy components to the right-hand side, and solve the
// dense complex system by partially pivoted LU. Imposed components are returned exactly.
// Throws SingularSystem when the condition estimate exceeds 1e12.
SolveResult assemble_and_solve(const BoundaryMesh& mesh, Wavenumber k, const BCSpec& bc);

struct InteriorEvaluation {
    std::vector<Complex> values;
    // Set for targets closer than step/2 to the boundary, where accuracy degrades.
    std::vector<bool> near_boundary;

    std::vector<double> real_values() const;
};

// Kirchhoff-Helmholtz representation at strictly interior targets:
//   u(r_i) = sum_j (q_j S_ij - u_j D_ij).
// Throws OutsideDomain if any target is not strictly inside the box.
InteriorEvaluation evaluate_interior(const BoundaryMesh& mesh, const CauchyData& cauchy,
                                     Wavenumber k, const PointSet& targets);

struct Dataset {
    BoundaryMesh mesh;
    std::vector<double> boundary_u; // real part of u_j per element
    std::vector<double> boundary_q; // real part of q_j per element
    PointSet sensors;               // values = real field at sensor locations
    PointSet grid;                  // values = real reference field on the evaluation grid
    double condition_estimate = 0.0;
};

// Full forward pipeline: mesh, solve, and evaluate the real part of the field at the
// sensor lattice and the evaluation grid.
Dataset generate_dataset(const BoxDomain& domain, double step, Wavenumber k, const BCSpec& bc,
                         const std::array<int, 3>& sensor_counts,
                         const std::array<int, 3>& grid_counts);

} // namespace fieldrec

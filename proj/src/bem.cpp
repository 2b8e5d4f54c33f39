#include "fieldrec/bem.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace fieldrec {

namespace {

constexpr double kCoincidentTol = 1e-12;
constexpr double kConditionLimit = 1e12;
constexpr int kMaxSubdivisionDepth = 3;

const double kSelfPanelConst = 4.0 * std::log(1.0 + std::sqrt(2.0)); // int_square dA/R = L * this

struct KernelPair {
    Complex g;
    Complex dgdn;
};

// Both kernels from one distance computation; diff = r - rp.
inline KernelPair kernels(double k, const Vec3& diff, const Vec3& n) {
    const double R2 = diff.squaredNorm();
    const double R = std::sqrt(R2);
    const double kR = k * R;
    const Complex phase(std::cos(kR), std::sin(kR));
    const Complex g = phase / (4.0 * M_PI * R);
    const Complex dgdn = phase * Complex(1.0, -kR) / (4.0 * M_PI * R2) * (diff.dot(n) / R);
    return {g, dgdn};
}

// In-face tangent axes of an axis-aligned panel, ascending axis order.
inline void panel_tangents(const BoundaryElement& e, Vec3& t1, Vec3& t2) {
    const int axis = face_axis(e.face);
    t1 = Vec3::Zero();
    t2 = Vec3::Zero();
    t1[axis == 0 ? 1 : 0] = 1.0;
    t2[axis == 2 ? 1 : 2] = 1.0;
}

void accumulate_panel(double k, const Vec3& target, const Vec3& centroid, const Vec3& normal,
                      const Vec3& t1, const Vec3& t2, double side, int depth, Complex& s,
                      Complex& d) {
    const Vec3 diff = target - centroid;
    const double dist = diff.norm();
    if (dist < 2.0 * side && depth < kMaxSubdivisionDepth) {
        const double half = side / 2.0;
        const double quarter = side / 4.0;
        for (int a = -1; a <= 1; a += 2) {
            for (int b = -1; b <= 1; b += 2) {
                accumulate_panel(k, target, centroid + a * quarter * t1 + b * quarter * t2,
                                 normal, t1, t2, half, depth + 1, s, d);
            }
        }
        return;
    }
    const KernelPair kp = kernels(k, diff, normal);
    const double area = side * side;
    s += kp.g * area;
    d += kp.dgdn * area;
}

} // namespace

BCSpec BCSpec::all_dirichlet(double value) {
    BCSpec bc;
    for (auto& f : bc.faces) f = {BCKind::Dirichlet, value};
    return bc;
}

BCSpec BCSpec::all_neumann(double value) {
    BCSpec bc;
    for (auto& f : bc.faces) f = {BCKind::Neumann, value};
    return bc;
}

BCSpec BCSpec::mixed(const std::vector<Face>& dirichlet_faces, double dirichlet_value,
                     double neumann_value) {
    BCSpec bc = all_neumann(neumann_value);
    for (Face f : dirichlet_faces) bc.at(f) = {BCKind::Dirichlet, dirichlet_value};
    return bc;
}

std::vector<double> CauchyData::u_real() const {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i].real();
    return out;
}

std::vector<double> CauchyData::q_real() const {
    std::vector<double> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i].real();
    return out;
}

Complex greens_3d(Wavenumber k, const Vec3& r, const Vec3& rp) {
    const double R = (r - rp).norm();
    if (R < kCoincidentTol) throw CoincidentPoints("greens_3d: coincident points");
    const double kR = k.k * R;
    return Complex(std::cos(kR), std::sin(kR)) / (4.0 * M_PI * R);
}

Complex greens_normal_deriv(Wavenumber k, const Vec3& r, const Vec3& rp, const Vec3& n) {
    const Vec3 diff = r - rp;
    const double R = diff.norm();
    if (R < kCoincidentTol) throw CoincidentPoints("greens_normal_deriv: coincident points");
    return kernels(k.k, diff, n).dgdn;
}

PanelIntegrals panel_integrals(Wavenumber k, const Vec3& target, const BoundaryElement& element) {
    const double side = element.side();
    const double dist = (target - element.centroid).norm();

    if (dist < kCoincidentTol) {
        // Self panel: zero normal projection on a planar panel, analytic static single
        // layer plus the leading oscillatory correction.
        const Complex s(kSelfPanelConst * side / (4.0 * M_PI),
                        k.k * side * side / (4.0 * M_PI));
        return {s, Complex(0.0, 0.0)};
    }

    Vec3 t1, t2;
    panel_tangents(element, t1, t2);
    Complex s(0.0, 0.0), d(0.0, 0.0);
    accumulate_panel(k.k, target, element.centroid, element.normal, t1, t2, side, 0, s, d);
    return {s, d};
}

SolveResult assemble_and_solve(const BoundaryMesh& mesh, Wavenumber k, const BCSpec& bc) {
    const Eigen::Index n = static_cast<Eigen::Index>(mesh.size());
    if (n == 0) throw ConfigError("assemble_and_solve: empty mesh");

    // H u = S q with H = D + (1/2) I; columns of unknown components stay on the left.
    Eigen::MatrixXcd lhs(n, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);

    std::vector<bool> is_dirichlet(n);
    Eigen::VectorXd bc_value(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const FaceBC& f = bc.at(mesh.elements[j].face);
        is_dirichlet[j] = f.kind == BCKind::Dirichlet;
        bc_value[j] = f.value;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec3& target = mesh.elements[i].centroid;
        for (Eigen::Index j = 0; j < n; ++j) {
            const PanelIntegrals p = panel_integrals(k, target, mesh.elements[j]);
            Complex h = p.double_layer;
            if (i == j) h += 0.5;
            if (is_dirichlet[j]) {
                lhs(i, j) = -p.single_layer;
                rhs[i] -= h * bc_value[j];
            } else {
                lhs(i, j) = h;
                rhs[i] += p.single_layer * bc_value[j];
            }
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);
    const double rcond = lu.rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(cond < kConditionLimit)) {
        throw SingularSystem("assemble_and_solve: condition estimate " + std::to_string(cond) +
                             " exceeds 1e12 (near-resonance wavenumber or degenerate mesh)");
    }
    const Eigen::VectorXcd x = lu.solve(rhs);

    CauchyData cauchy;
    cauchy.u.resize(n);
    cauchy.q.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (is_dirichlet[j]) {
            cauchy.u[j] = Complex(bc_value[j], 0.0);
            cauchy.q[j] = x[j];
        } else {
            cauchy.u[j] = x[j];
            cauchy.q[j] = Complex(bc_value[j], 0.0);
        }
    }
    return {std::move(cauchy), cond};
}

std::vector<double> InteriorEvaluation::real_values() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
    return out;
}

InteriorEvaluation evaluate_interior(const BoundaryMesh& mesh, const CauchyData& cauchy,
                                     Wavenumber k, const PointSet& targets) {
    if (cauchy.size() != mesh.size()) {
        throw ShapeMismatch("evaluate_interior: Cauchy data length does not match mesh");
    }

    InteriorEvaluation out;
    out.values.resize(targets.size());
    out.near_boundary.resize(targets.size());

    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Vec3& target = targets.points[t];
        const double dist = mesh.domain.boundary_distance(target);
        if (!(dist > 0.0)) {
            throw OutsideDomain("evaluate_interior: target " + std::to_string(t) +
                                " is not strictly interior");
        }
        out.near_boundary[t] = dist < mesh.step / 2.0;

        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < mesh.size(); ++j) {
            const PanelIntegrals p = panel_integrals(k, target, mesh.elements[j]);
            acc += cauchy.q[j] * p.single_layer - cauchy.u[j] * p.double_layer;
        }
        out.values[t] = acc;
    }
    return out;
}

Dataset generate_dataset(const BoxDomain& domain, double step, Wavenumber k, const BCSpec& bc,
                         const std::array<int, 3>& sensor_counts,
                         const std::array<int, 3>& grid_counts) {
    Dataset ds{build_box_mesh(domain, step), {}, {}, {}, {}, 0.0};
    SolveResult solved = assemble_and_solve(ds.mesh, k, bc);
    ds.condition_estimate = solved.condition_estimate;
    ds.boundary_u = solved.cauchy.u_real();
    ds.boundary_q = solved.cauchy.q_real();

    ds.sensors = uniform_sensor_points(domain, sensor_counts);
    ds.sensors.values = evaluate_interior(ds.mesh, solved.cauchy, k, ds.sensors).real_values();

    ds.grid = evaluation_grid(domain, grid_counts);
    ds.grid.values = evaluate_interior(ds.mesh, solved.cauchy, k, ds.grid).real_values();
    return ds;
}

} // namespace fieldrec

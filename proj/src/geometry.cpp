#include "fieldrec/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fieldrec {

namespace {

constexpr const char* kFaceNames[6] = {"x-", "x+", "y-", "y+", "z-", "z+"};

// Number of cells of side `step` along a length, or -1 if the step does not tile it.
int cell_count(double length, double step) {
    const double ratio = length / step;
    const int n = static_cast<int>(std::lround(ratio));
    if (n < 1 || std::abs(n * step - length) > 1e-9) return -1;
    return n;
}

} // namespace

std::string face_name(Face f) { return kFaceNames[static_cast<int>(f)]; }

Face face_from_name(const std::string& name) {
    for (Face f : kAllFaces) {
        if (name == kFaceNames[static_cast<int>(f)]) return f;
    }
    throw ConfigError("unknown face label '" + name + "' (expected one of x-,x+,y-,y+,z-,z+)");
}

BoxDomain::BoxDomain(double lx, double ly, double lz) : BoxDomain(Vec3(lx, ly, lz)) {}

BoxDomain::BoxDomain(const Vec3& l) : lengths(l) {
    if (!(l.x() > 0.0) || !(l.y() > 0.0) || !(l.z() > 0.0)) {
        throw ConfigError("box lengths must be strictly positive");
    }
}

double BoxDomain::surface_area() const {
    const Vec3& L = lengths;
    return 2.0 * (L.x() * L.y() + L.x() * L.z() + L.y() * L.z());
}

double BoxDomain::volume() const { return lengths.prod(); }

double BoxDomain::boundary_distance(const Vec3& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        d = std::min(d, std::min(p[a], lengths[a] - p[a]));
    }
    return d;
}

double BoundaryMesh::total_area() const {
    double a = 0.0;
    for (const auto& e : elements) a += e.area;
    return a;
}

BoundaryMesh build_box_mesh(const BoxDomain& domain, double step) {
    if (!(step > 0.0)) throw NonConformingStep("mesh step must be positive");
    int n[3];
    for (int a = 0; a < 3; ++a) {
        n[a] = cell_count(domain.lengths[a], step);
        if (n[a] < 0) {
            throw NonConformingStep("step " + std::to_string(step) + " does not tile box length " +
                                    std::to_string(domain.lengths[a]));
        }
    }

    BoundaryMesh mesh{domain, step, {}};
    std::size_t total = 0;
    for (int a = 0; a < 3; ++a) total += 2 * static_cast<std::size_t>(n[(a + 1) % 3]) * n[(a + 2) % 3];
    mesh.elements.reserve(total);

    for (Face f : kAllFaces) {
        const int axis = face_axis(f);
        const bool positive = face_is_positive_side(f);
        // In-face axes in ascending index order (x-,x+ -> (y,z); y-,y+ -> (x,z); z-,z+ -> (x,y)).
        const int a1 = axis == 0 ? 1 : 0;
        const int a2 = axis == 2 ? 1 : 2;

        Vec3 normal = Vec3::Zero();
        normal[axis] = positive ? 1.0 : -1.0;
        const double wall = positive ? domain.lengths[axis] : 0.0;

        for (int i = 0; i < n[a1]; ++i) {
            for (int j = 0; j < n[a2]; ++j) {
                BoundaryElement e;
                e.centroid[axis] = wall;
                e.centroid[a1] = (i + 0.5) * step;
                e.centroid[a2] = (j + 0.5) * step;
                e.normal = normal;
                e.area = step * step;
                e.face = f;
                mesh.elements.push_back(e);
            }
        }
    }
    return mesh;
}

double solid_angle_coeff(const Vec3& point, const BoxDomain& domain) {
    constexpr double kOnFaceTol = 1e-12;
    int walls = 0;
    for (int a = 0; a < 3; ++a) {
        const double lo = point[a];
        const double hi = domain.lengths[a] - point[a];
        if (lo < -kOnFaceTol || hi < -kOnFaceTol) {
            throw OutsideDomain("point lies outside the closed box");
        }
        if (lo <= kOnFaceTol || hi <= kOnFaceTol) ++walls;
    }
    // Interior: full solid angle. Each wall halves the inner solid angle of the box corner
    // region (face 2pi, edge pi, corner pi/2 out of 4pi).
    switch (walls) {
        case 0: return 1.0;
        case 1: return 0.5;
        case 2: return 0.25;
        default: return 0.125;
    }
}

namespace {

PointSet cell_centered_lattice(const BoxDomain& domain, const std::array<int, 3>& counts) {
    for (int a = 0; a < 3; ++a) {
        if (counts[a] < 1) throw ConfigError("lattice counts must be >= 1");
    }
    PointSet set;
    set.points.reserve(static_cast<std::size_t>(counts[0]) * counts[1] * counts[2]);
    for (int i = 0; i < counts[0]; ++i) {
        for (int j = 0; j < counts[1]; ++j) {
            for (int l = 0; l < counts[2]; ++l) {
                set.points.emplace_back((i + 0.5) * domain.lengths.x() / counts[0],
                                        (j + 0.5) * domain.lengths.y() / counts[1],
                                        (l + 0.5) * domain.lengths.z() / counts[2]);
            }
        }
    }
    return set;
}

} // namespace

PointSet uniform_sensor_points(const BoxDomain& domain, const std::array<int, 3>& counts) {
    return cell_centered_lattice(domain, counts);
}

PointSet evaluation_grid(const BoxDomain& domain, const std::array<int, 3>& counts) {
    return cell_centered_lattice(domain, counts);
}

} // namespace fieldrec

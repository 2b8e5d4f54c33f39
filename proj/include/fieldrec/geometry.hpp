#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fieldrec/errors.hpp"

namespace fieldrec {

using Vec3 = Eigen::Vector3d;

// Box faces in the canonical ordering used everywhere (meshing, BCs, CSV files).
enum class Face : int { XMinus = 0, XPlus = 1, YMinus = 2, YPlus = 3, ZMinus = 4, ZPlus = 5 };

constexpr std::array<Face, 6> kAllFaces = {Face::XMinus, Face::XPlus, Face::YMinus,
                                           Face::YPlus,  Face::ZMinus, Face::ZPlus};

inline int face_axis(Face f) { return static_cast<int>(f) / 2; }
inline bool face_is_positive_side(Face f) { return static_cast<int>(f) % 2 == 1; }

std::string face_name(Face f);          // "x-", "x+", "y-", "y+", "z-", "z+"
Face face_from_name(const std::string& name);

// Axis-aligned box [0,Lx] x [0,Ly] x [0,Lz].
struct BoxDomain {
    Vec3 lengths;

    BoxDomain(double lx, double ly, double lz);
    explicit BoxDomain(const Vec3& lengths);

    double surface_area() const;
    double volume() const;

    // Distance from p to the nearest face plane. Positive inside, negative outside.
    double boundary_distance(const Vec3& p) const;
    bool strictly_inside(const Vec3& p) const { return boundary_distance(p) > 0.0; }
};

// Constant element: planar axis-aligned square panel collocated at its centroid.
struct BoundaryElement {
    Vec3 centroid;
    Vec3 normal;
    double area = 0.0;
    Face face = Face::XMinus;

    double side() const { return std::sqrt(area); }
};

struct BoundaryMesh {
    BoxDomain domain;
    double step = 0.0;
    std::vector<BoundaryElement> elements;

    std::size_t size() const { return elements.size(); }
    double total_area() const;
};

// Interior points, optionally paired with field values.
struct PointSet {
    std::vector<Vec3> points;
    std::optional<std::vector<double>> values;

    std::size_t size() const { return points.size(); }
};

// Uniform quadrilateral surface mesh with square cells of side `step`.
// Faces are emitted in the order x-,x+,y-,y+,z-,z+; within a face, cells are ordered
// lexicographically by the two in-face coordinates (lower axis index first).
// Throws NonConformingStep unless `step` tiles every face to within 1e-9.
BoundaryMesh build_box_mesh(const BoxDomain& domain, double step);

// Inner solid angle over 4*pi: 1 in the interior, 1/2 on a face, 1/4 on an edge,
// 1/8 at a corner (exact values for the box geometry).
// Throws OutsideDomain if the point lies outside the closed box by more than 1e-12.
double solid_angle_coeff(const Vec3& point, const BoxDomain& domain);

// Cell-centered lattice: coordinate (i + 0.5) * L_d / n_d in each dimension.
// Points are ordered lexicographically by (x, y, z) index.
PointSet uniform_sensor_points(const BoxDomain& domain, const std::array<int, 3>& counts);

// Same lattice rule as uniform_sensor_points; a separate entry point so that configs
// can distinguish sensor layouts from evaluation grids.
PointSet evaluation_grid(const BoxDomain& domain, const std::array<int, 3>& counts);

} // namespace fieldrec

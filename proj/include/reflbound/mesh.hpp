#ifndef REFLBOUND_MESH_HPP
#define REFLBOUND_MESH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "reflbound/errors.hpp"

namespace reflbound::spectral {

using Point = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

struct TriangleMesh {
    std::vector<Point> vertices;
    std::vector<Triangle> triangles;
};

inline constexpr int max_icosphere_depth = 7;
inline constexpr double default_area_floor = 1e-14;

inline double triangle_area(const TriangleMesh& mesh, const Triangle& t)
{
    const Point& a = mesh.vertices[t[0]];
    const Point& b = mesh.vertices[t[1]];
    const Point& c = mesh.vertices[t[2]];
    return 0.5 * (b - a).cross(c - a).norm();
}

inline double mesh_area(const TriangleMesh& mesh)
{
    double area = 0.0;
    for (const auto& t : mesh.triangles) {
        area += triangle_area(mesh, t);
    }
    return area;
}

/// Throws validation_error unless the mesh is a closed, consistently
/// oriented 2-manifold without degenerate triangles.
inline void validate_mesh(const TriangleMesh& mesh, double area_floor = default_area_floor)
{
    const auto n = static_cast<int>(mesh.vertices.size());
    if (mesh.triangles.empty()) {
        throw validation_error("mesh has no triangles");
    }
    // Each directed edge must occur once, and its reverse once.
    std::unordered_map<std::uint64_t, int> directed;
    directed.reserve(mesh.triangles.size() * 3);
    const auto key = [](int a, int b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    };
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
        const auto& t = mesh.triangles[f];
        for (int v : t) {
            if (v < 0 || v >= n) {
                throw validation_error("triangle " + std::to_string(f) +
                                       " references a missing vertex");
            }
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw validation_error("triangle " + std::to_string(f) + " repeats a vertex");
        }
        if (!(triangle_area(mesh, t) > area_floor)) {
            throw validation_error("triangle " + std::to_string(f) + " is degenerate");
        }
        for (int e = 0; e < 3; ++e) {
            if (++directed[key(t[e], t[(e + 1) % 3])] > 1) {
                throw validation_error("edge used twice with the same orientation");
            }
        }
    }
    for (const auto& [k, count] : directed) {
        const auto a = static_cast<std::uint32_t>(k >> 32);
        const auto b = static_cast<std::uint32_t>(k & 0xffffffffu);
        if (!directed.contains(key(static_cast<int>(b), static_cast<int>(a)))) {
            throw validation_error("mesh has a boundary edge or inconsistent orientation");
        }
    }
}

inline bool on_unit_sphere(const TriangleMesh& mesh, double tol = 1e-12)
{
    for (const auto& v : mesh.vertices) {
        if (std::abs(v.norm() - 1.0) > tol) {
            return false;
        }
    }
    return true;
}

/// Regular icosahedron subdivided `depth` times (each triangle into four),
/// with every vertex pushed out to the unit sphere. Faces are oriented
/// outward.
inline TriangleMesh build_icosphere(int depth)
{
    if (depth < 0 || depth > max_icosphere_depth) {
        throw domain_error("icosphere depth must be in [0, " +
                           std::to_string(max_icosphere_depth) + "]");
    }
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh mesh;
    mesh.vertices = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& v : mesh.vertices) {
        v.normalize();
    }
    mesh.triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };

    for (int level = 0; level < depth; ++level) {
        std::map<std::pair<int, int>, int> midpoints;
        const auto midpoint = [&](int a, int b) {
            const auto edge = std::minmax(a, b);
            if (auto it = midpoints.find(edge); it != midpoints.end()) {
                return it->second;
            }
            const int id = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
            midpoints.emplace(edge, id);
            return id;
        };
        std::vector<Triangle> refined;
        refined.reserve(mesh.triangles.size() * 4);
        for (const auto& [a, b, c] : mesh.triangles) {
            const int ab = midpoint(a, b);
            const int bc = midpoint(b, c);
            const int ca = midpoint(c, a);
            refined.push_back({a, ab, ca});
            refined.push_back({b, bc, ab});
            refined.push_back({c, ca, bc});
            refined.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(refined);
    }
    return mesh;
}

inline TriangleMesh scaled(TriangleMesh mesh, double factor)
{
    for (auto& v : mesh.vertices) {
        v *= factor;
    }
    return mesh;
}

// ---------------------------------------------------------------------------
// Text format: "v x y z" and "f i j k" lines with 1-based indices, as in OBJ.
// Blank lines and lines starting with '#' are ignored.

inline void write_mesh(std::ostream& out, const TriangleMesh& mesh)
{
    const auto old_precision = out.precision(17);
    out << "# vertices " << mesh.vertices.size() << " triangles " << mesh.triangles.size()
        << '\n';
    for (const auto& v : mesh.vertices) {
        out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
    for (const auto& t : mesh.triangles) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
    out.precision(old_precision);
}

inline TriangleMesh read_mesh(std::istream& in)
{
    TriangleMesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            double x = 0, y = 0, z = 0;
            if (!(fields >> x >> y >> z)) {
                throw parse_error("mesh line " + std::to_string(line_no) + ": bad vertex");
            }
            mesh.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            long a = 0, b = 0, c = 0;
            if (!(fields >> a >> b >> c)) {
                throw parse_error("mesh line " + std::to_string(line_no) + ": bad face");
            }
            mesh.triangles.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1),
                                      static_cast<int>(c - 1)});
        } else {
            throw parse_error("mesh line " + std::to_string(line_no) + ": unknown tag '" +
                              tag + "'");
        }
    }
    return mesh;
}

} // namespace reflbound::spectral

#endif // REFLBOUND_MESH_HPP

#include "isoval/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace isoval {

namespace {

using Eigen::Vector3d;

struct Tri {
    int a, b, c;
    Vector3d normal;  // unit, outward
    double offset;
    bool alive = true;
};

Vector3d row3(const NodeMatrix& m, int i) { return m.row(i).transpose(); }

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

HullData convex_hull_3d(const NodeMatrix& points) {
    const int n = static_cast<int>(points.rows());
    if (points.cols() != 3) throw std::invalid_argument("convex_hull_3d: points must be 3D");
    if (n < 4) throw std::invalid_argument("convex_hull_3d: need at least 4 points");

    const double scale =
        std::max(1e-30, (points.colwise().maxCoeff() - points.colwise().minCoeff()).norm());
    const double eps = 1e-9 * scale;

    // Initial tetrahedron from extreme points.
    int i0 = 0, i1 = -1;
    for (int i = 1; i < n; ++i)
        if (points(i, 0) < points(i0, 0)) i0 = i;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        double d = (row3(points, i) - row3(points, i0)).norm();
        if (d > best) best = d, i1 = i;
    }
    if (best < eps) throw std::invalid_argument("convex_hull_3d: all points coincide");
    int i2 = -1;
    best = -1.0;
    Vector3d p0 = row3(points, i0), p1 = row3(points, i1);
    for (int i = 0; i < n; ++i) {
        double d = (row3(points, i) - p0).cross(p1 - p0).norm();
        if (d > best) best = d, i2 = i;
    }
    if (best < eps * eps) throw std::invalid_argument("convex_hull_3d: points are collinear");
    int i3 = -1;
    best = -1.0;
    Vector3d nrm = (p1 - p0).cross(row3(points, i2) - p0);
    for (int i = 0; i < n; ++i) {
        double d = std::abs(nrm.dot(row3(points, i) - p0));
        if (d > best) best = d, i3 = i;
    }
    if (best < eps * nrm.norm()) throw std::invalid_argument("convex_hull_3d: points are coplanar");

    const Vector3d inner =
        0.25 * (p0 + p1 + row3(points, i2) + row3(points, i3));

    std::vector<Tri> faces;
    auto add_face = [&](int a, int b, int c) {
        Vector3d pa = row3(points, a);
        Vector3d nn = (row3(points, b) - pa).cross(row3(points, c) - pa);
        double len = nn.norm();
        if (len < eps * eps) return;  // degenerate sliver from a coplanar insertion
        nn /= len;
        if (nn.dot(pa - inner) < 0.0) {
            std::swap(b, c);
            nn = -nn;
        }
        faces.push_back({a, b, c, nn, nn.dot(pa), true});
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    std::vector<char> used(n, 0);
    used[i0] = used[i1] = used[i2] = used[i3] = 1;

    for (int p = 0; p < n; ++p) {
        if (used[p]) continue;
        used[p] = 1;
        Vector3d pt = row3(points, p);
        // Coplanar points count as visible so that all hull vertices enter
        // the face fan (exact cube corners, etc.).
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[f].alive && faces[f].normal.dot(pt) - faces[f].offset > -eps)
                visible.push_back(f);
        if (visible.empty()) continue;

        std::map<std::pair<int, int>, int> edge_count;
        for (int f : visible) {
            const Tri& t = faces[f];
            for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
                auto key = std::minmax(u, v);
                edge_count[{key.first, key.second}]++;
            }
        }
        for (int f : visible) faces[f].alive = false;
        for (int f : visible) {
            const Tri& t = faces[f];
            for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
                auto key = std::minmax(u, v);
                if (edge_count[{key.first, key.second}] == 1 && u != p && v != p)
                    add_face(u, v, p);
            }
        }
    }

    // Volume and centroid from signed tetrahedra against the origin.
    double vol6 = 0.0;
    Vector3d cent = Vector3d::Zero();
    for (const Tri& t : faces) {
        if (!t.alive) continue;
        Vector3d a = row3(points, t.a), b = row3(points, t.b), c = row3(points, t.c);
        double v = a.dot(b.cross(c));
        vol6 += v;
        cent += v * (a + b + c);
    }
    if (vol6 <= 0.0) throw std::invalid_argument("convex_hull_3d: non-positive hull volume");
    HullData hull;
    hull.volume = vol6 / 6.0;
    hull.centroid = (cent / (4.0 * vol6)).eval();

    // Merge coplanar triangles into facets: union-find across shared edges.
    std::vector<int> alive_idx;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        if (faces[f].alive) alive_idx.push_back(f);
    const int m = static_cast<int>(alive_idx.size());
    DisjointSet groups(m);
    std::map<std::pair<int, int>, int> edge_face;
    for (int k = 0; k < m; ++k) {
        const Tri& t = faces[alive_idx[k]];
        for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
            auto key = std::minmax(u, v);
            auto it = edge_face.find({key.first, key.second});
            if (it == edge_face.end()) {
                edge_face[{key.first, key.second}] = k;
            } else {
                const Tri& s = faces[alive_idx[it->second]];
                if (t.normal.dot(s.normal) > 1.0 - 1e-10 &&
                    std::abs(t.offset - s.offset) < eps)
                    groups.unite(k, it->second);
            }
        }
    }

    std::map<int, std::vector<int>> facet_tris;
    for (int k = 0; k < m; ++k) facet_tris[groups.find(k)].push_back(k);

    const int n_facets = static_cast<int>(facet_tris.size());
    hull.normals.resize(n_facets, 3);
    hull.offsets.resize(n_facets);
    hull.areas.resize(n_facets);
    std::vector<char> is_vertex(n, 0);
    int fi = 0;
    for (const auto& [root, tris] : facet_tris) {
        Vector3d nsum = Vector3d::Zero();
        double area = 0.0, dsum = 0.0;
        for (int k : tris) {
            const Tri& t = faces[alive_idx[k]];
            Vector3d a = row3(points, t.a), b = row3(points, t.b), c = row3(points, t.c);
            double ta = 0.5 * (b - a).cross(c - a).norm();
            area += ta;
            nsum += ta * t.normal;
            dsum += ta * t.offset;
            is_vertex[t.a] = is_vertex[t.b] = is_vertex[t.c] = 1;
        }
        hull.normals.row(fi) = (nsum / nsum.norm()).transpose();
        hull.offsets[fi] = dsum / area;
        hull.areas[fi] = area;
        ++fi;
    }

    int n_verts = 0;
    for (int i = 0; i < n; ++i) n_verts += is_vertex[i];
    hull.vertices.resize(n_verts, 3);
    int vi = 0;
    for (int i = 0; i < n; ++i)
        if (is_vertex[i]) hull.vertices.row(vi++) = points.row(i);
    return hull;
}

double convex_hull_area_2d(const std::vector<Eigen::Vector2d>& points) {
    if (points.size() < 3) return 0.0;
    std::vector<Eigen::Vector2d> pts = points;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    int k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= static_cast<int>(t) && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area2 += a.x() * b.y() - a.y() * b.x();
    }
    return 0.5 * std::abs(area2);
}

}  // namespace isoval

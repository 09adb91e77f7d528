#ifndef ISOVAL_HULL_HPP
#define ISOVAL_HULL_HPP

#include <vector>

#include "isoval/kernels.hpp"

namespace isoval {

/// Facet data of the 3D convex hull of a point set. Coplanar hull triangles
/// are merged into single facets (same support plane), so a cube yields six
/// facets. Offsets are measured from the input frame's origin.
struct HullData {
    NodeMatrix vertices;   // hull vertices only
    NodeMatrix normals;    // F x 3, unit, outward
    Vector offsets;        // F
    Vector areas;          // F
    double volume = 0.0;
    Vector centroid;       // volume centroid
};

/// Incremental convex hull; throws std::invalid_argument on degenerate
/// (lower-dimensional) input.
HullData convex_hull_3d(const NodeMatrix& points);

/// Area of the 2D convex hull of a planar point set (monotone chain).
double convex_hull_area_2d(const std::vector<Eigen::Vector2d>& points);

}  // namespace isoval

#endif

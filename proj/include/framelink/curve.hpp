#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "framelink/lattice.hpp"
#include "framelink/rational.hpp"

namespace framelink {

struct Vec3 {
    Rat x, y, th;  // th is a lift of the fiber coordinate (period 1)
    bool operator==(const Vec3&) const = default;
};

// Closed piecewise-linear loop in L = R^2 x S^1.  The vertex list carries the
// closing vertex explicitly: last = first up to an integer shift of th, and
// that shift is the winding number.
struct PLCurve {
    std::vector<Vec3> vertices;
    std::string component_label;

    std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }

    // Throws std::invalid_argument if the loop is open or has degenerate edges.
    void validate() const;

    bool is_closed() const;
};

Int winding(const PLCurve& c);

// Class of c in H_1(L') for a curve contained in the region of plane radius > R.
// m = signed plane winding around the origin, w = fiber winding.
LatticeClass end_class(const PLCurve& c, const Rat& R);

// Signed winding of the plane projection around the plane point q.
// The curve must not pass through q.
Int plane_winding(const PLCurve& c, const Rat& qx, const Rat& qy);

struct GeneralPositionReport {
    bool disjoint = false;
    Rat min_sq_distance;  // squared distance in the product metric on L
    std::vector<std::pair<std::size_t, std::size_t>> degenerate_pairs;
};

GeneralPositionReport check_general_position(const PLCurve& c1, const PLCurve& c2);

// Max-norm plane radius over all vertices.
Rat plane_radius(const PLCurve& c);

PLCurve translated(const PLCurve& c, const Rat& dx, const Rat& dy, const Rat& dth = 0);

// Insert a vertex on edge i at parameter t in (0,1).
PLCurve subdivided(const PLCurve& c, std::size_t edge, const Rat& t);

// Curve file format: one vertex per line, three rational tokens "x y th",
// '#' comments, blank lines separating curves.
PLCurve parse_curve(const std::string& text);
std::vector<PLCurve> parse_curves(const std::string& text);
std::string emit_curve(const PLCurve& c);

// Convenience builders used all over the tests.
PLCurve make_fiber(const Rat& x, const Rat& y, Int w = 1);
PLCurve make_plane_square(const Rat& radius, const Rat& th, bool counterclockwise = true);
// PL loop on the square torus of max-norm radius `radius`, winding m times in
// the plane and w times in the fiber.
PLCurve make_torus_curve(const Rat& radius, Int m, Int w);

}  // namespace framelink

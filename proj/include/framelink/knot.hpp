#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framelink/lattice.hpp"
#include "framelink/linking.hpp"
#include "framelink/rational.hpp"

namespace framelink {

struct R3 {
    Rat x, y, z;
    bool operator==(const R3&) const = default;
    R3 operator+(const R3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    R3 operator-(const R3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    R3 operator*(const Rat& k) const { return {x * k, y * k, z * k}; }
};

inline R3 cross(const R3& a, const R3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Rat dot(const R3& a, const R3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Closed PL knot in R^3; the closing vertex is explicit (last == first).
struct FramedKnot {
    std::vector<R3> vertices;
    std::optional<Int> framing;
    std::vector<R3> pushoff_curve;  // empty when the framing is an integer
    std::string component_id;

    void validate() const;
};

bool knots_disjoint(const std::vector<R3>& a, const std::vector<R3>& b);

// Linking number of two disjoint PL loops in R^3 by signed crossing count of
// a generic seeded projection (crossings of the first curve over the second).
Int link_r3(const std::vector<R3>& k1, const std::vector<R3>& k2,
            std::uint64_t seed = kDefaultSeed);

Int framing_from_pushoff(const FramedKnot& k, const std::vector<R3>& pushoff,
                         std::uint64_t seed = kDefaultSeed);

// Pushoff realizing framing f: parallel translate, measure, then wind the
// difference around one edge; the result is re-measured before returning.
std::vector<R3> pushoff(const FramedKnot& k, const Int& f, const Rat& eps,
                        std::uint64_t seed = kDefaultSeed);

// Frame of the associated Lagrangian; the offset between the two integer
// labelings is a convention and set to zero.
FrameInt knot_frame_to_L_frame(const Int& k);

struct ConormalCycle {
    std::vector<R3> base;
    std::vector<R3> eta;  // per vertex, orthogonal to the outgoing edge and the frame field
};

ConormalCycle eta_cycle(const FramedKnot& k, const std::vector<R3>& frame_field);

// Knot file format: "x y z" per line, optional "framing: k" line, optional
// second blank-separated block holding an explicit pushoff.
FramedKnot parse_knot(const std::string& text);
std::string emit_knot(const FramedKnot& k);

// Small corpus builders.
FramedKnot make_round_unknot(const Rat& radius);
FramedKnot make_trefoil();

}  // namespace framelink

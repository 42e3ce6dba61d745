#pragma once

#include <cstdint>
#include <vector>

#include "framelink/curve.hpp"
#include "framelink/lattice.hpp"

namespace framelink {

inline constexpr std::uint64_t kDefaultSeed = 0x66726d6c6e6bULL;
inline constexpr int kMaxReseedAttempts = 32;

// Thrown when every perturbation attempt hit a non-generic configuration.
struct DegenerateGeometryError : std::runtime_error {
    std::vector<std::uint64_t> seed_trail;
    explicit DegenerateGeometryError(std::string what, std::vector<std::uint64_t> trail)
        : std::runtime_error(std::move(what)), seed_trail(std::move(trail)) {}
};

enum class LinkMethod { chain, embedding, both };

struct LinkResult {
    Int value;
    FrameInt frame;
    LinkMethod method;
    Int w1, w2;
};

// One crossing of the annular diagram (plane rotated, then projected to the
// (x, theta) cylinder; larger y passes over).
struct Crossing {
    std::size_t edge1, edge2;
    Rat s, t;       // parameters along the two edges
    Vec3 p1, p2;    // the two strand points in original coordinates
    int sign;       // orientation of the crossing in the diagram
    bool c1_over;
};

std::vector<Crossing> diagram_crossings(const PLCurve& c1, const PLCurve& c2,
                                        std::uint64_t seed = kDefaultSeed);

// Linking number in the frame-0 compactification: signed count of crossings
// of c1 over c2 in a generic annular diagram of the standard solid-torus
// embedding.
Int link_embedded(const PLCurve& c1, const PLCurve& c2, std::uint64_t seed = kDefaultSeed);

// Linking number at frame p via the bounding-chain construction: intersection
// of c1 with an explicit PL homotopy 2-chain from c2 to a reference curve in
// class w2*(p*mu + lambda) on the torus of max-norm radius T2.
Int link_chain(const PLCurve& c1, const PLCurve& c2, const FrameInt& p, const Rat& T1,
               const Rat& T2, std::uint64_t seed = kDefaultSeed);

// Dispatcher.  method embedding: link_embedded + p*w1*w2.  method chain: the
// chain construction.  method both: run both and hard-error on disagreement.
LinkResult link(const PLCurve& c1, const PLCurve& c2, const FrameInt& p,
                LinkMethod method = LinkMethod::embedding, std::uint64_t seed = kDefaultSeed);

// Framed self-linking via the radial pushoff by (eps, 0); eps <= 0 picks the
// default (half the minimum plane self-distance across non-adjacent edges).
Int self_link(const PLCurve& c, const FrameInt& p, Rat eps = 0, std::uint64_t seed = kDefaultSeed);

// Returns c1 with the strand at the given diagram crossing pushed through c2,
// switching the crossing.  delta is the parameter half-width of the modified
// wedge around the crossing.
PLCurve crossing_switched(const PLCurve& c1, const Crossing& cr, const Rat& delta);

}  // namespace framelink

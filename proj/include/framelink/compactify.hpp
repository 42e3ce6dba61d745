#pragma once

#include "framelink/lattice.hpp"
#include "framelink/rational.hpp"

namespace framelink {

// Point on the gluing collar R x T^2; r != 0 on the overlap.
struct CollarPoint {
    Rat r;
    Rat s;  // mod 1
    Rat t;  // mod 1
    bool operator==(const CollarPoint&) const = default;
};

// The gluing diffeomorphism (r,(s,t)) -> (-r, A_f(s,t)).
CollarPoint apply_transition(const CollarPoint& q, const LatticeClass& f, const LatticeClass& v);

// Inverse transition; apply_inverse(apply_transition(q)) == q mod 1.
CollarPoint apply_inverse_transition(const CollarPoint& q, const LatticeClass& f,
                                     const LatticeClass& v);

// Class of the transported curve in the glued torus's end coordinates: A_f c.
LatticeClass image_class(const LatticeClass& c, const LatticeClass& f, const LatticeClass& v);

// True iff c dies in S^3 minus the glued core, i.e. c is in Span_Z{f}.
bool caps_off(const LatticeClass& c, const LatticeClass& f, const LatticeClass& v);

}  // namespace framelink

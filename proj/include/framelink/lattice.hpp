#pragma once

#include <stdexcept>

#include "framelink/rational.hpp"

namespace framelink {

// Element of H_1(L') = Z^2 for L = R^2 x S^1.  Basis: mu = (1,0) is the
// plane-winding class around the origin (it dies in H_1(L)), lambda = (0,1)
// is the fiber class, mapping to the generator of H_1(L).
struct LatticeClass {
    Int m = 0;  // coefficient of mu
    Int w = 0;  // coefficient of lambda

    bool operator==(const LatticeClass&) const = default;
    LatticeClass operator-() const { return {-m, -w}; }
    LatticeClass operator+(const LatticeClass& o) const { return {m + o.m, w + o.w}; }
    LatticeClass operator*(const Int& k) const { return {m * k, w * k}; }
};

// Normalized frame: the class p*mu + lambda, after identifying f with -f.
struct FrameInt {
    Int p = 0;
    bool operator==(const FrameInt&) const = default;
    LatticeClass as_class() const { return {p, 1}; }
};

// Orientation-preserving map of T^2, det = +1.
struct UnimodularMatrix {
    Int a = 1, b = 0, c = 0, d = 1;

    Int det() const { return a * d - b * c; }
    LatticeClass apply(const LatticeClass& x) const { return {a * x.m + b * x.w, c * x.m + d * x.w}; }
    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }  // valid for det +1
    bool operator==(const UnimodularMatrix&) const = default;
};

inline bool is_primitive(const LatticeClass& v) {
    Int g = gcd(abs(v.m), abs(v.w));
    return g == 1;
}

// |f1 v2 - f2 v1| = 1, i.e. {f, v} is a Z-basis of H_1(L').
bool is_frame(const LatticeClass& f, const LatticeClass& v);

// Frames are identified up to sign; the representative has lambda-coefficient +1.
// Requires v = +-mu in the canonical basis.
FrameInt normalize_frame(const LatticeClass& f, const LatticeClass& v);

inline Int frame_difference(const FrameInt& f, const FrameInt& f_prime) { return f_prime.p - f.p; }

// A with det +1, A v = f, A f = -v.
UnimodularMatrix gluing_matrix(const LatticeClass& f, const LatticeClass& v);

}  // namespace framelink

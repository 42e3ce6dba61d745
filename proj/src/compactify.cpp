#include "framelink/compactify.hpp"

namespace framelink {

namespace {

CollarPoint act(const UnimodularMatrix& A, const CollarPoint& q) {
    if (q.r == 0) throw std::invalid_argument("collar coordinate must be nonzero");
    Rat s = Rat(A.a) * q.s + Rat(A.b) * q.t;
    Rat t = Rat(A.c) * q.s + Rat(A.d) * q.t;
    return {-q.r, mod1(s), mod1(t)};
}

}  // namespace

CollarPoint apply_transition(const CollarPoint& q, const LatticeClass& f, const LatticeClass& v) {
    return act(gluing_matrix(f, v), q);
}

CollarPoint apply_inverse_transition(const CollarPoint& q, const LatticeClass& f,
                                     const LatticeClass& v) {
    return act(gluing_matrix(f, v).inverse(), q);
}

LatticeClass image_class(const LatticeClass& c, const LatticeClass& f, const LatticeClass& v) {
    return gluing_matrix(f, v).apply(c);
}

bool caps_off(const LatticeClass& c, const LatticeClass& f, const LatticeClass& v) {
    if (!is_frame(f, v)) throw std::invalid_argument("not a frame");
    // c in Span_Z{f}  <=>  det(c, f) = 0.
    return c.m * f.w - c.w * f.m == 0;
}

}  // namespace framelink

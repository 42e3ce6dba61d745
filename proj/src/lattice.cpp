#include "framelink/lattice.hpp"

namespace framelink {

bool is_frame(const LatticeClass& f, const LatticeClass& v) {
    if (!is_primitive(v)) throw std::invalid_argument("invalid kernel generator");
    Int det = f.m * v.w - f.w * v.m;
    return det == 1 || det == -1;
}

FrameInt normalize_frame(const LatticeClass& f, const LatticeClass& v) {
    if (!is_frame(f, v)) throw std::invalid_argument("not a frame");
    if (!(v == LatticeClass{1, 0} || v == LatticeClass{-1, 0}))
        throw std::invalid_argument("normalize_frame expects v = +-mu");
    // f = (p, +-1); flip sign so the lambda coefficient is +1.
    if (f.w == 1) return {f.m};
    return {-f.m};
}

UnimodularMatrix gluing_matrix(const LatticeClass& f, const LatticeClass& v) {
    if (!is_frame(f, v)) throw std::invalid_argument("not a frame");
    Int det = f.m * v.w - f.w * v.m;  // +-1
    // A = [f, -v] [v, f]^{-1}, the unique integer solution of A v = f, A f = -v.
    UnimodularMatrix A;
    A.a = -(f.m * f.w + v.m * v.w) / det;
    A.b = (f.m * f.m + v.m * v.m) / det;
    A.c = -(f.w * f.w + v.w * v.w) / det;
    A.d = (f.m * f.w + v.m * v.w) / det;
    if (A.det() != 1) throw std::logic_error("gluing matrix not unimodular");
    return A;
}

}  // namespace framelink

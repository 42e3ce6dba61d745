#include <doctest.h>

#include <framelink/compactify.hpp>

using namespace framelink;

TEST_CASE("transition map") {
    LatticeClass f{0, 1}, v{1, 0};
    CollarPoint q{1, Rat(1, 4), 0};
    CollarPoint img = apply_transition(q, f, v);
    CHECK(img == CollarPoint{-1, 0, Rat(1, 4)});
    CHECK(apply_inverse_transition(img, f, v) == q);
    CHECK_THROWS(apply_transition({0, 0, 0}, f, v));
}

TEST_CASE("transition flips the collar coordinate") {
    for (Int p = -4; p <= 4; ++p) {
        CollarPoint q{Rat(3, 2), Rat(2, 7), Rat(5, 9)};
        CollarPoint img = apply_transition(q, {p, 1}, {1, 0});
        CHECK(img.r == -q.r);
        CHECK(apply_inverse_transition(img, {p, 1}, {1, 0}) == q);
    }
}

TEST_CASE("image classes") {
    LatticeClass f{2, 1}, v{1, 0};
    CHECK(image_class(v, f, v) == f);
    CHECK(image_class(f, f, v) == -v);
    CHECK(image_class(f * 2 + v * 3, f, v) == (-v) * 2 + f * 3);
}

TEST_CASE("caps_off") {
    for (Int p = -10; p <= 10; ++p) {
        LatticeClass f{p, 1}, v{1, 0};
        CHECK(caps_off(f, f, v));
        CHECK(caps_off(f * 3, f, v));
        CHECK_FALSE(caps_off(v, f, v));
        // up to sign, f is the only primitive class that dies
        int dying = 0;
        for (Int m = -6; m <= 6; ++m)
            for (Int w = 0; w <= 6; ++w) {
                LatticeClass c{m, w};
                if (c == LatticeClass{0, 0} || !is_primitive(c)) continue;
                if (w == 0 && m < 0) continue;  // sign representative
                if (caps_off(c, f, v)) ++dying;
            }
        if (p >= -6 && p <= 6) CHECK(dying == 1);
    }
}

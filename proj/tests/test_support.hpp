#pragma once

#include <framelink/curve.hpp>
#include <framelink/rng.hpp>

namespace framelink::testing {

// Random closed PL curve: winding in [-3, 3], a few vertices with small
// rational coordinates.  Coordinates stay coarse so exact arithmetic is cheap.
inline PLCurve random_curve(Rng& rng) {
    Int w = rng.uniform_int(-3, 3);
    std::size_t n = static_cast<std::size_t>(rng.uniform_int(3, 6));
    PLCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v{rng.rational(-3, 3, 8), rng.rational(-3, 3, 8), rng.rational(-2, 2, 8)};
        if (!c.vertices.empty() && v.x == c.vertices.back().x && v.y == c.vertices.back().y &&
            v.th == c.vertices.back().th)
            v.x += Rat(1, 17);
        c.vertices.push_back(v);
    }
    Vec3 close = c.vertices.front();
    close.th += Rat(w);
    if (close.x == c.vertices.back().x && close.y == c.vertices.back().y &&
        close.th == c.vertices.back().th)
        c.vertices.push_back({close.x + 1, close.y, (c.vertices.back().th + close.th) / 2});
    c.vertices.push_back(close);
    c.validate();
    return c;
}

// Disjoint random pair; retries with fresh draws until general position holds.
inline std::pair<PLCurve, PLCurve> random_disjoint_pair(Rng& rng) {
    for (int tries = 0; tries < 200; ++tries) {
        PLCurve a = random_curve(rng);
        PLCurve b = random_curve(rng);
        if (check_general_position(a, b).disjoint) return {a, b};
    }
    throw std::runtime_error("could not draw a disjoint pair");
}

}  // namespace framelink::testing

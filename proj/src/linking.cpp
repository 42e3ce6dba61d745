#include "framelink/linking.hpp"

#include <algorithm>

#include "framelink/rng.hpp"

namespace framelink {

namespace {

// Thrown inside one attempt; the caller reseeds the perturbation.
struct NonGeneric {};

Rat cross2(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) { return ax * by - ay * bx; }

struct RotCurve {
    // plane-rotated coordinates, theta kept as the exact lift
    std::vector<Vec3> v;
};

// Rotate the plane and shear theta along the projection direction; the shear
// is an ambient isotopy of L (closed curves gain no winding), so the crossing
// count is unchanged while theta-coincident horizontal edges become generic.
RotCurve rotate_plane(const PLCurve& c, const Rat& co, const Rat& si, const Rat& shear) {
    RotCurve out;
    out.v.reserve(c.vertices.size());
    for (const Vec3& p : c.vertices) {
        Rat y = si * p.x + co * p.y;
        out.v.push_back({co * p.x - si * p.y, y, p.th + shear * y});
    }
    return out;
}

std::vector<Crossing> crossings_attempt(const PLCurve& c1, const PLCurve& c2, const Rat& co,
                                        const Rat& si, const Rat& shear) {
    RotCurve r1 = rotate_plane(c1, co, si, shear);
    RotCurve r2 = rotate_plane(c2, co, si, shear);
    std::vector<Crossing> out;
    for (std::size_t i = 0; i + 1 < r1.v.size(); ++i) {
        Rat ax0 = r1.v[i].x, at0 = r1.v[i].th;
        Rat ax1 = r1.v[i + 1].x, at1 = r1.v[i + 1].th;
        Rat dax = ax1 - ax0, dat = at1 - at0;
        for (std::size_t j = 0; j + 1 < r2.v.size(); ++j) {
            Rat bx0 = r2.v[j].x, bt0 = r2.v[j].th;
            Rat bx1 = r2.v[j + 1].x, bt1 = r2.v[j + 1].th;
            Rat dbx = bx1 - bx0, dbt = bt1 - bt0;
            Rat lo1 = std::min(at0, at1), hi1 = std::max(at0, at1);
            Rat lo2 = std::min(bt0, bt1), hi2 = std::max(bt0, bt1);
            for (Int k = rat_floor(lo1 - hi2); k <= rat_ceil(hi1 - lo2); ++k) {
                Rat sb0 = bt0 + Rat(k), sb1 = bt1 + Rat(k);
                Rat rx = bx0 - ax0, rt = sb0 - at0;
                Rat D = cross2(dax, dat, dbx, dbt);
                if (D == 0) {
                    if ((dax == 0 && dat == 0) || (dbx == 0 && dbt == 0)) {
                        // an edge projecting to a point: incidence is non-generic
                        // (handled below via the collinearity test)
                    }
                    if (cross2(rx, rt, dax, dat) == 0 && cross2(rx, rt, dbx, dbt) == 0) {
                        // collinear; overlap or touching is non-generic
                        auto overlap1d = [](const Rat& a0, const Rat& a1, const Rat& b0,
                                            const Rat& b1) {
                            return std::max(std::min(a0, a1), std::min(b0, b1)) <=
                                   std::min(std::max(a0, a1), std::max(b0, b1));
                        };
                        if (overlap1d(ax0, ax1, bx0, bx1) && overlap1d(at0, at1, sb0, sb1))
                            throw NonGeneric{};
                    }
                    continue;
                }
                Rat s = cross2(rx, rt, dbx, dbt) / D;
                Rat t = cross2(rx, rt, dax, dat) / D;
                if (s < 0 || s > 1 || t < 0 || t > 1) continue;
                if (s == 0 || s == 1 || t == 0 || t == 1) throw NonGeneric{};
                Rat y1 = r1.v[i].y + s * (r1.v[i + 1].y - r1.v[i].y);
                Rat y2 = r2.v[j].y + t * (r2.v[j + 1].y - r2.v[j].y);
                if (y1 == y2) throw NonGeneric{};
                Crossing cr;
                cr.edge1 = i;
                cr.edge2 = j;
                cr.s = s;
                cr.t = t;
                auto at = [](const Vec3& a, const Vec3& b, const Rat& u) {
                    return Vec3{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                                a.th + u * (b.th - a.th)};
                };
                cr.p1 = at(c1.vertices[i], c1.vertices[i + 1], s);
                cr.p2 = at(c2.vertices[j], c2.vertices[j + 1], t);
                cr.sign = D > 0 ? 1 : -1;
                cr.c1_over = y1 > y2;
                out.push_back(cr);
            }
        }
    }
    return out;
}

void require_disjoint(const PLCurve& c1, const PLCurve& c2) {
    auto rep = check_general_position(c1, c2);
    if (!rep.disjoint) throw std::invalid_argument("curves are not disjoint");
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
    return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
}

}  // namespace

std::vector<Crossing> diagram_crossings(const PLCurve& c1, const PLCurve& c2, std::uint64_t seed) {
    c1.validate();
    c2.validate();
    require_disjoint(c1, c2);
    std::vector<std::uint64_t> trail;
    for (int attempt = 0; attempt < kMaxReseedAttempts; ++attempt) {
        std::uint64_t aseed = attempt_seed(seed, attempt);
        Rat co = 1, si = 0, shear = 0;
        if (attempt > 0) {
            Rng rng(aseed);
            std::tie(co, si) = rng.rotation();
            shear = rng.tiny();
        }
        try {
            return crossings_attempt(c1, c2, co, si, shear);
        } catch (const NonGeneric&) {
            trail.push_back(aseed);
        }
    }
    throw DegenerateGeometryError("no generic projection found", trail);
}

Int link_embedded(const PLCurve& c1, const PLCurve& c2, std::uint64_t seed) {
    Int total = 0;
    for (const Crossing& cr : diagram_crossings(c1, c2, seed))
        if (cr.c1_over) total += cr.sign;
    return total;
}

PLCurve crossing_switched(const PLCurve& c1, const Crossing& cr, const Rat& delta) {
    // keep the swept sliver narrow along the curve so it meets the other
    // strand only at the crossing itself
    Rat d = std::min(delta, Rat(1, 1024));
    d = std::min(d, Rat(cr.s / 2));
    d = std::min(d, Rat((1 - cr.s) / 2));
    if (!(d > 0)) throw std::invalid_argument("crossing parameter too close to a vertex");
    PLCurve out = subdivided(c1, cr.edge1, cr.s - d);
    out = subdivided(out, cr.edge1 + 1, (cr.s - (cr.s - d)) / (1 - (cr.s - d)));
    out = subdivided(out, cr.edge1 + 2, d / (1 - cr.s));
    // middle vertex is now at the crossing point; push it along the projection
    // fiber just past the other strand, so only this crossing changes
    Vec3& mid = out.vertices[cr.edge1 + 2];
    mid.x = cr.p2.x + (cr.p2.x - cr.p1.x) / 1024;
    mid.y = cr.p2.y + (cr.p2.y - cr.p1.y) / 1024;
    // the stored lifts may differ by whole fiber loops; only the fractional
    // offset locates the other strand in the quotient
    Rat dth = Rat(cr.p2.th - cr.p1.th);
    dth -= rat_floor(Rat(dth + Rat(1, 2)));
    mid.th = cr.p1.th + dth + dth / 1024;
    return out;
}

namespace {

struct Tri {
    Vec3 a, b, c;
    Rat e1x, e1y, e1t, e2x, e2y, e2t;  // b-a, c-a
    Rat nx, ny, nt;                    // e1 x e2
    Rat lo[3], hi[3];
};

Tri make_tri(const Vec3& a, const Vec3& b, const Vec3& c) {
    Tri t;
    t.a = a;
    t.b = b;
    t.c = c;
    t.e1x = b.x - a.x;
    t.e1y = b.y - a.y;
    t.e1t = b.th - a.th;
    t.e2x = c.x - a.x;
    t.e2y = c.y - a.y;
    t.e2t = c.th - a.th;
    t.nx = t.e1y * t.e2t - t.e1t * t.e2y;
    t.ny = t.e1t * t.e2x - t.e1x * t.e2t;
    t.nt = t.e1x * t.e2y - t.e1y * t.e2x;
    t.lo[0] = std::min({a.x, b.x, c.x});
    t.hi[0] = std::max({a.x, b.x, c.x});
    t.lo[1] = std::min({a.y, b.y, c.y});
    t.hi[1] = std::max({a.y, b.y, c.y});
    t.lo[2] = std::min({a.th, b.th, c.th});
    t.hi[2] = std::max({a.th, b.th, c.th});
    return t;
}

bool zero_area(const Tri& t) { return t.nx == 0 && t.ny == 0 && t.nt == 0; }

// Signed crossings of the oriented segment p0->p1 with the oriented triangle,
// after shifting the triangle by k in theta.  Throws NonGeneric on boundary
// contact.
Int segment_triangle(const Vec3& p0, const Vec3& p1, const Tri& tr, const Int& k) {
    Rat shift(k);
    Rat dx = p1.x - p0.x, dy = p1.y - p0.y, dt = p1.th - p0.th;
    // bbox reject
    if (std::max(p0.x, p1.x) < tr.lo[0] || std::min(p0.x, p1.x) > tr.hi[0]) return 0;
    if (std::max(p0.y, p1.y) < tr.lo[1] || std::min(p0.y, p1.y) > tr.hi[1]) return 0;
    if (std::max(p0.th, p1.th) < tr.lo[2] + shift || std::min(p0.th, p1.th) > tr.hi[2] + shift)
        return 0;
    Rat det = dx * tr.nx + dy * tr.ny + dt * tr.nt;  // det[d, e1, e2]
    Rat rx = tr.a.x - p0.x, ry = tr.a.y - p0.y, rt = tr.a.th + shift - p0.th;
    if (det == 0) {
        // segment parallel to the triangle plane
        if (rx * tr.nx + ry * tr.ny + rt * tr.nt == 0) throw NonGeneric{};  // coplanar, near
        return 0;
    }
    // Cramer on t*d - alpha*e1 - beta*e2 = a - p0
    Rat t_num = rx * tr.nx + ry * tr.ny + rt * tr.nt;
    Rat t = t_num / det;
    if (t < 0 || t > 1) return 0;
    // alpha = det[d, r, e2] / det, beta = det[d, e1, r] / det
    Rat m1x = ry * tr.e2t - rt * tr.e2y;
    Rat m1y = rt * tr.e2x - rx * tr.e2t;
    Rat m1t = rx * tr.e2y - ry * tr.e2x;
    Rat alpha = -(dx * m1x + dy * m1y + dt * m1t) / det;
    Rat m2x = tr.e1y * rt - tr.e1t * ry;
    Rat m2y = tr.e1t * rx - tr.e1x * rt;
    Rat m2t = tr.e1x * ry - tr.e1y * rx;
    Rat beta = -(dx * m2x + dy * m2y + dt * m2t) / det;
    if (alpha < 0 || beta < 0 || alpha + beta > 1) return 0;
    if (t == 0 || t == 1 || alpha == 0 || beta == 0 || alpha + beta == 1) throw NonGeneric{};
    return det > 0 ? 1 : -1;
}

Vec3 lerp3(const Vec3& a, const Vec3& b, const Rat& u) {
    return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), a.th + u * (b.th - a.th)};
}

// PL loop evaluated at parameter s in [0,1], vertex i sitting at i/(n-1).
Vec3 eval_loop(const std::vector<Vec3>& verts, const Rat& s) {
    std::size_t n = verts.size() - 1;  // edges
    Rat scaled = s * Rat(Int(n));
    Int idx = rat_floor(scaled);
    if (idx >= Int(n)) idx = Int(n) - 1;
    if (idx < 0) idx = 0;
    auto i = static_cast<std::size_t>(static_cast<long>(idx));
    Rat local = scaled - Rat(idx);
    return lerp3(verts[i], verts[i + 1], local);
}

}  // namespace

Int link_chain(const PLCurve& c1, const PLCurve& c2, const FrameInt& p, const Rat& T1,
               const Rat& T2, std::uint64_t seed) {
    c1.validate();
    c2.validate();
    require_disjoint(c1, c2);
    Rat support = std::max(plane_radius(c1), plane_radius(c2));
    if (!(T2 > T1 && T1 > support))
        throw std::invalid_argument("reference radii must satisfy T2 > T1 > curve supports");
    Int w2 = winding(c2);

    // Reference curve in class w2*(p*mu + lambda) on the square torus of
    // max-norm radius T2; for w2 = 0 the target degenerates to a point and the
    // chain is a cone.
    std::vector<Vec3> target;
    if (w2 == 0) {
        target = {Vec3{T2, 0, c2.vertices.front().th}, Vec3{T2, 0, c2.vertices.front().th}};
    } else {
        target = make_torus_curve(T2, p.p * w2, w2).vertices;
    }

    // Common parameter grid for source and target loops.
    std::vector<Rat> params;
    std::size_t n_src = c2.vertices.size() - 1;
    std::size_t n_tgt = target.size() - 1;
    for (std::size_t i = 0; i <= n_src; ++i) params.push_back(Rat(Int(i), Int(n_src)));
    for (std::size_t j = 0; j <= n_tgt; ++j) params.push_back(Rat(Int(j), Int(n_tgt)));
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<std::uint64_t> trail;
    for (int attempt = 0; attempt < kMaxReseedAttempts; ++attempt) {
        std::uint64_t aseed = attempt_seed(seed, attempt);
        Rng rng(aseed ^ 0x5b5ULL);
        std::vector<Vec3> bottom, middle, top;
        for (const Rat& s : params) {
            Vec3 b = eval_loop(c2.vertices, s);
            Vec3 t = eval_loop(target, s);
            bottom.push_back(b);
            middle.push_back(lerp3(b, t, Rat(1, 2)));
            top.push_back(t);
        }
        if (attempt > 0) {
            // jiggle the interior row; the seam (first and last columns) stays
            // identified up to the fiber period so the chain boundary is exact
            for (std::size_t i = 0; i + 1 < middle.size(); ++i) {
                middle[i].x += rng.tiny();
                middle[i].y += rng.tiny();
                middle[i].th += rng.tiny();
            }
            Vec3 seam = middle.front();
            seam.th += Rat(w2);
            middle.back() = seam;
        }
        std::vector<Tri> tris;
        auto add_quad = [&tris](const Vec3& a0, const Vec3& b0, const Vec3& b1, const Vec3& a1) {
            // corners: (s_a,u0) (s_b,u0) (s_b,u1) (s_a,u1), oriented by (ds,du)
            Tri t1 = make_tri(a0, b0, b1);
            Tri t2 = make_tri(a0, b1, a1);
            if (!zero_area(t1)) tris.push_back(t1);
            if (!zero_area(t2)) tris.push_back(t2);
        };
        for (std::size_t i = 0; i + 1 < params.size(); ++i) {
            add_quad(bottom[i], bottom[i + 1], middle[i + 1], middle[i]);
            add_quad(middle[i], middle[i + 1], top[i + 1], top[i]);
        }
        try {
            Int total = 0;
            for (std::size_t i = 0; i + 1 < c1.vertices.size(); ++i) {
                const Vec3& p0 = c1.vertices[i];
                const Vec3& p1 = c1.vertices[i + 1];
                Rat lo = std::min(p0.th, p1.th), hi = std::max(p0.th, p1.th);
                for (const Tri& tr : tris) {
                    for (Int k = rat_floor(lo - tr.hi[2]); k <= rat_ceil(hi - tr.lo[2]); ++k)
                        total += segment_triangle(p0, p1, tr, k);
                }
            }
            // Orientation pick: two fibers at frame p must link +p.
            return -total;
        } catch (const NonGeneric&) {
            trail.push_back(aseed);
        }
    }
    throw DegenerateGeometryError("no transverse chain found", trail);
}

LinkResult link(const PLCurve& c1, const PLCurve& c2, const FrameInt& p, LinkMethod method,
                std::uint64_t seed) {
    Int w1 = winding(c1);
    Int w2 = winding(c2);
    Rat support = std::max(plane_radius(c1), plane_radius(c2));
    Rat T1 = support + 1;
    Rat T2 = support + 2;
    switch (method) {
        case LinkMethod::embedding:
            return {link_embedded(c1, c2, seed) + p.p * w1 * w2, p, method, w1, w2};
        case LinkMethod::chain:
            return {link_chain(c1, c2, p, T1, T2, seed), p, method, w1, w2};
        case LinkMethod::both: {
            Int a = link_embedded(c1, c2, seed) + p.p * w1 * w2;
            Int b = link_chain(c1, c2, p, T1, T2, seed);
            if (a != b) throw std::logic_error("linking methods disagree: internal soundness bug");
            return {a, p, method, w1, w2};
        }
    }
    throw std::invalid_argument("unknown method");
}

namespace {

Rat point_segment_sq_2d(const Rat& px, const Rat& py, const Rat& ax, const Rat& ay, const Rat& bx,
                        const Rat& by) {
    Rat dx = bx - ax, dy = by - ay;
    Rat len2 = dx * dx + dy * dy;
    Rat t = 0;
    if (len2 != 0) {
        t = ((px - ax) * dx + (py - ay) * dy) / len2;
        if (t < 0) t = 0;
        if (t > 1) t = 1;
    }
    Rat qx = ax + t * dx - px, qy = ay + t * dy - py;
    return qx * qx + qy * qy;
}

Rat segment_segment_sq_2d(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
    // proper crossing => distance 0
    auto orient = [](const Vec3& p, const Vec3& q, const Vec3& r) {
        Rat d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return d == 0 ? 0 : (d > 0 ? 1 : -1);
    };
    int o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
    int o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
    if (o1 * o2 < 0 && o3 * o4 < 0) return 0;
    Rat best = point_segment_sq_2d(b0.x, b0.y, a0.x, a0.y, a1.x, a1.y);
    best = std::min(best, point_segment_sq_2d(b1.x, b1.y, a0.x, a0.y, a1.x, a1.y));
    best = std::min(best, point_segment_sq_2d(a0.x, a0.y, b0.x, b0.y, b1.x, b1.y));
    best = std::min(best, point_segment_sq_2d(a1.x, a1.y, b0.x, b0.y, b1.x, b1.y));
    return best;
}

}  // namespace

Int self_link(const PLCurve& c, const FrameInt& p, Rat eps, std::uint64_t seed) {
    c.validate();
    if (!(eps > 0)) {
        // half the minimum plane self-distance across non-adjacent edges
        std::size_t n = c.edge_count();
        Rat best_sq = -1;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // adjacent through the closure
                Rat d = segment_segment_sq_2d(c.vertices[i], c.vertices[i + 1], c.vertices[j],
                                              c.vertices[j + 1]);
                if (best_sq < 0 || d < best_sq) best_sq = d;
            }
        }
        eps = Rat(1, 2);
        if (best_sq > 0)
            while (4 * eps * eps > best_sq) eps /= 2;
    }
    // any constant plane direction induces the same framing; rotate it when the
    // pushoff is parallel to an edge of the curve
    std::vector<std::uint64_t> trail;
    for (int tries = 0; tries < kMaxReseedAttempts; ++tries) {
        Rat co = 1, si = 0;
        std::uint64_t aseed = attempt_seed(seed, tries);
        if (tries > 0) {
            Rng rng(aseed);
            std::tie(co, si) = rng.rotation();
            eps /= 2;
        }
        // the theta component keeps plane-flat curves off their own translate;
        // constant fields are all homotopic, so the framing is unaffected
        PLCurve push = translated(c, eps * co, eps * si, eps / 3);
        if (check_general_position(c, push).disjoint)
            return link(c, push, p, LinkMethod::embedding, seed).value;
        trail.push_back(aseed);
    }
    throw DegenerateGeometryError("pushoff never became disjoint", trail);
}

}  // namespace framelink

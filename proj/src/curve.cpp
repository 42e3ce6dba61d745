#include "framelink/curve.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace framelink {

namespace {

Rat dot2(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) { return ax * bx + ay * by; }

struct V3 {
    Rat x, y, t;
    V3 operator-(const V3& o) const { return {x - o.x, y - o.y, t - o.t}; }
    Rat dot(const V3& o) const { return x * o.x + y * o.y + t * o.t; }
    Rat norm2() const { return dot(*this); }
    V3 scaled(const Rat& s) const { return {x * s, y * s, t * s}; }
    V3 operator+(const V3& o) const { return {x + o.x, y + o.y, t + o.t}; }
};

Rat point_segment_sq(const V3& p, const V3& a, const V3& b) {
    V3 ab = b - a;
    V3 ap = p - a;
    Rat denom = ab.norm2();
    if (denom == 0) return ap.norm2();
    Rat t = ap.dot(ab) / denom;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    V3 d = ap - ab.scaled(t);
    return d.norm2();
}

Rat segment_segment_sq(const V3& p0, const V3& p1, const V3& q0, const V3& q1) {
    Rat best = point_segment_sq(p0, q0, q1);
    best = std::min(best, point_segment_sq(p1, q0, q1));
    best = std::min(best, point_segment_sq(q0, p0, p1));
    best = std::min(best, point_segment_sq(q1, p0, p1));
    // Interior critical point of the squared distance.
    V3 d1 = p1 - p0;
    V3 d2 = q1 - q0;
    V3 r = q0 - p0;
    Rat a = d1.norm2(), b = d1.dot(d2), c = d2.norm2();
    Rat det = a * c - b * b;
    if (det != 0) {
        Rat s = (d1.dot(r) * c - b * d2.dot(r)) / det;
        Rat t = (b * d1.dot(r) - a * d2.dot(r)) / det;
        if (s > 0 && s < 1 && t > 0 && t < 1) {
            V3 diff = (p0 + d1.scaled(s)) - (q0 + d2.scaled(t));
            best = std::min(best, diff.norm2());
        }
    }
    return best;
}

}  // namespace

bool PLCurve::is_closed() const {
    if (vertices.size() < 2) return false;
    const Vec3& a = vertices.front();
    const Vec3& b = vertices.back();
    if (a.x != b.x || a.y != b.y) return false;
    return denominator(Rat(b.th - a.th)) == 1;
}

void PLCurve::validate() const {
    if (vertices.size() < 2) throw std::invalid_argument("curve needs at least two vertices");
    if (!is_closed()) throw std::invalid_argument("curve is not closed");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (vertices[i] == vertices[i + 1])
            throw std::invalid_argument("degenerate edge at vertex " + std::to_string(i));
}

Int winding(const PLCurve& c) {
    c.validate();
    Rat shift = c.vertices.back().th - c.vertices.front().th;
    return numerator(shift);
}

Int plane_winding(const PLCurve& c, const Rat& qx, const Rat& qy) {
    c.validate();
    // Signed crossings of the horizontal ray {y = qy, x > qx}; vertices with
    // y = qy are treated as lying above the ray (symbolic perturbation).
    Int total = 0;
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        const Vec3& p = c.vertices[i];
        const Vec3& q = c.vertices[i + 1];
        bool p_up = p.y >= qy;
        bool q_up = q.y >= qy;
        if (p_up == q_up) continue;
        Rat t = (qy - p.y) / (q.y - p.y);
        Rat x_cross = p.x + t * (q.x - p.x);
        if (x_cross == qx) throw std::invalid_argument("curve passes through the base point");
        if (x_cross > qx) total += q_up ? 1 : -1;
    }
    return total;
}

LatticeClass end_class(const PLCurve& c, const Rat& R) {
    c.validate();
    for (const Vec3& v : c.vertices)
        if (v.x * v.x + v.y * v.y <= R * R)
            throw std::invalid_argument("not contained in L'");
    return {plane_winding(c, 0, 0), winding(c)};
}

Rat plane_radius(const PLCurve& c) {
    Rat r = 0;
    for (const Vec3& v : c.vertices) {
        Rat m = std::max(abs(v.x), abs(v.y));
        r = std::max(r, m);
    }
    return r;
}

GeneralPositionReport check_general_position(const PLCurve& c1, const PLCurve& c2) {
    c1.validate();
    c2.validate();
    GeneralPositionReport rep;
    bool first = true;
    for (std::size_t i = 0; i + 1 < c1.vertices.size(); ++i) {
        V3 p0{c1.vertices[i].x, c1.vertices[i].y, c1.vertices[i].th};
        V3 p1{c1.vertices[i + 1].x, c1.vertices[i + 1].y, c1.vertices[i + 1].th};
        for (std::size_t j = 0; j + 1 < c2.vertices.size(); ++j) {
            V3 q0{c2.vertices[j].x, c2.vertices[j].y, c2.vertices[j].th};
            V3 q1{c2.vertices[j].x, c2.vertices[j].y, c2.vertices[j].th};
            q1 = {c2.vertices[j + 1].x, c2.vertices[j + 1].y, c2.vertices[j + 1].th};
            // Fold the fiber period: shift the second edge by every integer
            // offset that can bring the theta ranges close.
            Rat lo1 = std::min(p0.t, p1.t), hi1 = std::max(p0.t, p1.t);
            Rat lo2 = std::min(q0.t, q1.t), hi2 = std::max(q0.t, q1.t);
            Int kmin = rat_floor(lo1 - hi2) - 1;
            Int kmax = rat_ceil(hi1 - lo2) + 1;
            for (Int k = kmin; k <= kmax; ++k) {
                V3 s0{q0.x, q0.y, q0.t + Rat(k)};
                V3 s1{q1.x, q1.y, q1.t + Rat(k)};
                Rat d = segment_segment_sq(p0, p1, s0, s1);
                if (first || d < rep.min_sq_distance) {
                    rep.min_sq_distance = d;
                    first = false;
                }
                if (d == 0) {
                    auto pr = std::make_pair(i, j);
                    if (std::find(rep.degenerate_pairs.begin(), rep.degenerate_pairs.end(), pr) ==
                        rep.degenerate_pairs.end())
                        rep.degenerate_pairs.push_back(pr);
                }
            }
        }
    }
    rep.disjoint = !first && rep.min_sq_distance > 0;
    return rep;
}

PLCurve translated(const PLCurve& c, const Rat& dx, const Rat& dy, const Rat& dth) {
    PLCurve out = c;
    for (Vec3& v : out.vertices) {
        v.x += dx;
        v.y += dy;
        v.th += dth;
    }
    return out;
}

PLCurve subdivided(const PLCurve& c, std::size_t edge, const Rat& t) {
    if (edge + 1 >= c.vertices.size()) throw std::out_of_range("edge index");
    if (!(t > 0 && t < 1)) throw std::invalid_argument("subdivision parameter must be interior");
    PLCurve out = c;
    const Vec3& a = c.vertices[edge];
    const Vec3& b = c.vertices[edge + 1];
    Vec3 mid{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.th + t * (b.th - a.th)};
    out.vertices.insert(out.vertices.begin() + static_cast<std::ptrdiff_t>(edge) + 1, mid);
    return out;
}

std::vector<PLCurve> parse_curves(const std::string& text) {
    std::vector<PLCurve> curves;
    PLCurve cur;
    std::istringstream in(text);
    std::string line;
    auto flush = [&]() {
        if (!cur.vertices.empty()) {
            cur.validate();
            curves.push_back(cur);
            cur = PLCurve{};
        }
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) {
            flush();
            continue;
        }
        if (tokens.size() != 3) throw std::invalid_argument("malformed vertex line: '" + line + "'");
        cur.vertices.push_back(
            {require_rational(tokens[0]), require_rational(tokens[1]), require_rational(tokens[2])});
    }
    flush();
    return curves;
}

PLCurve parse_curve(const std::string& text) {
    auto curves = parse_curves(text);
    if (curves.size() != 1) throw std::invalid_argument("expected exactly one curve");
    return curves.front();
}

std::string emit_curve(const PLCurve& c) {
    std::ostringstream out;
    for (const Vec3& v : c.vertices)
        out << format_rational(v.x) << ' ' << format_rational(v.y) << ' ' << format_rational(v.th)
            << '\n';
    return out.str();
}

PLCurve make_fiber(const Rat& x, const Rat& y, Int w) {
    if (w == 0) throw std::invalid_argument("fiber needs nonzero winding");
    PLCurve c;
    c.vertices.push_back({x, y, 0});
    c.vertices.push_back({x, y, Rat(w)});
    return c;
}

PLCurve make_plane_square(const Rat& radius, const Rat& th, bool counterclockwise) {
    PLCurve c;
    std::vector<std::pair<Rat, Rat>> corners = {
        {radius, radius}, {-radius, radius}, {-radius, -radius}, {radius, -radius}};
    if (!counterclockwise) std::reverse(corners.begin(), corners.end());
    for (int i = 0; i <= 4; ++i) c.vertices.push_back({corners[i % 4].first, corners[i % 4].second, th});
    return c;
}

PLCurve make_torus_curve(const Rat& radius, Int m, Int w) {
    if (m == 0 && w == 0) throw std::invalid_argument("trivial class has no torus representative");
    PLCurve c;
    if (m == 0) return make_fiber(radius, 0, w);
    long mm = static_cast<long>(abs(m));
    std::vector<std::pair<Rat, Rat>> corners = {
        {radius, radius}, {-radius, radius}, {-radius, -radius}, {radius, -radius}};
    bool ccw = m > 0;
    long n = 4 * mm;
    for (long j = 0; j <= n; ++j) {
        long idx = ccw ? (j % 4) : ((4 - j % 4) % 4);
        c.vertices.push_back({corners[static_cast<std::size_t>(idx)].first,
                              corners[static_cast<std::size_t>(idx)].second, Rat(w) * Rat(j, n)});
    }
    return c;
}

}  // namespace framelink

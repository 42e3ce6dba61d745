#include "framelink/knot.hpp"

#include <sstream>

#include "framelink/rng.hpp"

namespace framelink {

namespace {

struct NonGeneric {};

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
    return seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
}

Rat point_segment_sq(const R3& p, const R3& a, const R3& b) {
    R3 d = b - a;
    Rat len2 = dot(d, d);
    Rat t = 0;
    if (len2 != 0) {
        t = dot(p - a, d) / len2;
        if (t < 0) t = 0;
        if (t > 1) t = 1;
    }
    R3 q = a + d * t - p;
    return dot(q, q);
}

Rat segment_segment_sq(const R3& a0, const R3& a1, const R3& b0, const R3& b1) {
    R3 u = a1 - a0, v = b1 - b0, w = a0 - b0;
    Rat A = dot(u, u), B = dot(u, v), C = dot(v, v), D = dot(u, w), E = dot(v, w);
    Rat det = A * C - B * B;
    Rat best = point_segment_sq(a0, b0, b1);
    best = std::min(best, point_segment_sq(a1, b0, b1));
    best = std::min(best, point_segment_sq(b0, a0, a1));
    best = std::min(best, point_segment_sq(b1, a0, a1));
    if (det != 0) {
        Rat s = (B * E - C * D) / det;
        Rat t = (A * E - B * D) / det;
        if (s > 0 && s < 1 && t > 0 && t < 1) {
            R3 q = a0 + u * s - b0 - v * t;
            best = std::min(best, dot(q, q));
        }
    }
    return best;
}

}  // namespace

void FramedKnot::validate() const {
    if (vertices.size() < 4) throw std::invalid_argument("knot needs at least three edges");
    if (!(vertices.front() == vertices.back())) throw std::invalid_argument("knot is not closed");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        if (vertices[i] == vertices[i + 1]) throw std::invalid_argument("degenerate edge");
    // embeddedness: non-adjacent edges stay apart
    std::size_t n = vertices.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segment_segment_sq(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1]) == 0)
                throw std::invalid_argument("knot is not embedded");
        }
}

bool knots_disjoint(const std::vector<R3>& a, const std::vector<R3>& b) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j)
            if (segment_segment_sq(a[i], a[i + 1], b[j], b[j + 1]) == 0) return false;
    return true;
}

namespace {

R3 rotated(const R3& p, const std::pair<Rat, Rat>& rz, const std::pair<Rat, Rat>& rx) {
    R3 q{rz.first * p.x - rz.second * p.y, rz.second * p.x + rz.first * p.y, p.z};
    return {q.x, rx.first * q.y - rx.second * q.z, rx.second * q.y + rx.first * q.z};
}

Int crossings_attempt(const std::vector<R3>& k1, const std::vector<R3>& k2,
                      const std::pair<Rat, Rat>& rz, const std::pair<Rat, Rat>& rx) {
    std::vector<R3> a, b;
    for (const R3& p : k1) a.push_back(rotated(p, rz, rx));
    for (const R3& p : k2) b.push_back(rotated(p, rz, rx));
    Int total = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        R3 u = a[i + 1] - a[i];
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            R3 v = b[j + 1] - b[j];
            Rat den = u.x * v.y - u.y * v.x;
            Rat wx = b[j].x - a[i].x, wy = b[j].y - a[i].y;
            if (den == 0) {
                // parallel in projection: reseed only if the lines coincide
                if (wx * u.y - wy * u.x == 0) throw NonGeneric{};
                continue;
            }
            Rat s = (wx * v.y - wy * v.x) / den;
            Rat t = (wx * u.y - wy * u.x) / den;
            if (s <= 0 || s >= 1 || t <= 0 || t >= 1) {
                if ((s == 0 || s == 1) && t >= 0 && t <= 1) throw NonGeneric{};
                if ((t == 0 || t == 1) && s >= 0 && s <= 1) throw NonGeneric{};
                continue;
            }
            Rat z1 = a[i].z + s * u.z, z2 = b[j].z + t * v.z;
            if (z1 == z2) throw NonGeneric{};
            if (z1 > z2) total += (den > 0) ? 1 : -1;
        }
    }
    return total;
}

}  // namespace

Int link_r3(const std::vector<R3>& k1, const std::vector<R3>& k2, std::uint64_t seed) {
    if (!knots_disjoint(k1, k2)) throw std::invalid_argument("curves are not disjoint");
    std::vector<std::uint64_t> trail;
    for (int attempt = 0; attempt < kMaxReseedAttempts; ++attempt) {
        std::uint64_t aseed = attempt_seed(seed, attempt);
        Rng rng(aseed);
        std::pair<Rat, Rat> rz{1, 0}, rx{1, 0};
        if (attempt > 0) {
            rz = rng.rotation();
            rx = rng.rotation();
        }
        try {
            return crossings_attempt(k1, k2, rz, rx);
        } catch (const NonGeneric&) {
            trail.push_back(aseed);
        }
    }
    throw DegenerateGeometryError("no generic projection found", trail);
}

Int framing_from_pushoff(const FramedKnot& k, const std::vector<R3>& po, std::uint64_t seed) {
    k.validate();
    if (po.size() < 4 || !(po.front() == po.back()))
        throw std::invalid_argument("pushoff is not closed");
    return link_r3(k.vertices, po, seed);
}

namespace {

Rat max_abs(const R3& p) {
    Rat m = abs(p.x);
    if (abs(p.y) > m) m = abs(p.y);
    if (abs(p.z) > m) m = abs(p.z);
    return m;
}

// pushoff candidate: translate by u and wind `turns` times around edge `ei`
std::vector<R3> twisted_translate(const FramedKnot& k, const R3& u, std::size_t ei, Int turns,
                                  int chirality) {
    std::vector<R3> out;
    std::size_t n = k.vertices.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(k.vertices[i] + u);
        if (i != ei || turns == 0) continue;
        R3 a = k.vertices[i], d = k.vertices[i + 1] - a;
        R3 p0 = u - d * (dot(u, d) / dot(d, d));  // normal component of the translation
        if (p0 == R3{0, 0, 0}) throw NonGeneric{};
        R3 n2 = cross(d, p0);
        n2 = n2 * (max_abs(p0) / max_abs(n2));
        if (chirality < 0) n2 = n2 * Rat(-1);
        Int m = 4 * abs(turns) - 1;
        R3 axes[4] = {n2, p0 * Rat(-1), n2 * Rat(-1), p0};
        Int j = 1;
        for (; j <= m; ++j) {
            Rat t = Rat(1, 4) + Rat(j, 2 * (m + 1));
            out.push_back(a + d * t + axes[static_cast<int>((j - 1) % 4)]);
        }
    }
    out.push_back(out.front());
    return out;
}

}  // namespace

std::vector<R3> pushoff(const FramedKnot& k, const Int& f, const Rat& eps, std::uint64_t seed) {
    k.validate();
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    // longest edge hosts the corrective twists
    std::size_t ei = 0;
    Rat best = 0;
    for (std::size_t i = 0; i + 1 < k.vertices.size(); ++i) {
        R3 d = k.vertices[i + 1] - k.vertices[i];
        if (dot(d, d) > best) best = dot(d, d), ei = i;
    }
    std::vector<std::uint64_t> trail;
    for (int attempt = 0; attempt < kMaxReseedAttempts; ++attempt) {
        std::uint64_t aseed = attempt_seed(seed, attempt);
        Rng rng(aseed);
        R3 u{eps, eps * Rat(1, 3), eps * Rat(1, 7)};
        if (attempt > 0)
            u = {eps * rng.rational(1, 2, 8) * Rat(1, 2), eps * rng.rational(-2, 2, 8) * Rat(1, 4),
                 eps * rng.rational(-2, 2, 8) * Rat(1, 4)};
        try {
            std::vector<R3> base = twisted_translate(k, u, ei, 0, 1);
            if (!knots_disjoint(k.vertices, base)) throw NonGeneric{};
            Int w = link_r3(k.vertices, base, aseed);
            if (w == f) return base;
            for (int chirality : {1, -1}) {
                std::vector<R3> cand = twisted_translate(k, u, ei, f - w, chirality);
                if (!knots_disjoint(k.vertices, cand)) continue;
                if (link_r3(k.vertices, cand, aseed) == f) return cand;
            }
            throw NonGeneric{};
        } catch (const NonGeneric&) {
            trail.push_back(aseed);
        } catch (const DegenerateGeometryError&) {
            trail.push_back(aseed);
        }
    }
    throw DegenerateGeometryError("eps too large: no valid pushoff found", trail);
}

FrameInt knot_frame_to_L_frame(const Int& k) { return FrameInt{k}; }

ConormalCycle eta_cycle(const FramedKnot& k, const std::vector<R3>& frame_field) {
    k.validate();
    if (frame_field.size() != k.vertices.size())
        throw std::invalid_argument("frame field needs one covector per vertex");
    ConormalCycle cycle;
    cycle.base = k.vertices;
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        std::size_t e = (i + 1 < k.vertices.size()) ? i : 0;
        R3 d = k.vertices[e + 1] - k.vertices[e];
        R3 eta = cross(d, frame_field[i]);
        if (eta == R3{0, 0, 0}) throw std::invalid_argument("frame tangent to the knot");
        cycle.eta.push_back(eta);
    }
    return cycle;
}

FramedKnot parse_knot(const std::string& text) {
    FramedKnot k;
    std::vector<R3>* target = &k.vertices;
    std::istringstream in(text);
    std::string line;
    bool block_done = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) {
            if (!target->empty() && !block_done) {
                block_done = true;
                target = &k.pushoff_curve;
            }
            continue;
        }
        if (first == "framing:") {
            std::string val;
            if (!(ls >> val)) throw std::invalid_argument("framing line without a value");
            k.framing = Int(val);
            continue;
        }
        std::string ys, zs;
        if (!(ls >> ys >> zs)) throw std::invalid_argument("knot vertex needs three coordinates");
        target->push_back({require_rational(first), require_rational(ys), require_rational(zs)});
        std::string extra;
        if (ls >> extra) throw std::invalid_argument("trailing tokens on vertex line");
        block_done = false;
    }
    k.validate();
    if (!k.pushoff_curve.empty()) {
        Int measured = framing_from_pushoff(k, k.pushoff_curve);
        if (k.framing && *k.framing != measured)
            throw std::invalid_argument("framing header disagrees with the pushoff curve");
        k.framing = measured;
    }
    return k;
}

std::string emit_knot(const FramedKnot& k) {
    std::ostringstream out;
    for (const R3& p : k.vertices)
        out << format_rational(p.x) << ' ' << format_rational(p.y) << ' ' << format_rational(p.z)
            << '\n';
    if (k.framing) out << "framing: " << k.framing->str() << '\n';
    if (!k.pushoff_curve.empty()) {
        out << '\n';
        for (const R3& p : k.pushoff_curve)
            out << format_rational(p.x) << ' ' << format_rational(p.y) << ' '
                << format_rational(p.z) << '\n';
    }
    return out.str();
}

FramedKnot make_round_unknot(const Rat& radius) {
    FramedKnot k;
    k.vertices = {{radius, 0, 0}, {0, radius, 0}, {-radius, 0, 0}, {0, -radius, 0}, {radius, 0, 0}};
    k.validate();
    return k;
}

FramedKnot make_trefoil() {
    // closure of the positive 2-strand braid with three crossings
    FramedKnot k;
    k.vertices = {{0, 0, 0},  {1, 1, 1},  {2, 2, 0},  {1, 3, -1}, {0, 4, 0},
                  {1, 5, 1},  {2, 6, 0},  {5, 7, 0},  {5, -1, 0}, {2, 0, 0},
                  {1, 1, -1}, {0, 2, 0},  {1, 3, 1},  {2, 4, 0},  {1, 5, -1},
                  {0, 6, 0},  {-3, 7, 0}, {-3, -1, 0}, {0, 0, 0}};
    k.validate();
    return k;
}

}  // namespace framelink

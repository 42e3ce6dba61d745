#include "framelink/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace framelink {

std::size_t DecoratedGraph::partner(std::size_t h) const {
    for (const auto& [a, b] : pairing) {
        if (a == h) return b;
        if (b == h) return a;
    }
    throw std::out_of_range("half-edge not paired");
}

std::size_t DecoratedGraph::edge_of(std::size_t h) const {
    for (std::size_t e = 0; e < pairing.size(); ++e)
        if (pairing[e].first == h || pairing[e].second == h) return e;
    throw std::out_of_range("half-edge not paired");
}

std::size_t DecoratedGraph::cycle_position(std::size_t h) const {
    const auto& cyc = cyclic.at(half_edge_vertex.at(h));
    for (std::size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i] == h) return i;
    throw std::logic_error("half-edge missing from its cyclic order");
}

void DecoratedGraph::validate() const {
    std::size_t H = half_edge_count();
    if (cyclic.size() != vertices.size()) throw std::invalid_argument("cyclic orders per vertex");
    std::vector<int> seen(H, 0);
    for (std::size_t v = 0; v < cyclic.size(); ++v)
        for (std::size_t h : cyclic[v]) {
            if (h >= H || half_edge_vertex[h] != v)
                throw std::invalid_argument("cyclic order / incidence mismatch");
            seen[h]++;
        }
    for (std::size_t h = 0; h < H; ++h)
        if (seen[h] != 1) throw std::invalid_argument("cyclic orders must partition half-edges");
    std::vector<int> paired(H, 0);
    for (const auto& [a, b] : pairing) {
        if (a == b) throw std::invalid_argument("pairing must be fixed-point-free");
        if (a >= H || b >= H) throw std::invalid_argument("pairing out of range");
        paired[a]++;
        paired[b]++;
    }
    for (std::size_t h = 0; h < H; ++h)
        if (paired[h] != 1) throw std::invalid_argument("pairing must be a perfect matching");
    for (const auto& v : vertices)
        if (v.genus < 0) throw std::invalid_argument("negative genus");
}

namespace {

struct UnionFind {
    std::vector<std::size_t> up;
    explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    std::size_t find(std::size_t x) { return up[x] == x ? x : up[x] = find(up[x]); }
    void unite(std::size_t a, std::size_t b) { up[find(a)] = find(b); }
};

}  // namespace

Int DecoratedGraph::cycle_rank() const {
    UnionFind uf(vertices.size());
    for (const auto& [a, b] : pairing) uf.unite(half_edge_vertex[a], half_edge_vertex[b]);
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < vertices.size(); ++v) roots.insert(uf.find(v));
    return Int(edge_count()) - Int(vertex_count()) + Int(roots.size());
}

Int DecoratedGraph::total_genus() const {
    Int g = cycle_rank();
    for (const auto& v : vertices) g += v.genus;
    return g;
}

namespace {

// Vertex colors: decoration + degree, refined twice by neighbor multisets.
std::vector<std::size_t> vertex_colors(const DecoratedGraph& g) {
    std::size_t n = g.vertex_count();
    std::vector<std::string> tag(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t loops = 0;
        for (const auto& [a, b] : g.pairing)
            if (g.half_edge_vertex[a] == v && g.half_edge_vertex[b] == v) ++loops;
        tag[v] = g.vertices[v].genus.str() + "|" + (g.vertices[v].area_zero ? "z" : "p") + "|" +
                 std::to_string(g.cyclic[v].size()) + "|" + std::to_string(loops);
    }
    for (int round = 0; round < 2; ++round) {
        std::vector<std::string> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::string> nb;
            for (std::size_t h : g.cyclic[v]) nb.push_back(tag[g.half_edge_vertex[g.partner(h)]]);
            std::sort(nb.begin(), nb.end());
            next[v] = tag[v] + "/";
            for (const auto& s : nb) next[v] += s + ";";
        }
        tag = next;
    }
    std::vector<std::string> sorted = tag;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> color(n);
    for (std::size_t v = 0; v < n; ++v)
        color[v] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), tag[v]) - sorted.begin());
    return color;
}

std::string serialize_labeled(const DecoratedGraph& g, const std::vector<std::size_t>& order,
                              const std::vector<std::size_t>& rot,
                              std::vector<std::size_t>& half_edge_map) {
    // order[k] = old vertex placed at position k; rot[v] = rotation offset of
    // the cyclic order at old vertex v.
    std::size_t H = g.half_edge_count();
    half_edge_map.assign(H, 0);
    std::size_t next_id = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& cyc = g.cyclic[order[k]];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            half_edge_map[cyc[(i + rot[order[k]]) % cyc.size()]] = next_id++;
    }
    std::ostringstream out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& v = g.vertices[order[k]];
        out << 'V' << v.genus.str() << (v.area_zero ? 'z' : 'p') << g.cyclic[order[k]].size() << ' ';
    }
    std::vector<std::size_t> partner_new(H);
    for (const auto& [a, b] : g.pairing) {
        partner_new[half_edge_map[a]] = half_edge_map[b];
        partner_new[half_edge_map[b]] = half_edge_map[a];
    }
    for (std::size_t h = 0; h < H; ++h) out << partner_new[h] << ',';
    return out.str();
}

void orderings_rec(const std::vector<std::vector<std::size_t>>& classes, std::size_t idx,
                   std::vector<std::size_t>& acc, std::vector<std::vector<std::size_t>>& out) {
    if (idx == classes.size()) {
        out.push_back(acc);
        return;
    }
    std::vector<std::size_t> cls = classes[idx];
    std::sort(cls.begin(), cls.end());
    do {
        std::size_t base = acc.size();
        acc.insert(acc.end(), cls.begin(), cls.end());
        orderings_rec(classes, idx + 1, acc, out);
        acc.resize(base);
    } while (std::next_permutation(cls.begin(), cls.end()));
}

}  // namespace

CanonicalForm canonical_form(const DecoratedGraph& g) {
    g.validate();
    std::size_t n = g.vertex_count();
    auto color = vertex_colors(g);
    std::size_t nclasses = n == 0 ? 0 : *std::max_element(color.begin(), color.end()) + 1;
    std::vector<std::vector<std::size_t>> classes(nclasses);
    for (std::size_t v = 0; v < n; ++v) classes[color[v]].push_back(v);
    std::vector<std::vector<std::size_t>> orderings;
    std::vector<std::size_t> acc;
    orderings_rec(classes, 0, acc, orderings);

    CanonicalForm best;
    std::vector<std::size_t> rot(n, 0);
    for (const auto& order : orderings) {
        // iterate over all rotation combinations
        std::fill(rot.begin(), rot.end(), 0);
        while (true) {
            std::vector<std::size_t> hmap;
            std::string key = serialize_labeled(g, order, rot, hmap);
            if (best.key.empty() || key < best.key) {
                best.key = key;
                best.isos.clear();
            }
            if (key == best.key) {
                GraphIso iso;
                iso.vertex_map.assign(n, 0);
                for (std::size_t k = 0; k < order.size(); ++k) iso.vertex_map[order[k]] = k;
                iso.half_edge_map = hmap;
                best.isos.push_back(std::move(iso));
            }
            // advance rotations (odometer)
            std::size_t v = 0;
            for (; v < n; ++v) {
                if (g.cyclic[v].empty()) continue;
                if (++rot[v] < g.cyclic[v].size()) break;
                rot[v] = 0;
            }
            if (v == n) break;
        }
    }
    if (n == 0) best.isos.push_back(GraphIso{});
    return best;
}

bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b) {
    return canonical_form(a).key == canonical_form(b).key;
}

Int aut_order(const DecoratedGraph& g) {
    // the canonical isos form a torsor under Aut(G)
    return Int(canonical_form(g).isos.size());
}

Contraction contract(const DecoratedGraph& g, std::size_t edge) {
    g.validate();
    if (edge >= g.pairing.size()) throw std::invalid_argument("not an edge");
    auto [h0, h1] = g.pairing[edge];
    std::size_t v0 = g.half_edge_vertex[h0];
    std::size_t v1 = g.half_edge_vertex[h1];
    bool loop = v0 == v1;

    Contraction res;
    res.was_loop = loop;
    std::size_t H = g.half_edge_count();

    // survivors keep their relative id order
    res.half_edge_map.assign(H, std::nullopt);
    std::size_t next_id = 0;
    for (std::size_t h = 0; h < H; ++h)
        if (h != h0 && h != h1) res.half_edge_map[h] = next_id++;

    // merged vertex placed at min(v0, v1); vertices after the removed one shift
    std::size_t keep = std::min(v0, v1);
    std::size_t drop = std::max(v0, v1);
    auto new_vertex = [&](std::size_t v) -> std::size_t {
        if (loop) return v;
        if (v == v0 || v == v1) return keep;
        return v > drop ? v - 1 : v;
    };
    res.merged_vertex = new_vertex(v0);
    res.vertex_map.resize(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) res.vertex_map[v] = new_vertex(v);

    DecoratedGraph out;
    std::size_t new_n = loop ? g.vertex_count() : g.vertex_count() - 1;
    out.vertices.resize(new_n);
    out.cyclic.resize(new_n);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!loop && v == drop) continue;
        std::size_t nv = new_vertex(v);
        out.vertices[nv] = g.vertices[v];
    }
    if (loop) {
        out.vertices[res.merged_vertex].genus += 1;
    } else {
        out.vertices[keep].genus = g.vertices[v0].genus + g.vertices[v1].genus;
        out.vertices[keep].area_zero = g.vertices[v0].area_zero && g.vertices[v1].area_zero;
    }

    // successor walk through the removed pair; defines the spliced cyclic
    // order at the merged vertex
    auto old_next = [&](std::size_t h) {
        const auto& cyc = g.cyclic[g.half_edge_vertex[h]];
        std::size_t i = 0;
        while (cyc[i] != h) ++i;
        return cyc[(i + 1) % cyc.size()];
    };
    auto glued_next = [&](std::size_t h) {
        std::size_t cur = old_next(h);
        int guard = 0;
        while (cur == h0 || cur == h1) {
            std::size_t other = (cur == h0) ? h1 : h0;
            cur = old_next(other);
            if (++guard > 4) throw std::logic_error("splice walk did not terminate");
        }
        return cur;
    };

    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (v == v0 || v == v1) continue;
        std::size_t nv = new_vertex(v);
        for (std::size_t h : g.cyclic[v]) out.cyclic[nv].push_back(*res.half_edge_map[h]);
    }
    {
        std::vector<std::size_t> merged_old;
        for (std::size_t h : g.cyclic[v0])
            if (h != h0 && h != h1) merged_old.push_back(h);
        if (!loop)
            for (std::size_t h : g.cyclic[v1])
                if (h != h0 && h != h1) merged_old.push_back(h);
        std::sort(merged_old.begin(), merged_old.end());
        std::set<std::size_t> unused(merged_old.begin(), merged_old.end());
        auto& cyc = out.cyclic[res.merged_vertex];
        while (!unused.empty()) {
            std::size_t start = *unused.begin();
            std::size_t cur = start;
            do {
                unused.erase(cur);
                cyc.push_back(*res.half_edge_map[cur]);
                cur = glued_next(cur);
            } while (cur != start && unused.count(cur));
        }
    }

    out.half_edge_vertex.assign(H - 2, 0);
    for (std::size_t nv = 0; nv < out.cyclic.size(); ++nv)
        for (std::size_t h : out.cyclic[nv]) out.half_edge_vertex[h] = nv;
    for (std::size_t e = 0; e < g.pairing.size(); ++e) {
        if (e == edge) continue;
        out.pairing.push_back({*res.half_edge_map[g.pairing[e].first],
                               *res.half_edge_map[g.pairing[e].second]});
    }
    out.validate();
    res.graph = std::move(out);
    return res;
}

std::vector<DecoratedGraph> enumerate_graphs(Int g, std::size_t h, std::size_t max_edges) {
    if (g < 0) throw std::invalid_argument("negative genus");
    if (h == 0 || h > 6 || 2 * max_edges > 12 || g > 6) throw std::invalid_argument("bounds exceeded");
    std::vector<DecoratedGraph> out;
    std::set<std::string> seen;

    std::vector<std::pair<std::size_t, std::size_t>> slots;  // vertex pairs, i <= j
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) slots.push_back({i, j});

    // edge-count distribution over vertex pairs
    std::vector<std::size_t> dist(slots.size(), 0);
    auto emit_for_distribution = [&](std::size_t E) {
        // build half-edges
        DecoratedGraph base;
        base.vertices.resize(h);
        base.cyclic.resize(h);
        std::vector<std::vector<std::size_t>> at_vertex(h);
        std::size_t hid = 0;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            for (std::size_t c = 0; c < dist[s]; ++c) {
                auto [i, j] = slots[s];
                base.half_edge_vertex.push_back(i);
                base.half_edge_vertex.push_back(j);
                base.pairing.push_back({hid, hid + 1});
                at_vertex[i].push_back(hid);
                at_vertex[j].push_back(hid + 1);
                hid += 2;
            }
        }
        UnionFind uf(h);
        for (const auto& [a, b] : base.pairing)
            uf.unite(base.half_edge_vertex[a], base.half_edge_vertex[b]);
        std::set<std::size_t> roots;
        for (std::size_t v = 0; v < h; ++v) roots.insert(uf.find(v));
        Int rank = Int(E) - Int(h) + Int(roots.size());
        if (rank > g) return;
        Int extra = g - rank;

        // all cyclic orders: permutations with the first element fixed
        std::vector<std::vector<std::vector<std::size_t>>> cycle_choices(h);
        for (std::size_t v = 0; v < h; ++v) {
            auto& he = at_vertex[v];
            if (he.empty()) {
                cycle_choices[v].push_back({});
                continue;
            }
            std::vector<std::size_t> rest(he.begin() + 1, he.end());
            std::sort(rest.begin(), rest.end());
            do {
                std::vector<std::size_t> cyc = {he[0]};
                cyc.insert(cyc.end(), rest.begin(), rest.end());
                cycle_choices[v].push_back(cyc);
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
        // genus compositions of `extra` into h parts
        std::vector<std::vector<Int>> genus_choices;
        std::vector<Int> gacc(h, 0);
        auto rec_genus = [&](auto&& self, std::size_t v, Int left) -> void {
            if (v + 1 == h) {
                gacc[v] = left;
                genus_choices.push_back(gacc);
                return;
            }
            for (Int x = 0; x <= left; ++x) {
                gacc[v] = x;
                self(self, v + 1, left - x);
            }
        };
        rec_genus(rec_genus, 0, extra);

        std::vector<std::size_t> pick(h, 0);
        while (true) {
            DecoratedGraph cand = base;
            for (std::size_t v = 0; v < h; ++v) cand.cyclic[v] = cycle_choices[v][pick[v]];
            for (const auto& gen : genus_choices) {
                // zero-area decorations only on disk vertices that touch an edge
                std::vector<std::size_t> flaggable;
                for (std::size_t v = 0; v < h; ++v)
                    if (gen[v] == 0 && !at_vertex[v].empty()) flaggable.push_back(v);
                for (unsigned flags = 0; flags < (1u << flaggable.size()); ++flags) {
                    for (std::size_t v = 0; v < h; ++v) {
                        cand.vertices[v].genus = gen[v];
                        cand.vertices[v].area_zero = false;
                    }
                    for (std::size_t i = 0; i < flaggable.size(); ++i)
                        cand.vertices[flaggable[i]].area_zero = (flags >> i) & 1u;
                    std::string key = canonical_key(cand);
                    if (seen.insert(key).second) out.push_back(cand);
                }
            }
            std::size_t v = 0;
            for (; v < h; ++v) {
                if (++pick[v] < cycle_choices[v].size()) break;
                pick[v] = 0;
            }
            if (v == h) break;
        }
    };

    for (std::size_t E = 0; E <= max_edges; ++E) {
        auto rec = [&](auto&& self, std::size_t slot, std::size_t left) -> void {
            if (slot + 1 == slots.size()) {
                dist[slot] = left;
                emit_for_distribution(E);
                return;
            }
            for (std::size_t c = 0; c <= left; ++c) {
                dist[slot] = c;
                self(self, slot + 1, left - c);
            }
        };
        if (slots.size() == 1) {
            dist[0] = E;
            emit_for_distribution(E);
        } else {
            rec(rec, 0, E);
        }
    }
    return out;
}

TData canonical_tdata(const DecoratedGraph& g, const TData& t) {
    TData out;
    for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
        auto it = t.t.find(h);
        out.t[h] = it == t.t.end() ? Rat(0) : it->second;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.vertices[v].area_zero || g.cyclic[v].empty()) continue;
        Rat shift = out.t[g.cyclic[v].front()];
        for (std::size_t h : g.cyclic[v]) out.t[h] -= shift;
    }
    return out;
}

TData contract_tdata(const DecoratedGraph& g, std::size_t into_half_edge, const TData& t,
                     const Contraction& result) {
    std::size_t e0 = into_half_edge;
    std::size_t e1 = g.partner(e0);
    std::size_t v0 = g.half_edge_vertex[e1];
    if (!g.vertices[v0].area_zero)
        throw std::invalid_argument("contract_tdata: target vertex is not zero-area");
    TData full = canonical_tdata(g, t);
    Rat delta = full.t.at(e0) - full.t.at(e1);
    TData out;
    for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
        if (!result.half_edge_map[h]) continue;
        Rat val = full.t.at(h);
        if (g.half_edge_vertex[h] == v0 && h != e1) val += delta;
        out.t[*result.half_edge_map[h]] = val;
    }
    return canonical_tdata(result.graph, out);
}

std::string graph_to_json(const DecoratedGraph& g) {
    g.validate();
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        j["vertices"].push_back({{"id", v},
                                 {"genus", static_cast<long long>(g.vertices[v].genus)},
                                 {"area_zero", g.vertices[v].area_zero}});
    j["half_edges"] = nlohmann::json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto& cyc = g.cyclic[v];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            j["half_edges"].push_back(
                {{"id", cyc[i]}, {"vertex", v}, {"next_in_cycle", cyc[(i + 1) % cyc.size()]}});
    }
    j["pairing"] = nlohmann::json::array();
    for (const auto& [a, b] : g.pairing) j["pairing"].push_back({a, b});
    return j.dump();
}

DecoratedGraph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DecoratedGraph g;
    g.vertices.resize(j.at("vertices").size());
    g.cyclic.resize(g.vertices.size());
    for (const auto& v : j.at("vertices")) {
        std::size_t id = v.at("id").get<std::size_t>();
        if (id >= g.vertices.size()) throw std::invalid_argument("vertex id out of range");
        g.vertices[id].genus = Int(v.at("genus").get<long long>());
        g.vertices[id].area_zero = v.at("area_zero").get<bool>();
    }
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> info;  // id -> (vertex, next)
    for (const auto& he : j.at("half_edges"))
        info[he.at("id").get<std::size_t>()] = {he.at("vertex").get<std::size_t>(),
                                                he.at("next_in_cycle").get<std::size_t>()};
    g.half_edge_vertex.assign(info.size(), 0);
    std::map<std::size_t, std::vector<std::size_t>> by_vertex;
    for (const auto& [id, iv] : info) {
        if (id >= info.size()) throw std::invalid_argument("half-edge ids must be 0..H-1");
        g.half_edge_vertex[id] = iv.first;
        by_vertex[iv.first].push_back(id);
    }
    for (auto& [v, ids] : by_vertex) {
        if (v >= g.vertices.size()) throw std::invalid_argument("half-edge vertex out of range");
        std::set<std::size_t> remaining(ids.begin(), ids.end());
        while (!remaining.empty()) {
            std::size_t start = *remaining.begin();
            std::size_t cur = start;
            do {
                if (!remaining.count(cur)) throw std::invalid_argument("broken cyclic order");
                remaining.erase(cur);
                g.cyclic[v].push_back(cur);
                cur = info.at(cur).second;
            } while (cur != start);
        }
    }
    for (const auto& p : j.at("pairing"))
        g.pairing.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
    g.validate();
    return g;
}

}  // namespace framelink

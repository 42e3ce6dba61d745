#include "framelink/chains.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace framelink {

namespace {

// graph in the canonical labeling; every canonical iso lands on the same one
DecoratedGraph apply_canonical(const DecoratedGraph& g, const GraphIso& iso) {
    DecoratedGraph out;
    out.vertices.resize(g.vertex_count());
    out.cyclic.resize(g.vertex_count());
    out.half_edge_vertex.resize(g.half_edge_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.vertices[iso.vertex_map[v]] = g.vertices[v];
    for (std::size_t h = 0; h < g.half_edge_count(); ++h)
        out.half_edge_vertex[iso.half_edge_map[h]] = iso.vertex_map[g.half_edge_vertex[h]];
    // half-edge ids were assigned in traversal order, so each cyclic order is
    // its vertex's ids in increasing order
    for (std::size_t h = 0; h < out.half_edge_vertex.size(); ++h)
        out.cyclic[out.half_edge_vertex[h]].push_back(h);
    for (const auto& [a, b] : g.pairing) {
        std::size_t x = iso.half_edge_map[a], y = iso.half_edge_map[b];
        out.pairing.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(out.pairing.begin(), out.pairing.end());
    return out;
}

ModelCell map_cell(const ModelCell& c, const GraphIso& iso) {
    ModelCell out;
    out.sign = c.sign;
    for (const auto& [h, t] : c.offsets) out.offsets[iso.half_edge_map[h]] = t;
    for (const auto& [h, n] : c.arc_labels) out.arc_labels[iso.half_edge_map[h]] = n;
    for (const auto& [v, n] : c.winding_labels) out.winding_labels[iso.vertex_map[v]] = n;
    for (const auto& [v, r] : c.radii) out.radii[iso.vertex_map[v]] = r;
    return out;
}

std::string serialize_cell(const DecoratedGraph& canon, const ModelCell& c) {
    TData t;
    t.t = c.offsets;
    TData ct = canonical_tdata(canon, t);
    std::ostringstream out;
    out << "t:";
    for (std::size_t h = 0; h < canon.half_edge_count(); ++h)
        out << format_rational(ct.t.count(h) ? ct.t.at(h) : Rat(0)) << ',';
    out << " a:";
    for (std::size_t h = 0; h < canon.half_edge_count(); ++h) {
        auto it = c.arc_labels.find(h);
        out << (it == c.arc_labels.end() ? Int(0) : it->second).str() << ',';
    }
    out << " n:";
    for (std::size_t v = 0; v < canon.vertex_count(); ++v)
        if (canon.cyclic[v].empty()) {
            auto it = c.winding_labels.find(v);
            out << v << '=' << (it == c.winding_labels.end() ? Int(0) : it->second).str() << ',';
        }
    out << " r:";
    for (std::size_t v = 0; v < canon.vertex_count(); ++v)
        if (!canon.vertices[v].area_zero) {
            auto it = c.radii.find(v);
            out << v << '=' << (it == c.radii.end() ? std::string("_") : format_rational(it->second))
                << ',';
        }
    return out.str();
}

}  // namespace

std::pair<std::string, int> cell_key(const DecoratedGraph& g, const ModelCell& c) {
    CanonicalForm cf = canonical_form(g);
    DecoratedGraph canon = apply_canonical(g, cf.isos.front());
    std::string best;
    for (const auto& iso : cf.isos) {
        std::string s = serialize_cell(canon, map_cell(c, iso));
        if (best.empty() || s < best) best = s;
    }
    return {cf.key + "|" + best, c.sign};
}

void FormalChain::add(const std::string& key, const Rat& coeff) {
    Rat& v = terms[key];
    v += coeff;
    if (v == 0) terms.erase(key);
}

void FormalChain::add(const FormalChain& other) {
    for (const auto& [k, v] : other.terms) add(k, v);
}

bool FormalChain::is_zero() const { return terms.empty(); }

namespace {

Rat cell_offset(const TData& canon, std::size_t h) {
    auto it = canon.t.find(h);
    return it == canon.t.end() ? Rat(0) : it->second;
}

// h is the pinned (canonically zero) base half-edge of a zero-area vertex
bool pinned_base(const DecoratedGraph& g, std::size_t h) {
    std::size_t v = g.half_edge_vertex[h];
    return g.vertices[v].area_zero && g.cyclic[v].front() == h;
}

// matched <=> the cell meets the lifted diagonal of the edge.  The relative
// phase of two distinct zero-area families is not recorded by t-data, so an
// edge joining the two base half-edges is off-diagonal by convention.
bool edge_matched(const DecoratedGraph& g, const ModelCell& c, std::size_t edge,
                  bool* nontransverse = nullptr) {
    auto [h0, h1] = g.pairing[edge];
    if (pinned_base(g, h0) && pinned_base(g, h1)) return false;
    TData t;
    t.t = c.offsets;
    TData ct = canonical_tdata(g, t);
    bool offsets_equal = cell_offset(ct, h0) == cell_offset(ct, h1);
    std::size_t v0 = g.half_edge_vertex[h0], v1 = g.half_edge_vertex[h1];
    bool both_positive = !g.vertices[v0].area_zero && !g.vertices[v1].area_zero;
    if (both_positive) {
        Rat r0 = c.radii.count(v0) ? c.radii.at(v0) : Rat(0);
        Rat r1 = c.radii.count(v1) ? c.radii.at(v1) : Rat(0);
        if (r0 != r1) return false;  // disjoint tori
        if (offsets_equal) {
            // equal tori: not a transverse diagonal crossing
            if (nontransverse) *nontransverse = true;
            return true;
        }
        return false;
    }
    return offsets_equal;
}

Int removed_arc_sum(const DecoratedGraph& g, const ModelCell& c, std::size_t h0, std::size_t h1) {
    Int s = 0;
    for (std::size_t h : {h0, h1}) {
        auto it = c.arc_labels.find(h);
        if (it != c.arc_labels.end()) s += it->second;
    }
    return s;
}

}  // namespace

BoundaryResult diagonal_boundary(const GraphChain& w, std::size_t edge) {
    const DecoratedGraph& g = w.graph;
    g.validate();
    if (edge >= g.edge_count()) throw std::invalid_argument("not an edge");
    auto [h0, h1] = g.pairing[edge];
    std::size_t v0 = g.half_edge_vertex[h0], v1 = g.half_edge_vertex[h1];

    Contraction c = contract(g, edge);
    BoundaryResult res;
    res.chain.graph = c.graph;
    if (g.cyclic[v0].size() == 1 || g.cyclic[v1].size() == 1) {
        std::ostringstream note;
        note << "valence-one contraction at edge " << edge;
        res.notes.push_back(note.str());
    }

    // walk over the removed pair; mirrors the cyclic splice in contract()
    auto old_next = [&](std::size_t h) {
        const auto& cyc = g.cyclic[g.half_edge_vertex[h]];
        std::size_t i = 0;
        while (cyc[i] != h) ++i;
        return cyc[(i + 1) % cyc.size()];
    };

    for (const auto& [coeff, cell] : w.cells) {
        bool nontransverse = false;
        if (!edge_matched(g, cell, edge, &nontransverse)) continue;
        if (nontransverse) {
            auto [key, sgn] = cell_key(g, cell);
            (void)sgn;
            std::ostringstream msg;
            msg << "non-transverse diagonal at edge " << edge;
            throw ReductionObstruction(msg.str(), canonical_key(g), key);
        }

        ModelCell out;
        out.sign = cell.sign;

        // offsets via the t-data pushforward; the zero-area end plays v0
        std::size_t into = g.vertices[v1].area_zero ? h0 : h1;
        TData t;
        t.t = cell.offsets;
        out.offsets = contract_tdata(g, into, t, c).t;

        // arc labels: survivors away from the merge copy over; at the merged
        // vertex the walk through the removed pair accumulates labels
        auto label = [&](std::size_t h) {
            auto it = cell.arc_labels.find(h);
            return it == cell.arc_labels.end() ? Int(0) : it->second;
        };
        for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
            if (!c.half_edge_map[h]) continue;
            std::size_t vh = g.half_edge_vertex[h];
            if (vh != v0 && vh != v1) {
                out.arc_labels[*c.half_edge_map[h]] = label(h);
                continue;
            }
            Int total = label(h);
            std::size_t cur = old_next(h);
            int guard = 0;
            while (cur == h0 || cur == h1) {
                std::size_t other = (cur == h0) ? h1 : h0;
                total += label(other);
                cur = old_next(other);
                if (++guard > 4) throw std::logic_error("splice walk did not terminate");
            }
            out.arc_labels[*c.half_edge_map[h]] = total;
        }
        for (const auto& [v, n] : cell.winding_labels) out.winding_labels[c.vertex_map[v]] = n;
        if (c.graph.cyclic[c.merged_vertex].empty())
            out.winding_labels[c.merged_vertex] = removed_arc_sum(g, cell, h0, h1);
        for (const auto& [v, r] : cell.radii) {
            std::size_t nv = c.vertex_map[v];
            if (!c.graph.vertices[nv].area_zero) out.radii[nv] = r;
        }
        res.chain.cells.push_back({coeff, out});
    }
    return res;
}

SystemReport check_system(const ChainSystem& s) {
    SystemReport report;
    // boundary contributions grouped by the contracted graph's canonical key
    std::map<std::string, FormalChain> sums;
    for (const auto& [key, chain] : s.graphs) {
        for (std::size_t e = 0; e < chain.graph.edge_count(); ++e) {
            BoundaryResult b;
            try {
                b = diagonal_boundary(chain, e);
            } catch (const ReductionObstruction& obs) {
                report.violations.push_back({key, {{obs.cell, Rat(0)}}});
                report.notes.push_back(key + ": " + obs.what());
                continue;
            }
            for (const auto& n : b.notes) report.notes.push_back(key + ": " + n);
            if (b.chain.cells.empty()) continue;
            std::string target = canonical_key(b.chain.graph);
            FormalChain& acc = sums[target];
            for (const auto& [coeff, cell] : b.chain.cells) {
                auto [ck, sgn] = cell_key(b.chain.graph, cell);
                acc.add(ck, coeff * sgn);
            }
        }
    }
    for (const auto& [key, chain] : s.graphs) {
        auto it = sums.find(key);
        if (it == sums.end() || it->second.is_zero()) continue;
        report.violations.push_back({key, it->second.terms});
    }
    // boundaries landing outside the recorded system are violations too
    for (const auto& [target, acc] : sums) {
        if (s.graphs.count(target) || acc.is_zero()) continue;
        report.violations.push_back({target, acc.terms});
    }
    return report;
}

namespace {

Rat default_offset(std::size_t h) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    if (h >= sizeof(primes) / sizeof(primes[0])) throw std::invalid_argument("bounds exceeded");
    return Rat(1, primes[h]);
}

}  // namespace

ChainSystem build_unlinked(const Bounds& bounds, const std::map<std::string, TData>& t,
                           const FrameInt& frame,
                           const std::map<std::string, std::map<std::vector<Int>, Rat>>&
                               edgeless_coefficients,
                           const std::string& area_key) {
    ChainSystem s;
    s.bounds = bounds;
    s.frame = frame;
    s.area_key = area_key;
    for (Int g = 0; g <= bounds.genus; ++g) {
        for (std::size_t h = 1; h <= bounds.boundaries; ++h) {
            for (const DecoratedGraph& graph : enumerate_graphs(g, h, bounds.max_edges)) {
                std::string key = canonical_key(graph);
                GraphChain chain;
                chain.graph = graph;
                if (graph.edge_count() == 0) {
                    auto it = edgeless_coefficients.find(key);
                    if (it != edgeless_coefficients.end()) {
                        CanonicalForm cf = canonical_form(graph);
                        const GraphIso& iso = cf.isos.front();
                        for (const auto& [tuple, coeff] : it->second) {
                            if (tuple.size() != graph.vertex_count())
                                throw std::invalid_argument("winding tuple arity mismatch");
                            ModelCell cell;
                            for (std::size_t v = 0; v < graph.vertex_count(); ++v)
                                cell.winding_labels[v] = tuple[iso.vertex_map[v]];
                            chain.cells.push_back({coeff, cell});
                        }
                    }
                } else {
                    ModelCell cell;
                    auto it = t.find(key);
                    for (std::size_t h2 = 0; h2 < graph.half_edge_count(); ++h2) {
                        if (it != t.end() && it->second.t.count(h2))
                            cell.offsets[h2] = it->second.t.at(h2);
                        else
                            cell.offsets[h2] = default_offset(h2);
                    }
                    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
                        if (graph.cyclic[v].empty()) {
                            cell.winding_labels[v] = 0;
                            continue;
                        }
                        if (!graph.vertices[v].area_zero) {
                            cell.radii[v] = Rat(v + 1);
                            cell.arc_labels[graph.cyclic[v][0]] = 1;  // reference class f
                        }
                        for (std::size_t h2 : graph.cyclic[v])
                            if (!cell.arc_labels.count(h2)) cell.arc_labels[h2] = 0;
                    }
                    for (std::size_t e = 0; e < graph.edge_count(); ++e)
                        if (edge_matched(graph, cell, e))
                            throw std::invalid_argument("invalid t-data: matched offsets at edge " +
                                                        std::to_string(e));
                    chain.cells.push_back({1, cell});
                }
                s.graphs[key] = std::move(chain);
            }
        }
    }
    return s;
}

ReduceResult reduce(const ChainSystem& s, const FrameInt& frame) {
    SystemReport rep = check_system(s);
    if (!rep.ok()) throw std::invalid_argument("system fails the boundary identity");
    ReduceResult res;
    res.notes = rep.notes;

    // linking factors for the evaluated multipliers: fiber representatives
    Rat pair_factor(frame.p);
    Rat self_factor(frame.p);

    // descending edge count
    std::vector<const GraphChain*> order;
    for (const auto& [key, chain] : s.graphs) order.push_back(&chain);
    std::sort(order.begin(), order.end(), [](const GraphChain* a, const GraphChain* b) {
        return a->graph.edge_count() > b->graph.edge_count();
    });

    bool zero_winding_seen = false;
    for (const GraphChain* chain : order) {
        const DecoratedGraph& g = chain->graph;
        std::string key = canonical_key(g);
        // merge identical cells
        std::map<std::string, std::pair<Rat, const ModelCell*>> merged;
        for (const auto& [coeff, cell] : chain->cells) {
            auto [ck, sgn] = cell_key(g, cell);
            auto& slot = merged[ck];
            slot.first += coeff * sgn;
            slot.second = &cell;
        }
        if (g.edge_count() == 0) {
            for (const auto& [ck, slot] : merged) {
                if (slot.first == 0) continue;
                // winding tuple in canonical vertex order: minimize over isos
                CanonicalForm cf = canonical_form(g);
                std::vector<Int> best;
                for (const auto& iso : cf.isos) {
                    std::vector<Int> tup(g.vertex_count(), 0);
                    for (const auto& [v, n] : slot.second->winding_labels) tup[iso.vertex_map[v]] = n;
                    if (best.empty() || tup < best) best = tup;
                }
                if (best.empty()) best.assign(g.vertex_count(), 0);
                for (const Int& n : best)
                    if (n == 0) zero_winding_seen = true;
                InvariantKey ik{g.total_genus(), g.vertex_count(), best, s.area_key};
                res.invariants[ik] += slot.first * slot.second->sign;
            }
            continue;
        }
        Rat q = 0;
        for (const auto& [ck, slot] : merged) {
            if (slot.first == 0) continue;
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                if (edge_matched(g, *slot.second, e))
                    throw ReductionObstruction("cell not expressible in the model basis", key, ck);
            q += slot.first * slot.second->sign;
        }
        res.multipliers[key] = q;
        Rat eval = q;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            auto [h0, h1] = g.pairing[e];
            bool loop = g.half_edge_vertex[h0] == g.half_edge_vertex[h1];
            eval *= loop ? self_factor : pair_factor;
        }
        res.evaluated[key] = eval;
    }
    if (zero_winding_seen)
        res.notes.push_back(
            "zero-winding index present: boundary-component attribution is ambiguous");
    return res;
}

ReduceResult extract_invariants(const ChainSystem& s, const FrameInt& frame) {
    return reduce(s, frame);
}

Rat generalized_linking(const DecoratedGraph& g,
                        const std::map<std::size_t, std::vector<PLCurve>>& loops,
                        const FrameInt& frame, std::uint64_t seed) {
    g.validate();
    auto loop_at = [&](std::size_t h) -> const PLCurve& {
        std::size_t v = g.half_edge_vertex[h];
        auto it = loops.find(v);
        if (it == loops.end()) throw std::invalid_argument("no loops for vertex");
        std::size_t pos = g.cycle_position(h);
        if (pos >= it->second.size()) throw std::invalid_argument("missing loop for half-edge");
        return it->second[pos];
    };
    Rat product = 1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto [h0, h1] = g.pairing[e];
        const PLCurve& a = loop_at(h0);
        const PLCurve& b = loop_at(h1);
        if (a.vertices == b.vertices)
            product *= Rat(self_link(a, frame, 0, seed));
        else
            product *= Rat(link(a, b, frame, LinkMethod::embedding, seed).value);
    }
    return product / Rat(aut_order(g));
}

}  // namespace framelink

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framelink/rational.hpp"

namespace framelink {

struct VertexDecoration {
    Int genus = 0;
    bool area_zero = false;
    bool operator==(const VertexDecoration&) const = default;
};

// Half-edge structure with a fixed-point-free pairing and a cyclic order of
// the half-edges at each vertex.  Vertices are boundary components; the graph
// genus is the vertex genus total plus the cycle rank.
struct DecoratedGraph {
    std::vector<VertexDecoration> vertices;
    std::vector<std::size_t> half_edge_vertex;       // half-edge id -> vertex id
    std::vector<std::vector<std::size_t>> cyclic;    // per vertex, cyclic sequence of half-edge ids
    std::vector<std::pair<std::size_t, std::size_t>> pairing;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t half_edge_count() const { return half_edge_vertex.size(); }
    std::size_t edge_count() const { return pairing.size(); }

    std::size_t partner(std::size_t h) const;
    std::size_t edge_of(std::size_t h) const;
    // position of h within the cyclic order at its vertex
    std::size_t cycle_position(std::size_t h) const;

    void validate() const;

    Int cycle_rank() const;   // E - V + (number of connected components)
    Int total_genus() const;  // sum of vertex genera + cycle_rank
};

// Vertex relabeling + rotation of each cyclic order; half_edge_map is the
// induced map on half-edge ids.
struct GraphIso {
    std::vector<std::size_t> vertex_map;
    std::vector<std::size_t> half_edge_map;
};

struct CanonicalForm {
    std::string key;
    std::vector<GraphIso> isos;  // all isos from G onto the canonical labeling
};

CanonicalForm canonical_form(const DecoratedGraph& g);
inline std::string canonical_key(const DecoratedGraph& g) { return canonical_form(g).key; }
bool isomorphic(const DecoratedGraph& a, const DecoratedGraph& b);

// Order of the decoration-, pairing- and cyclic-order-preserving automorphism
// group.
Int aut_order(const DecoratedGraph& g);

struct Contraction {
    DecoratedGraph graph;
    std::vector<std::optional<std::size_t>> half_edge_map;  // old id -> new id (removed: nullopt)
    std::vector<std::size_t> vertex_map;                    // old vertex -> new vertex
    std::size_t merged_vertex = 0;
    bool was_loop = false;
};

// G/e: endpoints merged, cyclic orders spliced at the removed pair, genus
// additive; contracting a loop raises the genus by one.
Contraction contract(const DecoratedGraph& g, std::size_t edge);

// All isomorphism classes with h vertices, total genus g and at most
// max_edges edges.  Bounds limited to 12 half-edges.
std::vector<DecoratedGraph> enumerate_graphs(Int g, std::size_t h, std::size_t max_edges);

// Rational offsets on half-edges, stored as the canonical representative of
// the shift equivalence at zero-area vertices (first half-edge in each such
// cyclic order pinned to 0).
struct TData {
    std::map<std::size_t, Rat> t;
    bool operator==(const TData&) const = default;
};

TData canonical_tdata(const DecoratedGraph& g, const TData& t);

// Pushforward of t-data along the contraction of the edge whose far half-edge
// is `into_half_edge` (its partner must sit on a zero-area vertex):
// half-edges leaving the zero-area vertex pick up  - t(partner) + t(into).
TData contract_tdata(const DecoratedGraph& g, std::size_t into_half_edge, const TData& t,
                     const Contraction& result);

std::string graph_to_json(const DecoratedGraph& g);
DecoratedGraph graph_from_json(const std::string& text);

}  // namespace framelink

#pragma once

#include <map>
#include <string>
#include <vector>

#include "framelink/curve.hpp"
#include "framelink/graph.hpp"
#include "framelink/lattice.hpp"
#include "framelink/linking.hpp"

namespace framelink {

// One symbolic product cell: torus families at positive-area vertices (offset
// per half-edge, one radius per vertex), diagonal families at zero-area
// vertices (offsets modulo common shift), integer path labels on the arcs
// between consecutive half-edges, and a single winding label on each vertex
// with no half-edges.
struct ModelCell {
    std::map<std::size_t, Rat> offsets;         // half-edge -> t
    std::map<std::size_t, Int> arc_labels;      // half-edge -> label of the arc it starts
    std::map<std::size_t, Int> winding_labels;  // empty vertex -> label
    std::map<std::size_t, Rat> radii;           // positive-area vertex -> torus radius
    int sign = 1;
};

struct GraphChain {
    DecoratedGraph graph;
    std::vector<std::pair<Rat, ModelCell>> cells;
};

struct Bounds {
    Int genus = 0;
    std::size_t boundaries = 1;
    std::size_t max_edges = 0;
};

struct ChainSystem {
    Bounds bounds;
    FrameInt frame;
    std::string area_key;
    std::map<std::string, GraphChain> graphs;  // canonical graph key -> chain
};

// Labeling-independent cell identifier: minimal serialization over all
// canonical isomorphisms of the graph.  The sign is folded into the returned
// factor, never into the key.
std::pair<std::string, int> cell_key(const DecoratedGraph& g, const ModelCell& c);

// Formal chain with canonical-key accumulation.
struct FormalChain {
    std::map<std::string, Rat> terms;

    void add(const std::string& key, const Rat& coeff);
    void add(const FormalChain& other);
    bool is_zero() const;
};

struct BoundaryResult {
    GraphChain chain;                  // surviving cells on G/e
    std::vector<std::string> notes;    // valence-one contraction flags
};

// Intersection with the lifted diagonal of edge e, pushed to G/e.  A cell
// meets the diagonal iff the canonical offsets at the two ends of e agree
// (and the radii agree when both ends are positive-area tori); a matched
// edge between two positive-area vertices is non-transverse and errors.
BoundaryResult diagonal_boundary(const GraphChain& w, std::size_t edge);

struct SystemReport {
    struct Violation {
        std::string graph_key;
        std::map<std::string, Rat> discrepancy;  // cell key -> coefficient
    };
    std::vector<Violation> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

// Verifies, for every graph in the system, that the diagonal boundaries of
// the one-edge-larger graphs cancel (model cells are cycles, so the required
// total boundary is zero).
SystemReport check_system(const ChainSystem& s);

// The model system: every graph within the bounds carries its unlinked
// product cell (distinct radii per vertex, offsets from t or a generic
// default), and the edgeless graphs carry the given winding 0-chains.
ChainSystem build_unlinked(const Bounds& bounds, const std::map<std::string, TData>& t,
                           const FrameInt& frame,
                           const std::map<std::string, std::map<std::vector<Int>, Rat>>&
                               edgeless_coefficients,
                           const std::string& area_key = "");

struct InvariantKey {
    Int g;
    std::size_t h = 0;
    std::vector<Int> windings;
    std::string area_key;
    friend bool operator==(const InvariantKey& a, const InvariantKey& b) {
        return a.g == b.g && a.h == b.h && a.windings == b.windings && a.area_key == b.area_key;
    }
    friend bool operator<(const InvariantKey& a, const InvariantKey& b) {
        if (a.g != b.g) return a.g < b.g;
        if (a.h != b.h) return a.h < b.h;
        if (a.windings != b.windings) return a.windings < b.windings;
        return a.area_key < b.area_key;
    }
};

struct ReduceResult {
    std::map<std::string, Rat> multipliers;  // positive-edge graphs, model basis
    std::map<std::string, Rat> evaluated;    // multipliers paired with edgewise fiber linking
    std::map<InvariantKey, Rat> invariants;  // edgeless 0-chain coefficients
    std::vector<std::string> notes;
};

// Thrown when a chain cannot be written in the model basis.
struct ReductionObstruction : std::runtime_error {
    std::string graph_key, cell;
    ReductionObstruction(std::string what, std::string gk, std::string ck)
        : std::runtime_error(std::move(what)), graph_key(std::move(gk)), cell(std::move(ck)) {}
};

// Normal form: descending edge count; identical cells merge, matched-offset
// cells must cancel (obstruction otherwise), the surviving model cells give
// the rational multiplier of W_G^unlinked, and edgeless graphs give the
// invariant 0-chains.
ReduceResult reduce(const ChainSystem& s, const FrameInt& frame);

// Coefficients F indexed by (total genus, vertex count, winding tuple in
// canonical vertex order, area key); flags winding-zero indices in notes.
ReduceResult extract_invariants(const ChainSystem& s, const FrameInt& frame);

// Product over edges of the pairwise linking numbers of the attached loops
// (self_link when an edge sees the same loop twice), divided by |Aut(G)|.
Rat generalized_linking(const DecoratedGraph& g,
                        const std::map<std::size_t, std::vector<PLCurve>>& loops,
                        const FrameInt& frame, std::uint64_t seed = kDefaultSeed);

// Scene files: JSON with bounds, frame, per-graph chains and optional loops.
ChainSystem parse_scene(const std::string& text);
std::string emit_scene(const ChainSystem& s);

}  // namespace framelink

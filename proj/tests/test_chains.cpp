#include <doctest.h>

#include <framelink/chains.hpp>

using namespace framelink;

namespace {

// positive valence-one vertex joined to a zero-area valence-one disk
GraphChain matched_pair_chain() {
    GraphChain chain;
    chain.graph.vertices = {{0, false}, {0, true}};
    chain.graph.half_edge_vertex = {0, 1};
    chain.graph.cyclic = {{0}, {1}};
    chain.graph.pairing = {{0, 1}};
    ModelCell a;
    a.offsets = {{0, 0}, {1, 0}};
    a.arc_labels = {{0, 1}, {1, 0}};
    a.radii = {{0, 1}};
    ModelCell b = a;
    b.arc_labels = {{0, 0}, {1, 1}};
    chain.cells.push_back({1, a});
    chain.cells.push_back({-1, b});
    return chain;
}

}  // namespace

TEST_CASE("cell keys are labeling independent") {
    GraphChain chain = matched_pair_chain();
    const DecoratedGraph& g = chain.graph;
    // relabel: swap the two half-edges and vertices
    DecoratedGraph g2;
    g2.vertices = {g.vertices[1], g.vertices[0]};
    g2.half_edge_vertex = {0, 1};
    g2.cyclic = {{0}, {1}};
    g2.pairing = {{1, 0}};
    ModelCell c2;
    c2.offsets = {{1, 0}, {0, 0}};
    c2.arc_labels = {{1, 1}, {0, 0}};
    c2.radii = {{1, 1}};
    CHECK(cell_key(g, chain.cells[0].second).first == cell_key(g2, c2).first);
    CHECK(cell_key(g, chain.cells[0].second).first != cell_key(g, chain.cells[1].second).first);
}

TEST_CASE("diagonal boundary splices matched cells") {
    GraphChain chain = matched_pair_chain();
    BoundaryResult b = diagonal_boundary(chain, 0);
    REQUIRE(b.chain.cells.size() == 2);
    CHECK(b.chain.graph.vertex_count() == 1);
    CHECK(b.chain.graph.edge_count() == 0);
    // both cells land on the empty merged vertex with winding 1
    for (const auto& [coeff, cell] : b.chain.cells) {
        REQUIRE(cell.winding_labels.count(0));
        CHECK(cell.winding_labels.at(0) == 1);
    }
    CHECK(b.chain.cells[0].first + b.chain.cells[1].first == 0);
    // valence-one ends are flagged
    CHECK(!b.notes.empty());
}

TEST_CASE("unmatched offsets or radii kill the boundary") {
    GraphChain chain = matched_pair_chain();
    chain.cells.resize(1);
    chain.cells[0].second.offsets[0] = Rat(1, 3);  // torus offset off the pinned diagonal
    CHECK(diagonal_boundary(chain, 0).chain.cells.empty());

    // distinct radii on a positive-positive edge
    GraphChain pos;
    pos.graph.vertices = {{0, false}, {0, false}};
    pos.graph.half_edge_vertex = {0, 1};
    pos.graph.cyclic = {{0}, {1}};
    pos.graph.pairing = {{0, 1}};
    ModelCell c;
    c.offsets = {{0, Rat(1, 2)}, {1, Rat(1, 2)}};
    c.radii = {{0, 1}, {1, 2}};
    pos.cells.push_back({1, c});
    CHECK(diagonal_boundary(pos, 0).chain.cells.empty());

    // equal tori are non-transverse
    pos.cells[0].second.radii[1] = 1;
    CHECK_THROWS_AS(diagonal_boundary(pos, 0), ReductionObstruction);
}

TEST_CASE("boundaries along disjoint edges commute") {
    // two separate matched components contracted in either order
    GraphChain chain;
    chain.graph.vertices = {{0, false}, {0, true}, {0, false}, {0, true}};
    chain.graph.half_edge_vertex = {0, 1, 2, 3};
    chain.graph.cyclic = {{0}, {1}, {2}, {3}};
    chain.graph.pairing = {{0, 1}, {2, 3}};
    ModelCell c;
    c.offsets = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    c.arc_labels = {{0, 2}, {1, 3}, {2, 5}, {3, 7}};
    c.radii = {{0, 1}, {2, 1}};
    chain.cells.push_back({Rat(1, 2), c});

    BoundaryResult b01 = diagonal_boundary(chain, 0);
    BoundaryResult b0 = diagonal_boundary(b01.chain, 0);
    BoundaryResult b10 = diagonal_boundary(chain, 1);
    BoundaryResult b1 = diagonal_boundary(b10.chain, 0);
    REQUIRE(b0.chain.cells.size() == 1);
    REQUIRE(b1.chain.cells.size() == 1);
    auto k0 = cell_key(b0.chain.graph, b0.chain.cells[0].second);
    auto k1 = cell_key(b1.chain.graph, b1.chain.cells[0].second);
    CHECK(k0 == k1);
    CHECK(b0.chain.cells[0].first == b1.chain.cells[0].first);
    CHECK(b0.chain.cells[0].second.winding_labels.at(0) == 5);
    CHECK(b0.chain.cells[0].second.winding_labels.at(1) == 12);
}

TEST_CASE("unlinked model is a closed system") {
    ChainSystem s = build_unlinked({1, 2, 2}, {}, {0}, {});
    SystemReport rep = check_system(s);
    CHECK(rep.ok());
}

TEST_CASE("corrupted coefficient breaks the identity") {
    ChainSystem s;
    s.bounds = {0, 2, 1};
    GraphChain prime = matched_pair_chain();
    s.graphs[canonical_key(prime.graph)] = prime;
    GraphChain target;
    target.graph.vertices = {{0, false}};
    target.graph.cyclic = {{}};
    s.graphs[canonical_key(target.graph)] = target;
    CHECK(check_system(s).ok());

    ChainSystem bad = s;
    bad.graphs[canonical_key(prime.graph)].cells[0].first = 2;
    SystemReport rep = check_system(bad);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].graph_key == canonical_key(target.graph));
}

TEST_CASE("reduce reads multipliers and invariants") {
    DecoratedGraph edgeless;
    edgeless.vertices = {{0, false}};
    edgeless.cyclic = {{}};
    std::map<std::string, std::map<std::vector<Int>, Rat>> coeffs;
    coeffs[canonical_key(edgeless)] = {{{Int(2)}, Rat(5, 2)}};

    ChainSystem s = build_unlinked({0, 2, 1}, {}, {0}, coeffs);
    ReduceResult r = reduce(s, {0});
    InvariantKey ik{0, 1, {Int(2)}, ""};
    REQUIRE(r.invariants.count(ik));
    CHECK(r.invariants.at(ik) == Rat(5, 2));
    for (const auto& [key, q] : r.multipliers) CHECK(q == 1);
    // orbit frame: evaluated multipliers vanish
    for (const auto& [key, q] : r.evaluated) CHECK(q == 0);
    ReduceResult r3 = reduce(s, {3});
    for (const auto& [key, q] : r3.evaluated) CHECK(q != 0);

    // idempotent / deterministic
    ReduceResult again = reduce(s, {0});
    CHECK(again.invariants == r.invariants);
    CHECK(again.multipliers == r.multipliers);
}

TEST_CASE("invariants do not depend on the t-data") {
    DecoratedGraph edgeless;
    edgeless.vertices = {{0, false}};
    edgeless.cyclic = {{}};
    std::map<std::string, std::map<std::vector<Int>, Rat>> coeffs;
    coeffs[canonical_key(edgeless)] = {{{Int(1)}, Rat(7, 3)}, {{Int(-2)}, Rat(1, 6)}};

    ChainSystem base = build_unlinked({1, 2, 2}, {}, {1}, coeffs);
    ReduceResult r0 = reduce(base, {1});
    for (int variant = 1; variant <= 3; ++variant) {
        std::map<std::string, TData> t;
        for (const auto& [key, chain] : base.graphs) {
            TData td;
            for (std::size_t h = 0; h < chain.graph.half_edge_count(); ++h)
                td.t[h] = Rat(2 * h + 1, 2 * h + 100 + variant);
            t[key] = td;
        }
        ReduceResult r = reduce(build_unlinked({1, 2, 2}, t, {1}, coeffs), {1});
        CHECK(r.invariants == r0.invariants);
    }
}

TEST_CASE("generalized linking") {
    DecoratedGraph edgeless;
    edgeless.vertices = {{0, false}};
    edgeless.cyclic = {{}};
    CHECK(generalized_linking(edgeless, {}, {0}) == 1);

    DecoratedGraph pair;
    pair.vertices = {{0, false}, {0, false}};
    pair.half_edge_vertex = {0, 1};
    pair.cyclic = {{0}, {1}};
    pair.pairing = {{0, 1}};
    std::map<std::size_t, std::vector<PLCurve>> loops;
    loops[0] = {make_fiber(0, 0)};
    loops[1] = {make_fiber(1, 0)};
    CHECK(generalized_linking(pair, loops, {0}) == 0);
    Rat aut = Rat(aut_order(pair));
    for (Int p = -2; p <= 2; ++p)
        CHECK(generalized_linking(pair, loops, {p}) == Rat(p) / aut);
}

TEST_CASE("scene round trip") {
    DecoratedGraph edgeless;
    edgeless.vertices = {{0, false}};
    edgeless.cyclic = {{}};
    std::map<std::string, std::map<std::vector<Int>, Rat>> coeffs;
    coeffs[canonical_key(edgeless)] = {{{Int(2)}, Rat(5, 2)}};
    ChainSystem s = build_unlinked({0, 2, 1}, {}, {2}, coeffs, "A");

    ChainSystem back = parse_scene(emit_scene(s));
    CHECK(back.frame == s.frame);
    CHECK(back.area_key == "A");
    CHECK(back.graphs.size() == s.graphs.size());
    CHECK(reduce(back, {2}).invariants == reduce(s, {2}).invariants);
    CHECK(emit_scene(back) == emit_scene(s));
}

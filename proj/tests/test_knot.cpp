#include <doctest.h>

#include <framelink/knot.hpp>

using namespace framelink;

TEST_CASE("corpus knots are embedded and closed") {
    CHECK_NOTHROW(make_round_unknot(2).validate());
    CHECK_NOTHROW(make_trefoil().validate());
    FramedKnot open_knot;
    open_knot.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK_THROWS(open_knot.validate());
}

TEST_CASE("concentric planar pushoff has framing zero") {
    FramedKnot k = make_round_unknot(2);
    CHECK(framing_from_pushoff(k, make_round_unknot(3).vertices) == 0);
}

TEST_CASE("pushoff round trip on the corpus") {
    for (const FramedKnot& k : {make_round_unknot(2), make_trefoil()}) {
        for (Int f = -2; f <= 2; ++f) {
            std::vector<R3> po = pushoff(k, f, Rat(1, 8));
            CHECK(framing_from_pushoff(k, po) == f);
        }
    }
}

TEST_CASE("reversing both orientations keeps the framing") {
    FramedKnot k = make_trefoil();
    std::vector<R3> po = pushoff(k, 2, Rat(1, 8));
    FramedKnot rk = k;
    std::reverse(rk.vertices.begin(), rk.vertices.end());
    std::vector<R3> rpo(po.rbegin(), po.rend());
    CHECK(framing_from_pushoff(rk, rpo) == 2);
}

TEST_CASE("frame correspondence") {
    CHECK(knot_frame_to_L_frame(0) == FrameInt{0});
    for (Int a = -3; a <= 3; ++a)
        for (Int b = -3; b <= 3; ++b) {
            if (a != b) CHECK(knot_frame_to_L_frame(a) != knot_frame_to_L_frame(b));
            CHECK(knot_frame_to_L_frame(a).p - knot_frame_to_L_frame(b).p == a - b);
        }
}

TEST_CASE("conormal cycle") {
    FramedKnot k = make_round_unknot(2);
    std::vector<R3> field(k.vertices.size(), R3{0, 0, 1});
    ConormalCycle c = eta_cycle(k, field);
    REQUIRE(c.eta.size() == k.vertices.size());
    for (std::size_t i = 0; i + 1 < k.vertices.size(); ++i) {
        R3 d = k.vertices[i + 1] - k.vertices[i];
        CHECK(dot(c.eta[i], d) == 0);
        CHECK(dot(c.eta[i], field[i]) == 0);
        CHECK_FALSE(c.eta[i] == (R3{0, 0, 0}));
    }
    std::vector<R3> flipped(k.vertices.size(), R3{0, 0, -1});
    ConormalCycle cf = eta_cycle(k, flipped);
    for (std::size_t i = 0; i < c.eta.size(); ++i) CHECK(cf.eta[i] == c.eta[i] * Rat(-1));

    // tangent field rejected
    std::vector<R3> tangent(k.vertices.size());
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
        std::size_t e = (i + 1 < k.vertices.size()) ? i : 0;
        tangent[i] = k.vertices[e + 1] - k.vertices[e];
    }
    CHECK_THROWS(eta_cycle(k, tangent));
}

TEST_CASE("knot files") {
    FramedKnot k = make_trefoil();
    k.framing = 1;
    FramedKnot back = parse_knot(emit_knot(k));
    CHECK(back.vertices == k.vertices);
    REQUIRE(back.framing);
    CHECK(*back.framing == 1);

    // pushoff block: measured framing wins, mismatching header errors
    FramedKnot u = make_round_unknot(2);
    u.pushoff_curve = make_round_unknot(3).vertices;
    FramedKnot pu = parse_knot(emit_knot(u));
    REQUIRE(pu.framing);
    CHECK(*pu.framing == 0);
    u.framing = 5;
    CHECK_THROWS(parse_knot(emit_knot(u)));
    CHECK_THROWS(parse_knot("0 0 0\n1 0 0\n0 1 0\n"));
}

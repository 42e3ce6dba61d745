#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <framelink/chains.hpp>
#include <framelink/compactify.hpp>
#include <framelink/knot.hpp>
#include <framelink/linking.hpp>

namespace py = pybind11;
using namespace framelink;

namespace {

LatticeClass to_class(const std::pair<long long, long long>& p) {
    return {Int(p.first), Int(p.second)};
}

}  // namespace

PYBIND11_MODULE(_framelink, m) {
    m.doc() = "frame-dependent linking numbers and chain-system reduction";

    m.def("is_frame", [](std::pair<long long, long long> f, std::pair<long long, long long> v) {
        return is_frame(to_class(f), to_class(v));
    });
    m.def("normalize_frame",
          [](std::pair<long long, long long> f, std::pair<long long, long long> v) {
              return normalize_frame(to_class(f), to_class(v)).p.str();
          });
    m.def("gluing_matrix",
          [](std::pair<long long, long long> f, std::pair<long long, long long> v) {
              UnimodularMatrix a = gluing_matrix(to_class(f), to_class(v));
              return std::vector<std::string>{a.a.str(), a.b.str(), a.c.str(), a.d.str()};
          });
    m.def("caps_off", [](std::pair<long long, long long> c, std::pair<long long, long long> f,
                         std::pair<long long, long long> v) {
        return caps_off(to_class(c), to_class(f), to_class(v));
    });

    m.def("winding", [](const std::string& curve) { return winding(parse_curve(curve)).str(); });
    m.def(
        "link",
        [](const std::string& c1, const std::string& c2, long long p, const std::string& method,
           std::uint64_t seed) {
            LinkMethod lm = LinkMethod::embedding;
            if (method == "chain") lm = LinkMethod::chain;
            if (method == "both") lm = LinkMethod::both;
            return link(parse_curve(c1), parse_curve(c2), {Int(p)}, lm, seed).value.str();
        },
        py::arg("c1"), py::arg("c2"), py::arg("p") = 0, py::arg("method") = "embedding",
        py::arg("seed") = kDefaultSeed);
    m.def(
        "self_link",
        [](const std::string& c, long long p, std::uint64_t seed) {
            return self_link(parse_curve(c), {Int(p)}, 0, seed).str();
        },
        py::arg("c"), py::arg("p") = 0, py::arg("seed") = kDefaultSeed);

    m.def("enumerate_graphs", [](long long g, std::size_t h, std::size_t max_edges) {
        std::vector<std::string> out;
        for (const DecoratedGraph& graph : enumerate_graphs(Int(g), h, max_edges))
            out.push_back(graph_to_json(graph));
        return out;
    });
    m.def("aut_order",
          [](const std::string& graph) { return aut_order(graph_from_json(graph)).str(); });
    m.def("contract", [](const std::string& graph, std::size_t edge) {
        return graph_to_json(contract(graph_from_json(graph), edge).graph);
    });

    m.def("check_scene", [](const std::string& scene) {
        SystemReport rep = check_system(parse_scene(scene));
        return rep.ok();
    });
    m.def("scene_invariants", [](const std::string& scene) {
        ChainSystem s = parse_scene(scene);
        ReduceResult r = extract_invariants(s, s.frame);
        std::map<std::string, std::string> out;
        for (const auto& [key, value] : r.invariants) {
            std::string k = "g=" + key.g.str() + ",h=" + std::to_string(key.h) + ",n=(";
            for (std::size_t i = 0; i < key.windings.size(); ++i)
                k += (i ? "," : "") + key.windings[i].str();
            k += ")";
            out[k] = format_rational(value);
        }
        return out;
    });

    m.def(
        "pushoff_framing",
        [](const std::string& knot, long long k, const std::string& eps, std::uint64_t seed) {
            FramedKnot kn = parse_knot(knot);
            std::vector<R3> po = pushoff(kn, Int(k), require_rational(eps), seed);
            return framing_from_pushoff(kn, po, seed).str();
        },
        py::arg("knot"), py::arg("k"), py::arg("eps") = "1/8", py::arg("seed") = kDefaultSeed);
    m.def("trefoil", [] { return emit_knot(make_trefoil()); });
    m.def("round_unknot", [](long long r) { return emit_knot(make_round_unknot(Rat(r))); });
}

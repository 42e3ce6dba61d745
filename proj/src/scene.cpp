#include <json.hpp>

#include "framelink/chains.hpp"

namespace framelink {

namespace {

using nlohmann::json;

json rat(const Rat& q) { return format_rational(q); }

Rat unrat(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return require_rational(j.get<std::string>());
}

template <typename T>
json index_map(const std::map<std::size_t, T>& m, json (*conv)(const T&)) {
    json out = json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = conv(v);
    return out;
}

json int_json(const Int& n) { return n.str(); }

Int unint(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    return Int(j.get<std::string>());
}

}  // namespace

ChainSystem parse_scene(const std::string& text) {
    json j = json::parse(text);
    ChainSystem s;
    if (j.contains("bounds")) {
        s.bounds.genus = unint(j["bounds"].at("genus"));
        s.bounds.boundaries = j["bounds"].at("boundaries").get<std::size_t>();
        s.bounds.max_edges = j["bounds"].at("max_edges").get<std::size_t>();
    }
    s.frame.p = unint(j.at("frame"));
    if (j.contains("area_key")) s.area_key = j["area_key"].get<std::string>();
    for (const auto& gj : j.at("graphs")) {
        GraphChain chain;
        chain.graph = graph_from_json(gj.at("graph").dump());
        TData defaults;
        if (gj.contains("tdata"))
            for (const auto& [k, v] : gj["tdata"].items()) defaults.t[std::stoul(k)] = unrat(v);
        for (const auto& cj : gj.value("cells", json::array())) {
            ModelCell cell;
            cell.sign = cj.value("sign", 1);
            if (cell.sign != 1 && cell.sign != -1)
                throw std::invalid_argument("cell sign must be +-1");
            cell.offsets = defaults.t;
            if (cj.contains("offsets"))
                for (const auto& [k, v] : cj["offsets"].items())
                    cell.offsets[std::stoul(k)] = unrat(v);
            if (cj.contains("arc_labels"))
                for (const auto& [k, v] : cj["arc_labels"].items())
                    cell.arc_labels[std::stoul(k)] = unint(v);
            if (cj.contains("winding_labels"))
                for (const auto& [k, v] : cj["winding_labels"].items())
                    cell.winding_labels[std::stoul(k)] = unint(v);
            if (cj.contains("radii"))
                for (const auto& [k, v] : cj["radii"].items())
                    cell.radii[std::stoul(k)] = unrat(v);
            chain.cells.push_back({unrat(cj.at("coefficient")), cell});
        }
        s.graphs[canonical_key(chain.graph)] = std::move(chain);
    }
    return s;
}

std::string emit_scene(const ChainSystem& s) {
    json j;
    j["bounds"] = {{"genus", int_json(s.bounds.genus)},
                   {"boundaries", s.bounds.boundaries},
                   {"max_edges", s.bounds.max_edges}};
    j["frame"] = int_json(s.frame.p);
    j["area_key"] = s.area_key;
    j["graphs"] = json::array();
    for (const auto& [key, chain] : s.graphs) {
        json gj;
        gj["graph"] = json::parse(graph_to_json(chain.graph));
        gj["cells"] = json::array();
        for (const auto& [coeff, cell] : chain.cells) {
            json cj;
            cj["coefficient"] = rat(coeff);
            cj["sign"] = cell.sign;
            cj["offsets"] = index_map<Rat>(cell.offsets, rat);
            cj["arc_labels"] = index_map<Int>(cell.arc_labels, int_json);
            cj["winding_labels"] = index_map<Int>(cell.winding_labels, int_json);
            cj["radii"] = index_map<Rat>(cell.radii, rat);
            gj["cells"].push_back(cj);
        }
        j["graphs"].push_back(gj);
    }
    return j.dump(2);
}

}  // namespace framelink

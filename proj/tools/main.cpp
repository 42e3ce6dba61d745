#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <framelink/chains.hpp>
#include <framelink/compactify.hpp>
#include <framelink/knot.hpp>
#include <framelink/linking.hpp>

using namespace framelink;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("FRAMELINK_SEED")) return std::strtoull(s, nullptr, 0);
    return kDefaultSeed;
}

LatticeClass parse_class(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected a class as 'm,w': " + text);
    return {Int(text.substr(0, comma)), Int(text.substr(comma + 1))};
}

json class_json(const LatticeClass& c) { return json::array({c.m.str(), c.w.str()}); }

int run_link(const std::string& path, long long frame, const std::string& method,
             std::uint64_t seed, bool as_json) {
    auto curves = parse_curves(slurp(path));
    if (curves.size() < 2) throw std::invalid_argument("need at least two curves");
    LinkMethod m = LinkMethod::embedding;
    if (method == "chain") m = LinkMethod::chain;
    else if (method == "both") m = LinkMethod::both;
    else if (method != "embedding") throw std::invalid_argument("unknown method " + method);
    FrameInt p{frame};
    std::vector<std::vector<Int>> matrix(curves.size(), std::vector<Int>(curves.size()));
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = 0; j < curves.size(); ++j) {
            if (i == j)
                matrix[i][j] = self_link(curves[i], p, 0, seed);
            else
                matrix[i][j] = link(curves[i], curves[j], p, m, seed).value;
        }
    if (as_json) {
        json out;
        out["frame"] = frame;
        out["matrix"] = json::array();
        for (const auto& row : matrix) {
            json r = json::array();
            for (const Int& v : row) r.push_back(v.str());
            out["matrix"].push_back(r);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& row : matrix) {
            for (std::size_t j = 0; j < row.size(); ++j)
                std::cout << (j ? " " : "") << row[j].str();
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frame-dependent linking numbers and chain-system reduction"};
    app.fallthrough();
    app.require_subcommand(1);
    std::uint64_t seed = env_seed();
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON output");

    auto* link_cmd = app.add_subcommand("link", "pairwise linking matrix of a curve file");
    std::string link_path, method = "embedding";
    long long frame = 0;
    link_cmd->add_option("curves", link_path)->required();
    link_cmd->add_option("--frame", frame);
    link_cmd->add_option("--method", method);
    link_cmd->add_option("--seed", seed);

    auto* frame_cmd = app.add_subcommand("frame", "frame operations");
    auto* frame_check = frame_cmd->add_subcommand("check", "frame recognition + normalization");
    std::string f_text, v_text = "1,0";
    frame_check->add_option("f", f_text)->required();
    frame_check->add_option("v", v_text);

    auto* glue_cmd = app.add_subcommand("glue", "compactification gluing");
    auto* glue_matrix = glue_cmd->add_subcommand("matrix", "gluing matrix A_f");
    std::string gm_f, gm_v = "1,0";
    glue_matrix->add_option("f", gm_f)->required();
    glue_matrix->add_option("v", gm_v);
    auto* glue_class = glue_cmd->add_subcommand("class", "image class and caps-off verdict");
    std::string gc_c, gc_f, gc_v = "1,0";
    glue_class->add_option("c", gc_c)->required();
    glue_class->add_option("f", gc_f)->required();
    glue_class->add_option("v", gc_v);

    auto* graphs_cmd = app.add_subcommand("graphs", "decorated graphs");
    auto* graphs_enum = graphs_cmd->add_subcommand("enumerate", "isomorphism classes in bounds");
    long long eg = 0;
    std::size_t eh = 1, ee = 0;
    graphs_enum->add_option("--genus", eg);
    graphs_enum->add_option("--boundaries", eh);
    graphs_enum->add_option("--max-edges", ee);

    auto* chains_cmd = app.add_subcommand("chains", "chain systems");
    auto* chains_check = chains_cmd->add_subcommand("check", "boundary identity report");
    auto* chains_reduce = chains_cmd->add_subcommand("reduce", "normal form multipliers");
    auto* chains_inv = chains_cmd->add_subcommand("invariants", "edgeless coefficients");
    std::string scene_path;
    for (auto* c : {chains_check, chains_reduce, chains_inv})
        c->add_option("scene", scene_path)->required();

    auto* knot_cmd = app.add_subcommand("knot", "framed knots");
    auto* knot_frame = knot_cmd->add_subcommand("frame", "framing and the matching frame of L");
    std::string knot_path;
    knot_frame->add_option("knot", knot_path)->required();
    auto* knot_push = knot_cmd->add_subcommand("pushoff", "emit a pushoff curve");
    std::string push_path;
    long long push_k = 0;
    std::string push_eps = "1/8";
    knot_push->add_option("knot", push_path)->required();
    knot_push->add_option("-k,--framing", push_k);
    knot_push->add_option("--eps", push_eps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*link_cmd) return run_link(link_path, frame, method, seed, as_json);
        if (*frame_check) {
            LatticeClass f = parse_class(f_text), v = parse_class(v_text);
            bool ok = is_frame(f, v);
            if (as_json) {
                json out;
                out["is_frame"] = ok;
                if (ok) out["p"] = normalize_frame(f, v).p.str();
                std::cout << out.dump(2) << "\n";
            } else if (ok) {
                std::cout << "frame, p = " << normalize_frame(f, v).p.str() << "\n";
            } else {
                std::cout << "not a frame\n";
            }
            return 0;
        }
        if (*glue_matrix) {
            UnimodularMatrix a = gluing_matrix(parse_class(gm_f), parse_class(gm_v));
            if (as_json) {
                json out = {{"a", a.a.str()}, {"b", a.b.str()}, {"c", a.c.str()}, {"d", a.d.str()}};
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "[[" << a.a.str() << "," << a.b.str() << "],[" << a.c.str() << ","
                          << a.d.str() << "]]\n";
            }
            return 0;
        }
        if (*glue_class) {
            LatticeClass c = parse_class(gc_c), f = parse_class(gc_f), v = parse_class(gc_v);
            LatticeClass img = image_class(c, f, v);
            bool caps = caps_off(c, f, v);
            if (as_json) {
                json out = {{"image", class_json(img)}, {"caps_off", caps}};
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "image (" << img.m.str() << "," << img.w.str() << ")"
                          << (caps ? " caps off" : " survives") << "\n";
            }
            return 0;
        }
        if (*graphs_enum) {
            json out = json::array();
            for (const DecoratedGraph& g : enumerate_graphs(Int(eg), eh, ee))
                out.push_back(json::parse(graph_to_json(g)));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*chains_check || *chains_reduce || *chains_inv) {
            ChainSystem s = parse_scene(slurp(scene_path));
            if (*chains_check) {
                SystemReport rep = check_system(s);
                json out;
                out["ok"] = rep.ok();
                out["notes"] = rep.notes;
                out["violations"] = json::array();
                for (const auto& v : rep.violations) {
                    json terms = json::object();
                    for (const auto& [k, c] : v.discrepancy) terms[k] = format_rational(c);
                    out["violations"].push_back({{"graph", v.graph_key}, {"cells", terms}});
                }
                std::cout << out.dump(2) << "\n";
                return rep.ok() ? 0 : 1;
            }
            ReduceResult r = reduce(s, s.frame);
            json out;
            if (*chains_reduce) {
                json mult = json::object(), eval = json::object();
                for (const auto& [k, q] : r.multipliers) mult[k] = format_rational(q);
                for (const auto& [k, q] : r.evaluated) eval[k] = format_rational(q);
                out["multipliers"] = mult;
                out["evaluated"] = eval;
            }
            json inv = json::array();
            for (const auto& [key, value] : r.invariants) {
                json windings = json::array();
                for (const Int& n : key.windings) windings.push_back(n.str());
                inv.push_back({{"genus", key.g.str()},
                               {"boundaries", key.h},
                               {"windings", windings},
                               {"area_key", key.area_key},
                               {"value", format_rational(value)}});
            }
            out["invariants"] = inv;
            out["notes"] = r.notes;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*knot_frame) {
            FramedKnot k = parse_knot(slurp(knot_path));
            if (!k.framing) throw std::invalid_argument("knot file carries no framing");
            json out = {{"framing", k.framing->str()},
                        {"frame_p", knot_frame_to_L_frame(*k.framing).p.str()}};
            if (as_json)
                std::cout << out.dump(2) << "\n";
            else
                std::cout << "framing " << k.framing->str() << ", frame p = "
                          << knot_frame_to_L_frame(*k.framing).p.str() << "\n";
            return 0;
        }
        if (*knot_push) {
            FramedKnot k = parse_knot(slurp(push_path));
            FramedKnot out = k;
            out.framing = Int(push_k);
            out.pushoff_curve = pushoff(k, Int(push_k), require_rational(push_eps), seed);
            std::cout << emit_knot(out);
            return 0;
        }
        throw std::invalid_argument("no subcommand");
    } catch (const DegenerateGeometryError& e) {
        std::cerr << "degenerate geometry: " << e.what() << "\nseed trail:";
        for (auto s : e.seed_trail) std::cerr << " " << s;
        std::cerr << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

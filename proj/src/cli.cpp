#include "sqcat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "sqcat/constructions.hpp"
#include "sqcat/dot.hpp"
#include "sqcat/examples.hpp"
#include "sqcat/interchange.hpp"
#include "sqcat/k0.hpp"

namespace sqcat::cli {

namespace {

using nlohmann::json;

simp::PartialMonoid load_pmonoid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("(file)", "cannot open " + path);
    json j = json::parse(in, nullptr, true);
    simp::PartialMonoid m;
    if (!j.contains("elements") || !j.contains("unit") || !j.contains("products"))
        throw io::ParseError("$", "pmonoid file needs elements, unit, products");
    for (const auto& e : j["elements"]) m.elements.push_back(e.get<std::string>());
    m.unit = m.index_of(j["unit"].get<std::string>());
    if (m.unit < 0) throw io::ParseError("$.unit", "unknown element");
    for (const auto& t : j["products"]) {
        int a = m.index_of(t[0].get<std::string>());
        int b = m.index_of(t[1].get<std::string>());
        int c = m.index_of(t[2].get<std::string>());
        if (a < 0 || b < 0 || c < 0) throw io::ParseError("$.products", "unknown element");
        m.product[{a, b}] = c;
    }
    return m;
}

ex::GraphData load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("(file)", "cannot open " + path);
    json j = json::parse(in, nullptr, true);
    ex::GraphData g;
    for (const auto& v : j["vertices"]) g.vertices.push_back(v.get<std::string>());
    auto vidx = [&](const std::string& n) {
        for (size_t i = 0; i < g.vertices.size(); ++i)
            if (g.vertices[i] == n) return static_cast<int>(i);
        throw io::ParseError("$.edges", "unknown vertex " + n);
    };
    for (const auto& e : j["edges"])
        g.edges.emplace_back(vidx(e[0].get<std::string>()), vidx(e[1].get<std::string>()));
    return g;
}

simp::TruncSSet load_tsset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("(file)", "cannot open " + path);
    json j = json::parse(in, nullptr, true);
    simp::TruncSSet x;
    x.bound = j["bound"].get<int>();
    for (const auto& lvl : j["levels"]) {
        std::vector<std::string> ids;
        for (const auto& s : lvl) ids.push_back(s.get<std::string>());
        x.simplices.push_back(ids);
    }
    x.faces.resize(x.bound + 1);
    x.degeneracies.resize(x.bound + 1);
    for (int n = 1; n <= x.bound; ++n)
        for (const auto& f : j["faces"][n - 1])
            x.faces[n].push_back(f.get<std::vector<int>>());
    for (int n = 0; n < x.bound; ++n)
        for (const auto& s : j["degeneracies"][n])
            x.degeneracies[n].push_back(s.get<std::vector<int>>());
    return x;
}

struct Input {
    dbl::SquaresCat cat;
    std::optional<dbl::CompletionData> comp;
};

Input resolve_input(const std::string& builder, const std::string& file) {
    Input in;
    if (!builder.empty()) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : builder) {
            if (c == ':') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        parts.push_back(cur);
        const std::string& kind = parts[0];
        if (kind == "finset") {
            if (parts.size() != 2) throw io::ParseError("--builder", "usage finset:N");
            auto b = ex::finset_squares(std::stoi(parts[1]));
            in.cat = b.cat;
            in.comp = b.comp;
        } else if (kind == "pmonoid") {
            if (parts.size() != 2) throw io::ParseError("--builder", "usage pmonoid:FILE");
            in.cat = ex::partial_monoid_squares(load_pmonoid(parts[1]));
        } else if (kind == "graph") {
            if (parts.size() != 3) throw io::ParseError("--builder", "usage graph:V:ARG");
            int variant = std::stoi(parts[1]);
            if (variant == 1)
                in.cat = ex::graph_squares(load_graph(parts[2]));
            else
                in.cat = ex::graph_squares(variant, std::stoi(parts[2]));
        } else if (kind == "intervals") {
            if (parts.size() != 3) throw io::ParseError("--builder", "usage intervals:q:L");
            auto b = ex::interval_polytopes(std::stoi(parts[1]), std::stoi(parts[2]));
            in.cat = b.cat;
            in.comp = b.comp;
        } else if (kind == "path") {
            if (parts.size() != 2) throw io::ParseError("--builder", "usage path:FILE");
            in.cat = ex::path_double_category(load_tsset(parts[1]));
        } else {
            throw io::ParseError("--builder", "unknown builder " + kind);
        }
        return in;
    }
    if (file.empty()) throw io::ParseError("(input)", "need an input file or --builder");
    auto doc = io::load_squares_cat(file);
    in.cat = doc.cat;
    in.comp = doc.completions;
    return in;
}

dbl::CompletionData completions_or_synthesized(const Input& in) {
    if (in.comp) return *in.comp;
    return dbl::synthesize_completion_data(in.cat);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite squares category toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string builder, input_file, out_path, mode = "proto";
    int levels = 4;
    app.add_option("--builder", builder, "builder spec, e.g. finset:2");
    app.add_option("--levels", levels, "truncation level (default 4)");
    app.add_option("--mode", mode, "proto|stable");
    app.add_option("--out", out_path, "output path");

    auto* c_validate = app.add_subcommand("validate", "validate a squares category");
    c_validate->add_option("input", input_file, "interchange file");
    auto* c_weq = app.add_subcommand("weq", "weak equivalence sets");
    c_weq->add_option("input", input_file, "interchange file");
    auto* c_k0 = app.add_subcommand("k0", "K0 as a presented abelian group");
    c_k0->add_option("input", input_file, "interchange file");
    auto* c_nerve = app.add_subcommand("nerve", "double nerve diagonal level sizes");
    c_nerve->add_option("input", input_file, "interchange file");
    auto* c_segal = app.add_subcommand("segal", "Segal checks on the object simplicial sets");
    c_segal->add_option("input", input_file, "interchange file");
    auto* c_compare = app.add_subcommand("compare", "comparison witnesses and forgetful maps");
    c_compare->add_option("input", input_file, "interchange file");
    auto* c_roundtrip = app.add_subcommand("roundtrip", "path construction round trip");
    c_roundtrip->add_option("input", input_file, "interchange file");
    auto* c_dot = app.add_subcommand("dot", "DOT export of a diagram");
    std::string kind = "staircase";
    int dlevel = 2, dindex = 0;
    c_dot->add_option("input", input_file, "interchange file");
    c_dot->add_option("--kind", kind, "staircase|square|ladder");
    c_dot->add_option("--level", dlevel, "construction level");
    c_dot->add_option("--index", dindex, "object index at that level");

    std::vector<std::string> argv = args;
    std::vector<const char*> cargv;
    cargv.push_back("sqcat");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Input in = resolve_input(builder, input_file);
        if (c_validate->parsed()) {
            auto rep = dbl::validate_squares_category(in.cat);
            out << "validate: " << rep.to_string();
            if (!rep.ok()) return 1;
            if (app.count("--mode")) {
                auto comp = completions_or_synthesized(in);
                auto mrep = dbl::check_completion_axioms(
                    in.cat, comp,
                    mode == "stable" ? dbl::CompletionMode::Stable
                                     : dbl::CompletionMode::ProtoWaldhausen);
                out << "completion axioms (" << mode << "): " << mrep.to_string();
                if (!mrep.pass) return 1;
            }
            return 0;
        }
        if (c_weq->parsed()) {
            auto w = dbl::weak_equivalences(in.cat);
            out << "horizontal weak equivalences (" << w.hweq.size() << "):\n";
            for (int f : w.hweq) out << "  " << in.cat.hcat().morphism_id(f) << "\n";
            out << "vertical weak equivalences (" << w.vweq.size() << "):\n";
            for (int u : w.vweq) out << "  " << in.cat.vcat().morphism_id(u) << "\n";
            return 0;
        }
        if (c_k0->parsed()) {
            auto k = k0::k0_group(in.cat);
            out << k.to_string() << "\n";
            // express images through a unit generator when the group is Z
            if (k.free_rank == 1 && k.torsion.empty()) {
                int unit = -1;
                for (size_t o = 0; o < k.images.size(); ++o)
                    if (k.images[o][0] == 1 || k.images[o][0] == -1) {
                        unit = static_cast<int>(o);
                        break;
                    }
                if (unit >= 0) {
                    mpz_class ug = k.images[unit][0];
                    for (size_t o = 0; o < k.images.size(); ++o) {
                        mpz_class c = k.images[o][0] * ug;  // sign-corrected multiple
                        out << "[" << k.generators[o] << "] = " << c.get_str() << "·["
                            << k.generators[unit] << "]\n";
                    }
                }
            } else {
                for (size_t o = 0; o < k.images.size(); ++o) {
                    out << "[" << k.generators[o] << "] = (";
                    for (size_t i = 0; i < k.images[o].size(); ++i)
                        out << (i ? "," : "") << k.images[o][i].get_str();
                    out << ")\n";
                }
            }
            return 0;
        }
        if (c_nerve->parsed()) {
            auto x = cons::double_nerve_diag(in.cat.base, levels);
            auto rep = simp::validate_truncated(x);
            out << "double nerve diagonal, levels 0.." << levels << ":\n";
            for (int n = 0; n <= levels; ++n)
                out << "  level " << n << ": " << x.size(n) << " simplices\n";
            out << "simplicial identities: " << rep.to_string();
            return rep.ok() ? 0 : 1;
        }
        if (c_segal->parsed()) {
            auto obs = cons::ob_s(in.cat, levels);
            out << "ob S levels:";
            for (int n = 0; n <= levels; ++n) out << " " << obs.size(n);
            out << "\n";
            auto r1 = simp::check_segal(obs, 1);
            auto r2 = simp::check_segal(obs, 2);
            out << "ob S degree 1: " << r1.to_string();
            out << "ob S degree 2: " << r2.to_string();
            auto dn = cons::double_nerve_diag(in.cat.base, std::min(levels, 3));
            auto d2 = simp::check_segal(dn, 2);
            out << "double nerve diagonal degree 2: " << d2.to_string();
            return 0;
        }
        if (c_compare->parsed()) {
            auto comp = completions_or_synthesized(in);
            int n = std::min(levels, 2);
            bool ok = true;
            for (int k = 0; k <= n; ++k) {
                auto rep = cons::comparison_witnesses(in.cat, comp, k);
                out << rep.to_string();
                ok = ok && rep.pass();
            }
            if (mode == "stable") {
                for (auto target : {cons::HVTarget::H, cons::HVTarget::V}) {
                    auto rep = cons::forgetful_equivalence(in.cat, std::min(levels, 2), target);
                    out << rep.to_string();
                    ok = ok && rep.equivalence.equivalence();
                }
            }
            return ok ? 0 : 1;
        }
        if (c_roundtrip->parsed()) {
            int n = std::min(levels, 3);
            auto x = cons::ob_s(in.cat, std::max(n, 3));
            auto d2 = ex::path_double_category(x);
            auto y = cons::ob_s(d2, x.bound);
            auto iso = simp::find_iso(x, y);
            out << "round trip levels 0.." << x.bound << ": "
                << (iso ? "isomorphic" : "NOT isomorphic") << "\n";
            return iso ? 0 : 1;
        }
        if (c_dot->parsed()) {
            std::string text;
            if (kind == "square") {
                if (dindex < 0 || dindex >= static_cast<int>(in.cat.base.squares.size()))
                    throw io::ParseError("--index", "square index out of range");
                text = dotex::dot_of_square(in.cat, in.cat.base.squares[dindex]);
            } else if (kind == "staircase") {
                auto lv = cons::s_level(in.cat, dlevel);
                if (dindex < 0 || dindex >= static_cast<int>(lv.staircases.size()))
                    throw io::ParseError("--index", "staircase index out of range");
                text = dotex::dot_of_staircase(in.cat, lv.staircases[dindex]);
            } else if (kind == "ladder") {
                auto lv = cons::t_level(in.cat, dlevel);
                if (dindex < 0 || dindex >= static_cast<int>(lv.ladders.size()))
                    throw io::ParseError("--index", "ladder index out of range");
                const auto& lad = lv.ladders[dindex];
                text = dotex::dot_of_ladder(in.cat, lv.chains[lad.src], lv.chains[lad.dst], lad);
            } else {
                throw io::ParseError("--kind", "must be staircase, square or ladder");
            }
            emit(text, out_path, out);
            return 0;
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const cons::IncompleteData& e) {
        err << "incomplete data: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace sqcat::cli

#include "sqcat/interchange.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace sqcat::io {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& path, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!required.count(it.key()) && !optional.count(it.key()))
            throw ParseError(path + "." + it.key(), "unknown key");
    }
    for (const auto& k : required)
        if (!j.contains(k)) throw ParseError(path + "." + k, "missing key");
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

int resolve_obj(const cat::FinCat& c, const json& j, const std::string& path) {
    int o = c.object_index(get_string(j, path));
    if (o < 0) throw ParseError(path, "unknown object '" + j.get<std::string>() + "'");
    return o;
}

int resolve_mor(const cat::FinCat& c, const json& j, const std::string& path) {
    int m = c.morphism_index(get_string(j, path));
    if (m < 0) throw ParseError(path, "unknown morphism '" + j.get<std::string>() + "'");
    return m;
}

void parse_mors(cat::FinCat& c, const json& arr, const std::string& path) {
    if (!arr.is_array()) throw ParseError(path, "expected an array");
    int i = 0;
    for (const auto& m : arr) {
        std::string p = path + "[" + std::to_string(i) + "]";
        require_keys(m, p, {"id", "src", "dst"});
        std::string id = get_string(m["id"], p + ".id");
        std::string src = get_string(m["src"], p + ".src");
        std::string dst = get_string(m["dst"], p + ".dst");
        if (c.object_index(src) < 0) throw ParseError(p + ".src", "unknown object '" + src + "'");
        if (c.object_index(dst) < 0) throw ParseError(p + ".dst", "unknown object '" + dst + "'");
        if (c.morphism_index(id) >= 0) throw ParseError(p + ".id", "duplicate morphism id");
        c.add_morphism(id, src, dst);
        ++i;
    }
}

void parse_identities(cat::FinCat& c, const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object map");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (c.object_index(it.key()) < 0)
            throw ParseError(path + "." + it.key(), "unknown object");
        std::string mid = get_string(it.value(), path + "." + it.key());
        if (c.morphism_index(mid) < 0)
            throw ParseError(path + "." + it.key(), "unknown morphism '" + mid + "'");
        c.set_identity(it.key(), mid);
    }
    for (int o = 0; o < c.object_count(); ++o)
        if (c.identity(o) < 0)
            throw ParseError(path + "." + c.object_id(o), "missing identity");
}

void parse_comp(cat::FinCat& c, const json& arr, const std::string& path) {
    if (!arr.is_array()) throw ParseError(path, "expected an array");
    int i = 0;
    for (const auto& t : arr) {
        std::string p = path + "[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != 3) throw ParseError(p, "expected [g, f, gf]");
        int g = resolve_mor(c, t[0], p + "[0]");
        int f = resolve_mor(c, t[1], p + "[1]");
        int gf = resolve_mor(c, t[2], p + "[2]");
        c.set_composite_idx(g, f, gf);
        ++i;
    }
}

dbl::Square parse_square(const dbl::SquaresCat& d, const json& s, const std::string& p,
                         const std::set<std::string>& extra = {}) {
    require_keys(s, p, {"top", "left", "right", "bottom"}, extra);
    return {resolve_mor(*d.base.hcat, s["top"], p + ".top"),
            resolve_mor(*d.base.vcat, s["left"], p + ".left"),
            resolve_mor(*d.base.vcat, s["right"], p + ".right"),
            resolve_mor(*d.base.hcat, s["bottom"], p + ".bottom")};
}

}  // namespace

Document parse_squares_cat(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("(document)", e.what());
    }
    require_keys(j, "$",
                 {"objects", "hmor", "vmor", "hid", "vid", "hcomp", "vcomp", "squares",
                  "basepoint"},
                 {"completions"});
    Document doc;
    auto H = std::make_shared<cat::FinCat>();
    auto V = std::make_shared<cat::FinCat>();
    if (!j["objects"].is_array()) throw ParseError("$.objects", "expected an array");
    int i = 0;
    for (const auto& o : j["objects"]) {
        std::string id = get_string(o, "$.objects[" + std::to_string(i) + "]");
        if (H->object_index(id) >= 0)
            throw ParseError("$.objects[" + std::to_string(i) + "]", "duplicate object id");
        H->add_object(id);
        V->add_object(id);
        ++i;
    }
    parse_mors(*H, j["hmor"], "$.hmor");
    parse_mors(*V, j["vmor"], "$.vmor");
    parse_identities(*H, j["hid"], "$.hid");
    parse_identities(*V, j["vid"], "$.vid");
    parse_comp(*H, j["hcomp"], "$.hcomp");
    parse_comp(*V, j["vcomp"], "$.vcomp");
    doc.cat.base.hcat = H;
    doc.cat.base.vcat = V;
    if (!j["squares"].is_array()) throw ParseError("$.squares", "expected an array");
    i = 0;
    for (const auto& s : j["squares"]) {
        auto sq = parse_square(doc.cat, s, "$.squares[" + std::to_string(i) + "]");
        doc.cat.base.add_square(sq.top, sq.left, sq.right, sq.bottom);
        ++i;
    }
    doc.cat.basepoint = resolve_obj(*H, j["basepoint"], "$.basepoint");
    if (j.contains("completions")) {
        const json& c = j["completions"];
        require_keys(c, "$.completions",
                     {}, {"span", "span_action", "w", "cospan", "cospan_action", "u"});
        dbl::CompletionData comp;
        auto mor = [&](const cat::FinCat& cc, const json& v, const std::string& p) {
            return resolve_mor(cc, v, p);
        };
        if (c.contains("span")) {
            int k = 0;
            for (const auto& e : c["span"]) {
                std::string p = "$.completions.span[" + std::to_string(k++) + "]";
                require_keys(e, p, {"f", "u", "right", "bottom"});
                int f = mor(*H, e["f"], p + ".f"), u = mor(*V, e["u"], p + ".u");
                comp.span_complete[{f, u}] = {f, u, mor(*V, e["right"], p + ".right"),
                                              mor(*H, e["bottom"], p + ".bottom")};
            }
        }
        if (c.contains("cospan")) {
            int k = 0;
            for (const auto& e : c["cospan"]) {
                std::string p = "$.completions.cospan[" + std::to_string(k++) + "]";
                require_keys(e, p, {"v", "g", "top", "left"});
                int v = mor(*V, e["v"], p + ".v"), g = mor(*H, e["g"], p + ".g");
                comp.cospan_complete[{v, g}] = {mor(*H, e["top"], p + ".top"),
                                                mor(*V, e["left"], p + ".left"), v, g};
            }
        }
        if (c.contains("span_action")) {
            int k = 0;
            for (const auto& e : c["span_action"]) {
                std::string p = "$.completions.span_action[" + std::to_string(k++) + "]";
                require_keys(e, p, {"f", "u", "f2", "u2", "p", "q", "r", "w"});
                comp.span_action[{mor(*H, e["f"], p), mor(*V, e["u"], p), mor(*H, e["f2"], p),
                                  mor(*V, e["u2"], p), mor(*V, e["p"], p), mor(*V, e["q"], p),
                                  mor(*V, e["r"], p)}] = mor(*V, e["w"], p + ".w");
            }
        }
        if (c.contains("cospan_action")) {
            int k = 0;
            for (const auto& e : c["cospan_action"]) {
                std::string p = "$.completions.cospan_action[" + std::to_string(k++) + "]";
                require_keys(e, p, {"v", "g", "v2", "g2", "beta", "gamma", "delta", "alpha"});
                comp.cospan_action[{mor(*V, e["v"], p), mor(*H, e["g"], p), mor(*V, e["v2"], p),
                                    mor(*H, e["g2"], p), mor(*V, e["beta"], p),
                                    mor(*V, e["gamma"], p), mor(*V, e["delta"], p)}] =
                    mor(*V, e["alpha"], p + ".alpha");
            }
        }
        if (c.contains("w")) {
            int k = 0;
            for (const auto& e : c["w"]) {
                std::string p = "$.completions.w[" + std::to_string(k++) + "]";
                auto sq = parse_square(doc.cat, e, p, {"w"});
                comp.w_components[sq.key()] = mor(*V, e["w"], p + ".w");
            }
        }
        if (c.contains("u")) {
            int k = 0;
            for (const auto& e : c["u"]) {
                std::string p = "$.completions.u[" + std::to_string(k++) + "]";
                auto sq = parse_square(doc.cat, e, p, {"u"});
                comp.u_components[sq.key()] = mor(*V, e["u"], p + ".u");
            }
        }
        doc.completions = std::move(comp);
    }
    return doc;
}

Document load_squares_cat(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("(file)", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_squares_cat(ss.str());
}

std::string write_squares_cat(const dbl::SquaresCat& d, const dbl::CompletionData* comp) {
    const cat::FinCat& H = *d.base.hcat;
    const cat::FinCat& V = *d.base.vcat;
    json j;
    j["objects"] = json::array();
    for (int o = 0; o < H.object_count(); ++o) j["objects"].push_back(H.object_id(o));
    auto mor_arr = [](const cat::FinCat& c) {
        json a = json::array();
        for (int m = 0; m < c.morphism_count(); ++m)
            a.push_back({{"id", c.morphism_id(m)},
                         {"src", c.object_id(c.src(m))},
                         {"dst", c.object_id(c.dst(m))}});
        return a;
    };
    j["hmor"] = mor_arr(H);
    j["vmor"] = mor_arr(V);
    auto id_map = [](const cat::FinCat& c) {
        json o = json::object();
        for (int i = 0; i < c.object_count(); ++i)
            o[c.object_id(i)] = c.morphism_id(c.identity(i));
        return o;
    };
    j["hid"] = id_map(H);
    j["vid"] = id_map(V);
    auto comp_arr = [](const cat::FinCat& c) {
        json a = json::array();
        for (const auto& [g, f, gf] : c.composition_entries())
            a.push_back({c.morphism_id(g), c.morphism_id(f), c.morphism_id(gf)});
        return a;
    };
    j["hcomp"] = comp_arr(H);
    j["vcomp"] = comp_arr(V);
    j["squares"] = json::array();
    for (const auto& s : d.base.squares)
        j["squares"].push_back({{"top", H.morphism_id(s.top)},
                                {"left", V.morphism_id(s.left)},
                                {"right", V.morphism_id(s.right)},
                                {"bottom", H.morphism_id(s.bottom)}});
    j["basepoint"] = H.object_id(d.basepoint);
    if (comp) {
        json c;
        c["span"] = json::array();
        for (const auto& [k, sq] : comp->span_complete)
            c["span"].push_back({{"f", H.morphism_id(k.first)},
                                 {"u", V.morphism_id(k.second)},
                                 {"right", V.morphism_id(sq.right)},
                                 {"bottom", H.morphism_id(sq.bottom)}});
        c["cospan"] = json::array();
        for (const auto& [k, sq] : comp->cospan_complete)
            c["cospan"].push_back({{"v", V.morphism_id(k.first)},
                                   {"g", H.morphism_id(k.second)},
                                   {"top", H.morphism_id(sq.top)},
                                   {"left", V.morphism_id(sq.left)}});
        c["span_action"] = json::array();
        for (const auto& [k, w] : comp->span_action)
            c["span_action"].push_back({{"f", H.morphism_id(k[0])},
                                        {"u", V.morphism_id(k[1])},
                                        {"f2", H.morphism_id(k[2])},
                                        {"u2", V.morphism_id(k[3])},
                                        {"p", V.morphism_id(k[4])},
                                        {"q", V.morphism_id(k[5])},
                                        {"r", V.morphism_id(k[6])},
                                        {"w", V.morphism_id(w)}});
        c["cospan_action"] = json::array();
        for (const auto& [k, a] : comp->cospan_action)
            c["cospan_action"].push_back({{"v", V.morphism_id(k[0])},
                                          {"g", H.morphism_id(k[1])},
                                          {"v2", V.morphism_id(k[2])},
                                          {"g2", H.morphism_id(k[3])},
                                          {"beta", V.morphism_id(k[4])},
                                          {"gamma", V.morphism_id(k[5])},
                                          {"delta", V.morphism_id(k[6])},
                                          {"alpha", V.morphism_id(a)}});
        c["w"] = json::array();
        for (const auto& [k, w] : comp->w_components)
            c["w"].push_back({{"top", H.morphism_id(k[0])},
                              {"left", V.morphism_id(k[1])},
                              {"right", V.morphism_id(k[2])},
                              {"bottom", H.morphism_id(k[3])},
                              {"w", V.morphism_id(w)}});
        c["u"] = json::array();
        for (const auto& [k, u] : comp->u_components)
            c["u"].push_back({{"top", H.morphism_id(k[0])},
                              {"left", V.morphism_id(k[1])},
                              {"right", V.morphism_id(k[2])},
                              {"bottom", H.morphism_id(k[3])},
                              {"u", V.morphism_id(u)}});
        j["completions"] = std::move(c);
    }
    return j.dump(2) + "\n";
}

}  // namespace sqcat::io

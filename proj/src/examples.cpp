#include "sqcat/examples.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "sqcat/constructions.hpp"

namespace sqcat::ex {

using cat::FinCat;
using dbl::CompletionData;
using dbl::Square;
using dbl::SquaresCat;

namespace {

std::string join(const std::vector<int>& v) {
    std::string r;
    for (size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + std::to_string(v[i]);
    return r;
}

// ---------------------------------------------------------------- finset ---

// injections [a] -> [b] as 1-based value tuples, lexicographic
std::vector<std::vector<int>> injections(int a, int b) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<bool> used(b + 1, false);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == a) {
            out.push_back(cur);
            return;
        }
        for (int v = 1; v <= b; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(v);
            rec();
            cur.pop_back();
            used[v] = false;
        }
    };
    rec();
    return out;
}

std::vector<int> compose_inj(const std::vector<int>& g, const std::vector<int>& f) {
    // g after f: f: [a]->[b], g: [b]->[c]
    std::vector<int> r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i] - 1];
    return r;
}

}  // namespace

Built finset_squares(int n_max) {
    if (n_max < 0) throw std::invalid_argument("finset_squares: n_max must be >= 0");
    Built out;
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (int n = 0; n <= n_max; ++n) {
        H->add_object(std::to_string(n));
        V->add_object(std::to_string(n));
    }
    struct Inj {
        int a, b;
        std::vector<int> vals;
    };
    std::vector<Inj> hmors, vmors;
    std::map<std::vector<int>, int> hidx, vidx;  // key: [a,b,vals...]
    auto key_of = [](int a, int b, const std::vector<int>& vals) {
        std::vector<int> k{a, b};
        k.insert(k.end(), vals.begin(), vals.end());
        return k;
    };
    for (int a = 0; a <= n_max; ++a) {
        for (int b = a; b <= n_max; ++b) {
            for (const auto& vals : injections(a, b)) {
                hidx[key_of(a, b, vals)] = H->add_morphism_idx(
                    "h" + std::to_string(a) + ">" + std::to_string(b) + "(" + join(vals) + ")", a,
                    b);
                hmors.push_back({a, b, vals});
                // the formal opposite: v-mor b ->> a with underlying injection
                vidx[key_of(a, b, vals)] = V->add_morphism_idx(
                    "v" + std::to_string(b) + ">" + std::to_string(a) + "(" + join(vals) + ")", b,
                    a);
                vmors.push_back({a, b, vals});
            }
        }
    }
    std::vector<int> ident;  // identity injection values cache
    for (int n = 0; n <= n_max; ++n) {
        std::vector<int> id_vals;
        for (int i = 1; i <= n; ++i) id_vals.push_back(i);
        H->set_identity_idx(n, hidx.at(key_of(n, n, id_vals)));
        V->set_identity_idx(n, vidx.at(key_of(n, n, id_vals)));
    }
    for (size_t f = 0; f < hmors.size(); ++f) {
        for (size_t g = 0; g < hmors.size(); ++g) {
            if (hmors[g].a != hmors[f].b) continue;
            auto c = compose_inj(hmors[g].vals, hmors[f].vals);
            H->set_composite_idx((int)g, (int)f, hidx.at(key_of(hmors[f].a, hmors[g].b, c)));
        }
    }
    // v-mors: v1 = op(u1: [c]->[a]) : a ->> c ; v2 = op(u2: [e]->[c]) : c ->> e
    // composite underlying injection is u1 ∘ u2
    for (size_t v1 = 0; v1 < vmors.size(); ++v1) {
        for (size_t v2 = 0; v2 < vmors.size(); ++v2) {
            if (vmors[v2].b != vmors[v1].a) continue;
            auto c = compose_inj(vmors[v1].vals, vmors[v2].vals);
            V->set_composite_idx((int)v2, (int)v1,
                                 vidx.at(key_of(vmors[v2].a, vmors[v1].b, c)));
        }
    }
    out.cat.base.hcat = H;
    out.cat.base.vcat = V;
    out.cat.basepoint = 0;
    // squares: f: A >-> B, u: C -> A, v: D -> B, g: C -> D with
    // f∘u = v∘g, im f ∪ im v = B, im f ∩ im v = im(f∘u)
    auto im_of = [](const std::vector<int>& vals) {
        return std::set<int>(vals.begin(), vals.end());
    };
    for (size_t fi = 0; fi < hmors.size(); ++fi) {
        const Inj& f = hmors[fi];
        for (size_t li = 0; li < vmors.size(); ++li) {
            const Inj& u = vmors[li];  // u: [c] -> [a] underlying the left edge a ->> c
            if (u.b != f.a) continue;
            for (size_t ri = 0; ri < vmors.size(); ++ri) {
                const Inj& v = vmors[ri];  // v: [d] -> [b]
                if (v.b != f.b) continue;
                auto imf = im_of(f.vals);
                auto imv = im_of(v.vals);
                std::set<int> uni, inter;
                std::set_union(imf.begin(), imf.end(), imv.begin(), imv.end(),
                               std::inserter(uni, uni.begin()));
                std::set_intersection(imf.begin(), imf.end(), imv.begin(), imv.end(),
                                      std::inserter(inter, inter.begin()));
                if (static_cast<int>(uni.size()) != f.b) continue;
                auto fu = compose_inj(f.vals, u.vals);
                if (im_of(fu) != inter) continue;
                // bottom: g = v^{-1} ∘ f ∘ u  (exists because im(fu) ⊆ im v)
                std::vector<int> g(fu.size());
                bool ok = true;
                for (size_t i = 0; i < fu.size() && ok; ++i) {
                    auto it = std::find(v.vals.begin(), v.vals.end(), fu[i]);
                    if (it == v.vals.end())
                        ok = false;
                    else
                        g[i] = static_cast<int>(it - v.vals.begin()) + 1;
                }
                if (!ok) continue;
                int gi = hidx.at(key_of(u.a, v.a, g));
                out.cat.base.add_square((int)fi, (int)li, (int)ri, gi);
            }
        }
    }
    std::sort(out.cat.base.squares.begin(), out.cat.base.squares.end());

    // completion data: spans complete by complements with order-preserving
    // labeling; actions and comparison components are forced by the images.
    auto hvals = [&](int m) { return hmors[m].vals; };
    auto vvals = [&](int m) { return vmors[m].vals; };
    auto find_v = [&](int a, int b, const std::vector<int>& vals) {
        return vidx.at(key_of(a, b, vals));
    };
    auto find_h = [&](int a, int b, const std::vector<int>& vals) {
        return hidx.at(key_of(a, b, vals));
    };
    for (const auto& sp : dbl::all_spans(out.cat)) {
        auto [fm, um] = sp;
        const Inj& f = hmors[fm];
        const Inj& u = vmors[um];
        // im(right) = (B \ im f) ∪ f(im u), order preserving
        std::set<int> target;
        for (int x = 1; x <= f.b; ++x)
            if (!std::count(f.vals.begin(), f.vals.end(), x)) target.insert(x);
        for (int x : u.vals) target.insert(f.vals[x - 1]);
        std::vector<int> rvals(target.begin(), target.end());
        int d_card = static_cast<int>(rvals.size());
        auto fu = compose_inj(f.vals, u.vals);
        std::vector<int> g(fu.size());
        for (size_t i = 0; i < fu.size(); ++i) {
            auto it = std::find(rvals.begin(), rvals.end(), fu[i]);
            g[i] = static_cast<int>(it - rvals.begin()) + 1;
        }
        int rm = find_v(d_card, f.b, rvals);
        int gm = find_h(u.a, d_card, g);
        out.comp.span_complete[{fm, um}] = Square{fm, um, rm, gm};
    }
    for (const auto& cs : dbl::all_cospans(out.cat)) {
        auto [vm, gm] = cs;
        const Inj& v = vmors[vm];
        const Inj& g = hmors[gm];
        // im(top) = (B \ im v) ∪ v(im g)
        std::set<int> target;
        for (int x = 1; x <= v.b; ++x)
            if (!std::count(v.vals.begin(), v.vals.end(), x)) target.insert(x);
        for (int x : g.vals) target.insert(v.vals[x - 1]);
        std::vector<int> fvals(target.begin(), target.end());
        int a_card = static_cast<int>(fvals.size());
        auto vg = compose_inj(v.vals, g.vals);
        std::vector<int> u(vg.size());
        for (size_t i = 0; i < vg.size(); ++i) {
            auto it = std::find(fvals.begin(), fvals.end(), vg[i]);
            u[i] = static_cast<int>(it - fvals.begin()) + 1;
        }
        int fm = find_h(a_card, v.b, fvals);
        int um = find_v(g.a, a_card, u);
        out.comp.cospan_complete[{vm, gm}] = Square{fm, um, vm, gm};
    }
    auto preimage_through = [&](const std::vector<int>& through, const std::vector<int>& vals) {
        // through^{-1} ∘ vals, provided im(vals) ⊆ im(through)
        std::vector<int> r(vals.size());
        for (size_t i = 0; i < vals.size(); ++i) {
            auto it = std::find(through.begin(), through.end(), vals[i]);
            if (it == through.end()) throw std::logic_error("finset action: image mismatch");
            r[i] = static_cast<int>(it - through.begin()) + 1;
        }
        return r;
    };
    for (const auto& m : dbl::all_span_morphisms(out.cat)) {
        const Square& s1 = out.comp.span_complete.at(m.from);
        const Square& s2 = out.comp.span_complete.at(m.to);
        // w underlying = v1^{-1} ∘ q ∘ v2
        auto w = preimage_through(vvals(s1.right), compose_inj(vvals(m.q), vvals(s2.right)));
        int wm = find_v(vmors[s2.right].a, vmors[s1.right].a, w);
        out.comp.span_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.p, m.q,
                              m.r}] = wm;
    }
    for (const auto& m : dbl::all_cospan_morphisms(out.cat)) {
        const Square& s1 = out.comp.cospan_complete.at(m.from);
        const Square& s2 = out.comp.cospan_complete.at(m.to);
        // alpha underlying = f1^{-1} ∘ beta ∘ f2
        auto al = preimage_through(hvals(s1.top), compose_inj(vvals(m.beta), hvals(s2.top)));
        int am = find_v(hmors[s2.top].a, hmors[s1.top].a, al);
        out.comp.cospan_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.beta,
                                m.gamma, m.delta}] = am;
    }
    for (const Square& sq : out.cat.base.squares) {
        const Square& s0 = out.comp.span_complete.at({sq.top, sq.left});
        auto w = preimage_through(vvals(s0.right), vvals(sq.right));
        out.comp.w_components[sq.key()] =
            find_v(vmors[sq.right].a, vmors[s0.right].a, w);
        const Square& c0 = out.comp.cospan_complete.at({sq.right, sq.bottom});
        auto u = preimage_through(hvals(c0.top), hvals(sq.top));
        out.comp.u_components[sq.key()] = find_v(hmors[sq.top].a, hmors[c0.top].a, u);
    }
    return out;
}

// --------------------------------------------------------- partial monoid ---

SquaresCat partial_monoid_squares(const simp::PartialMonoid& m) {
    auto rep = simp::validate_partial_monoid(m);
    if (!rep.ok())
        throw std::invalid_argument("partial_monoid_squares: invalid partial monoid:\n" +
                                    rep.to_string());
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (const auto& e : m.elements) {
        H->add_object(e);
        V->add_object(e);
    }
    std::map<std::pair<int, int>, int> hidx, vidx;
    for (const auto& [ab, prod] : m.product) {
        auto [a, b] = ab;
        hidx[{a, b}] = H->add_morphism_idx("h(" + m.elements[a] + "," + m.elements[b] + ")", a,
                                           prod);
        vidx[{a, b}] = V->add_morphism_idx("v(" + m.elements[a] + "," + m.elements[b] + ")", prod,
                                           b);
    }
    for (int a = 0; a < static_cast<int>(m.elements.size()); ++a) {
        H->set_identity_idx(a, hidx.at({a, m.unit}));
        V->set_identity_idx(a, vidx.at({m.unit, a}));
    }
    // h: (a,b) then (a*b,c) = (a, b*c); v: (a,b) after? see label arithmetic
    for (const auto& [ab1, p1] : m.product) {
        auto [a1, b1] = ab1;
        for (const auto& [ab2, p2] : m.product) {
            auto [a2, b2] = ab2;
            (void)p2;
            if (a2 == p1) {  // horizontal composable: a1 -> a1b1 = a2 -> a2b2
                if (!m.defined(b1, b2))
                    throw std::invalid_argument(
                        "partial_monoid_squares: horizontal composition not closed at (" +
                        m.elements[a1] + "," + m.elements[b1] + ")*(" + m.elements[a2] + "," +
                        m.elements[b2] + ")");
                H->set_composite_idx(hidx.at(ab2), hidx.at(ab1), hidx.at({a1, m.times(b1, b2)}));
            }
            if (m.times(a2, b2) == b1) {  // vertical: a1b1 ->> b1 = a2b2 ->> b2
                if (!m.defined(a1, a2))
                    throw std::invalid_argument(
                        "partial_monoid_squares: vertical composition not closed");
                V->set_composite_idx(vidx.at(ab2), vidx.at(ab1), vidx.at({m.times(a1, a2), b2}));
            }
        }
    }
    SquaresCat out;
    out.base.hcat = H;
    out.base.vcat = V;
    out.basepoint = m.unit;
    // squares witness associativity: one per triple (c,a,b) with everything defined
    const int n = static_cast<int>(m.elements.size());
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            if (!m.defined(c, a)) continue;
            for (int b = 0; b < n; ++b) {
                if (!m.defined(a, b)) continue;
                if (!m.defined(m.times(c, a), b)) continue;
                if (!m.defined(c, m.times(a, b))) continue;
                out.base.add_square(hidx.at({m.times(c, a), b}), vidx.at({c, a}),
                                    vidx.at({c, m.times(a, b)}), hidx.at({a, b}));
            }
        }
    }
    std::sort(out.base.squares.begin(), out.base.squares.end());
    return out;
}

// ------------------------------------------------------------ twisted arrow ---

TwistedArrow twisted_arrow_squares(const FinCat& c) {
    TwistedArrow out;
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (int f = 0; f < c.morphism_count(); ++f) {
        H->add_object(c.morphism_id(f));
        V->add_object(c.morphism_id(f));
    }
    // diagram-order product: f * g = g ∘ f for dst(f) = src(g)
    auto star = [&](int f, int g) { return c.compose(g, f); };
    std::map<std::pair<int, int>, int> hidx, vidx;
    for (int f = 0; f < c.morphism_count(); ++f) {
        for (int g : c.out_of(c.dst(f))) {
            hidx[{f, g}] = H->add_morphism_idx(
                "h(" + c.morphism_id(f) + ";" + c.morphism_id(g) + ")", f, star(f, g));
            vidx[{f, g}] = V->add_morphism_idx(
                "v(" + c.morphism_id(f) + ";" + c.morphism_id(g) + ")", star(f, g), g);
        }
    }
    for (int f = 0; f < c.morphism_count(); ++f) {
        H->set_identity_idx(f, hidx.at({f, c.identity(c.dst(f))}));
        V->set_identity_idx(f, vidx.at({c.identity(c.src(f)), f}));
    }
    for (const auto& [fg1, m1] : hidx) {
        for (const auto& [fg2, m2] : hidx) {
            if (star(fg1.first, fg1.second) != fg2.first) continue;
            H->set_composite_idx(m2, m1, hidx.at({fg1.first, star(fg1.second, fg2.second)}));
        }
    }
    for (const auto& [fg1, m1] : vidx) {
        for (const auto& [fg2, m2] : vidx) {
            if (star(fg2.first, fg2.second) != fg1.second) continue;
            V->set_composite_idx(m2, m1, vidx.at({star(fg1.first, fg2.first), fg2.second}));
        }
    }
    out.cat.hcat = H;
    out.cat.vcat = V;
    for (const auto& [xy, hm] : hidx) {
        auto [x, y] = xy;
        for (int z : c.out_of(c.dst(y))) {
            // triple x * y * z
            out.cat.add_square(hidx.at({star(x, y), z}), vidx.at({x, y}),
                               vidx.at({x, star(y, z)}), hidx.at({y, z}));
        }
        (void)hm;
    }
    std::sort(out.cat.squares.begin(), out.cat.squares.end());
    out.marked = c.morphism_id(c.identity(0));
    return out;
}

// ------------------------------------------------------------------ graphs ---

namespace {

struct SubGraph {
    std::vector<int> verts;                   // sorted vertex indices
    std::vector<std::pair<int, int>> edges;   // sorted normalized pairs
    bool operator<(const SubGraph& o) const {
        return std::tie(verts, edges) < std::tie(o.verts, o.edges);
    }
    bool operator==(const SubGraph& o) const = default;
    bool has_vert(int v) const { return std::binary_search(verts.begin(), verts.end(), v); }
    bool has_edge(int a, int b) const {
        auto e = std::minmax(a, b);
        return std::binary_search(edges.begin(), edges.end(),
                                  std::make_pair(e.first, e.second));
    }
};

std::string subgraph_id(const SubGraph& g, const std::vector<std::string>& names) {
    std::string r = "g{";
    for (size_t i = 0; i < g.verts.size(); ++i) r += (i ? "," : "") + names[g.verts[i]];
    r += "|";
    for (size_t i = 0; i < g.edges.size(); ++i)
        r += (i ? "," : "") + names[g.edges[i].first] + "-" + names[g.edges[i].second];
    return r + "}";
}

std::vector<SubGraph> enumerate_subgraphs(int nverts,
                                          const std::vector<std::pair<int, int>>& edges) {
    std::vector<SubGraph> out;
    for (int mask = 0; mask < (1 << nverts); ++mask) {
        std::vector<int> vs;
        for (int v = 0; v < nverts; ++v)
            if (mask & (1 << v)) vs.push_back(v);
        std::vector<std::pair<int, int>> avail;
        for (auto [a, b] : edges) {
            if ((mask & (1 << a)) && (mask & (1 << b)))
                avail.push_back(std::minmax(a, b));
        }
        std::sort(avail.begin(), avail.end());
        for (int emask = 0; emask < (1 << avail.size()); ++emask) {
            SubGraph g;
            g.verts = vs;
            for (size_t e = 0; e < avail.size(); ++e)
                if (emask & (1 << e)) g.edges.push_back(avail[e]);
            out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool full_inclusion(const SubGraph& a, const SubGraph& b) {
    // a ⊆ b with a induced in b
    for (int v : a.verts)
        if (!b.has_vert(v)) return false;
    for (auto [x, y] : a.edges)
        if (!b.has_edge(x, y)) return false;
    for (auto [x, y] : b.edges)
        if (a.has_vert(x) && a.has_vert(y) && !a.has_edge(x, y)) return false;
    return true;
}

bool plain_inclusion(const SubGraph& a, const SubGraph& b) {
    for (int v : a.verts)
        if (!b.has_vert(v)) return false;
    for (auto [x, y] : a.edges)
        if (!b.has_edge(x, y)) return false;
    return true;
}

}  // namespace

SquaresCat graph_squares(const GraphData& ambient) {
    const int nv = static_cast<int>(ambient.vertices.size());
    if (nv > 5) throw std::invalid_argument("graph_squares: ambient too large (2^|V| guard)");
    auto subs = enumerate_subgraphs(nv, ambient.edges);
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (const auto& s : subs) {
        H->add_object(subgraph_id(s, ambient.vertices));
        V->add_object(subgraph_id(s, ambient.vertices));
    }
    std::map<std::pair<int, int>, int> hidx, vidx;  // (sub, super) -> mor
    for (size_t a = 0; a < subs.size(); ++a) {
        for (size_t b = 0; b < subs.size(); ++b) {
            if (!full_inclusion(subs[a], subs[b])) continue;
            hidx[{(int)a, (int)b}] = H->add_morphism_idx(
                "h<" + std::to_string(a) + ">" + std::to_string(b) + ">", (int)a, (int)b);
            vidx[{(int)a, (int)b}] = V->add_morphism_idx(
                "v<" + std::to_string(b) + ">" + std::to_string(a) + ">", (int)b, (int)a);
        }
    }
    for (size_t a = 0; a < subs.size(); ++a) {
        H->set_identity_idx((int)a, hidx.at({(int)a, (int)a}));
        V->set_identity_idx((int)a, vidx.at({(int)a, (int)a}));
    }
    for (const auto& [ab1, m1] : hidx) {
        for (const auto& [ab2, m2] : hidx) {
            if (ab1.second != ab2.first) continue;
            H->set_composite_idx(m2, m1, hidx.at({ab1.first, ab2.second}));
            V->set_composite_idx(vidx.at(ab1), vidx.at(ab2), vidx.at({ab1.first, ab2.second}));
        }
    }
    SquaresCat out;
    out.base.hcat = H;
    out.base.vcat = V;
    out.basepoint = 0;  // empty graph sorts first
    // squares (S >-> T, S ->> S', T ->> T', S' >-> T') with the three-piece
    // vertex partition: V(S) ∩ V(T') = V(S') and V(S) ∪ V(T') = V(T)
    for (const auto& [st, fm] : hidx) {
        auto [s, t] = st;
        for (const auto& [ss, lm] : vidx) {
            // lm: vcat morphism from super to sub; key is (sub, super)
            if (ss.second != s) continue;
            int sp = ss.first;
            for (const auto& [tt, rm] : vidx) {
                if (tt.second != t) continue;
                int tp = tt.first;
                auto bit = hidx.find({sp, tp});
                if (bit == hidx.end()) continue;
                std::vector<int> inter, uni;
                std::set_intersection(subs[s].verts.begin(), subs[s].verts.end(),
                                      subs[tp].verts.begin(), subs[tp].verts.end(),
                                      std::back_inserter(inter));
                std::set_union(subs[s].verts.begin(), subs[s].verts.end(),
                               subs[tp].verts.begin(), subs[tp].verts.end(),
                               std::back_inserter(uni));
                if (inter != subs[sp].verts || uni != subs[t].verts) continue;
                out.base.add_square(fm, lm, rm, bit->second);
            }
        }
    }
    std::sort(out.base.squares.begin(), out.base.squares.end());
    return out;
}

SquaresCat graph_squares(int variant, int vertex_bound) {
    if (variant != 2 && variant != 3)
        throw std::invalid_argument("graph_squares: variant must be 2 or 3 with a vertex bound");
    if (vertex_bound > 4) throw std::invalid_argument("graph_squares: vertex bound too large");
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> complete;
    for (int v = 0; v < vertex_bound; ++v) names.push_back(std::to_string(v + 1));
    for (int a = 0; a < vertex_bound; ++a)
        for (int b = a + 1; b < vertex_bound; ++b) complete.emplace_back(a, b);
    auto subs = enumerate_subgraphs(vertex_bound, complete);
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (const auto& s : subs) {
        H->add_object(subgraph_id(s, names));
        V->add_object(subgraph_id(s, names));
    }
    // morphisms: variant 2 = full embeddings (vertex maps), variant 3 = inclusions
    struct Emb {
        int src, dst;
        std::vector<int> map;  // vertex image per source vertex position
    };
    std::vector<Emb> embs;
    std::map<std::vector<int>, int> eidx;  // [src,dst,map...] -> index
    auto add_emb = [&](const Emb& e) {
        std::vector<int> k{e.src, e.dst};
        k.insert(k.end(), e.map.begin(), e.map.end());
        std::string id = "h<" + std::to_string(e.src) + ">" + std::to_string(e.dst) + "(";
        for (size_t i = 0; i < e.map.size(); ++i)
            id += (i ? "," : "") + std::to_string(e.map[i]);
        id += ")>";
        int m = H->add_morphism_idx(id, e.src, e.dst);
        V->add_morphism_idx("v" + id.substr(1), e.dst, e.src);
        eidx[k] = m;
        embs.push_back(e);
        return m;
    };
    for (size_t a = 0; a < subs.size(); ++a) {
        for (size_t b = 0; b < subs.size(); ++b) {
            const SubGraph& A = subs[a];
            const SubGraph& B = subs[b];
            if (variant == 3) {
                if (plain_inclusion(A, B)) {
                    Emb e{(int)a, (int)b, A.verts};
                    add_emb(e);
                }
                continue;
            }
            // variant 2: injective vertex maps with u~v in A iff img adjacent in B
            std::vector<int> cur;
            std::function<void()> rec = [&]() {
                if (cur.size() == A.verts.size()) {
                    add_emb({(int)a, (int)b, cur});
                    return;
                }
                size_t k = cur.size();
                for (int w : B.verts) {
                    if (std::count(cur.begin(), cur.end(), w)) continue;
                    bool ok = true;
                    for (size_t p = 0; p < k && ok; ++p) {
                        bool adjA = A.has_edge(A.verts[p], A.verts[k]);
                        bool adjB = B.has_edge(cur[p], w);
                        if (adjA != adjB) ok = false;
                    }
                    if (!ok) continue;
                    cur.push_back(w);
                    rec();
                    cur.pop_back();
                }
            };
            rec();
        }
    }
    for (size_t a = 0; a < subs.size(); ++a) {
        std::vector<int> k{(int)a, (int)a};
        k.insert(k.end(), subs[a].verts.begin(), subs[a].verts.end());
        H->set_identity_idx((int)a, eidx.at(k));
        V->set_identity_idx((int)a, eidx.at(k));
    }
    auto apply_map = [&](const Emb& e, int v) {
        const SubGraph& A = subs[e.src];
        for (size_t i = 0; i < A.verts.size(); ++i)
            if (A.verts[i] == v) return e.map[i];
        throw std::logic_error("graph embedding: vertex not in source");
    };
    for (size_t m1 = 0; m1 < embs.size(); ++m1) {
        for (size_t m2 = 0; m2 < embs.size(); ++m2) {
            if (embs[m2].src != embs[m1].dst) continue;
            std::vector<int> comp;
            for (int v : subs[embs[m1].src].verts)
                comp.push_back(apply_map(embs[m2], apply_map(embs[m1], v)));
            std::vector<int> k{embs[m1].src, embs[m2].dst};
            k.insert(k.end(), comp.begin(), comp.end());
            int c = eidx.at(k);
            H->set_composite_idx((int)m2, (int)m1, c);
            V->set_composite_idx((int)m1, (int)m2, c);
        }
    }
    SquaresCat out;
    out.base.hcat = H;
    out.base.vcat = V;
    out.basepoint = 0;
    // squares: quadruples over (f: S>->T, l: S->>S', r: T->>T', b: S'>->T')
    for (size_t fm = 0; fm < embs.size(); ++fm) {
        const Emb& f = embs[fm];
        for (size_t lm = 0; lm < embs.size(); ++lm) {
            const Emb& l = embs[lm];  // underlying S' -> S
            if (l.dst != f.src) continue;
            for (size_t rm = 0; rm < embs.size(); ++rm) {
                const Emb& r = embs[rm];  // underlying T' -> T
                if (r.dst != f.dst) continue;
                for (size_t bm = 0; bm < embs.size(); ++bm) {
                    const Emb& b = embs[bm];
                    if (b.src != l.src || b.dst != r.src) continue;
                    // commutativity f ∘ l = r ∘ b on vertices
                    bool comm = true;
                    for (int v : subs[l.src].verts) {
                        if (apply_map(f, apply_map(l, v)) != apply_map(r, apply_map(b, v))) {
                            comm = false;
                            break;
                        }
                    }
                    if (!comm) continue;
                    // vertex images in T
                    std::set<int> imf, imr, imfl;
                    for (int v : subs[f.src].verts) imf.insert(apply_map(f, v));
                    for (int v : subs[r.src].verts) imr.insert(apply_map(r, v));
                    for (int v : subs[l.src].verts) imfl.insert(apply_map(f, apply_map(l, v)));
                    std::set<int> uni = imf, inter;
                    uni.insert(imr.begin(), imr.end());
                    std::set_intersection(imf.begin(), imf.end(), imr.begin(), imr.end(),
                                          std::inserter(inter, inter.begin()));
                    std::set<int> allt(subs[f.dst].verts.begin(), subs[f.dst].verts.end());
                    if (uni != allt || inter != imfl) continue;
                    if (variant == 3) {
                        // pushout in graphs: edge condition as well
                        std::set<std::pair<int, int>> euni, einter, eimfl;
                        auto edge_im = [&](const Emb& e, std::set<std::pair<int, int>>& into) {
                            for (auto [x, y] : subs[e.src].edges) {
                                auto p = std::minmax(apply_map(e, x), apply_map(e, y));
                                into.insert({p.first, p.second});
                            }
                        };
                        std::set<std::pair<int, int>> ef, er;
                        edge_im(f, ef);
                        edge_im(r, er);
                        euni = ef;
                        euni.insert(er.begin(), er.end());
                        std::set_intersection(ef.begin(), ef.end(), er.begin(), er.end(),
                                              std::inserter(einter, einter.begin()));
                        for (auto [x, y] : subs[l.src].edges) {
                            auto p = std::minmax(apply_map(f, apply_map(l, x)),
                                                 apply_map(f, apply_map(l, y)));
                            eimfl.insert({p.first, p.second});
                        }
                        std::set<std::pair<int, int>> allte(subs[f.dst].edges.begin(),
                                                            subs[f.dst].edges.end());
                        if (euni != allte || einter != eimfl) continue;
                    }
                    out.base.add_square((int)fm, (int)lm, (int)rm, (int)bm);
                }
            }
        }
    }
    std::sort(out.base.squares.begin(), out.base.squares.end());
    return out;
}

// --------------------------------------------------------------- intervals ---

namespace {

// objects are cell masks over {0 .. cells-1}
struct IvMor {
    int src, dst;  // object indices
    int shift;     // translation on cells; 0 for the empty source
    int sign;      // +1, or -1 when reflections are enabled
};

uint32_t shift_mask(uint32_t mask, int shift, int sign, int cells) {
    uint32_t r = 0;
    for (int c = 0; c < cells; ++c) {
        if (!(mask & (1u << c))) continue;
        int img = sign > 0 ? c + shift : shift - c;
        if (img < 0 || img >= cells) return 0xffffffffu;  // out of range marker
        r |= 1u << img;
    }
    return r;
}

}  // namespace

Built interval_polytopes(int q, int L, bool reflections) {
    if (q < 1 || L < 0) throw std::invalid_argument("interval_polytopes: need q >= 1, L >= 0");
    const int cells = q * L;
    if (cells > 5) throw std::invalid_argument("interval_polytopes: range too large");
    Built out;
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    const int nobj = 1 << cells;
    auto obj_id = [&](uint32_t mask) {
        if (!mask) return std::string("iv()");
        std::string r = "iv(";
        bool first = true;
        for (int c = 0; c < cells; ++c)
            if (mask & (1u << c)) {
                r += (first ? "" : ",") + std::to_string(c);
                first = false;
            }
        return r + ")";
    };
    for (int m = 0; m < nobj; ++m) {
        H->add_object(obj_id(m));
        V->add_object(obj_id(m));
    }
    std::vector<IvMor> mors;
    std::map<std::array<int, 4>, int> midx;  // (src,dst,shift,sign) -> index
    auto canon = [&](IvMor m) {
        if (m.src == 0) {
            m.shift = 0;
            m.sign = 1;
        }
        return m;
    };
    auto add_mor = [&](IvMor m) {
        m = canon(m);
        std::array<int, 4> k{m.src, m.dst, m.shift, m.sign};
        if (midx.count(k)) return midx.at(k);
        std::string id = "(" + obj_id(m.src) + ">" + obj_id(m.dst) + "|" +
                         (m.sign < 0 ? "r" : "") + std::to_string(m.shift) + ")";
        H->add_morphism_idx("h" + id, m.src, m.dst);
        int i = V->add_morphism_idx("v" + id, m.dst, m.src);
        (void)i;
        midx[k] = static_cast<int>(mors.size());
        mors.push_back(m);
        return midx.at(k);
    };
    for (int p = 0; p < nobj; ++p) {
        for (int s = -cells; s <= cells; ++s) {
            for (int sign : (reflections ? std::vector<int>{1, -1} : std::vector<int>{1})) {
                uint32_t img = shift_mask(p, s, sign, cells);
                if (img == 0xffffffffu && p != 0) continue;
                if (p == 0) img = 0;
                for (int qq = 0; qq < nobj; ++qq) {
                    if ((img & ~static_cast<uint32_t>(qq)) != 0) continue;
                    add_mor({p, qq, s, sign});
                }
            }
        }
    }
    for (int o = 0; o < nobj; ++o) {
        int i = midx.at({o, o, 0, 1});
        H->set_identity_idx(o, i);
        V->set_identity_idx(o, i);
    }
    // note: hcat/vcat morphisms are index-aligned by construction
    auto compose_iv = [&](const IvMor& m2, const IvMor& m1) {
        // m2 after m1 (as inclusions)
        IvMor r;
        r.src = m1.src;
        r.dst = m2.dst;
        if (m2.sign > 0) {
            r.shift = m1.shift + m2.shift;
            r.sign = m1.sign;
        } else {
            r.shift = m2.shift - m1.shift;
            r.sign = -m1.sign;
        }
        return canon(r);
    };
    for (size_t m1 = 0; m1 < mors.size(); ++m1) {
        for (size_t m2 = 0; m2 < mors.size(); ++m2) {
            if (mors[m2].src != mors[m1].dst) continue;
            IvMor c = compose_iv(mors[m2], mors[m1]);
            int ci = midx.at({c.src, c.dst, c.shift, c.sign});
            H->set_composite_idx((int)m2, (int)m1, ci);
            V->set_composite_idx((int)m1, (int)m2, ci);
        }
    }
    out.cat.base.hcat = H;
    out.cat.base.vcat = V;
    out.cat.basepoint = 0;
    // squares by images in the ambient object: union covers, intersection is
    // exactly the image of the corner
    auto image_in = [&](const IvMor& m) { return shift_mask(m.src, m.shift, m.sign, cells); };
    for (size_t fm = 0; fm < mors.size(); ++fm) {
        const IvMor& f = mors[fm];
        for (size_t lm = 0; lm < mors.size(); ++lm) {
            const IvMor& l = mors[lm];  // underlying P'' -> P
            if (l.dst != f.src) continue;
            for (size_t rm = 0; rm < mors.size(); ++rm) {
                const IvMor& r = mors[rm];  // underlying R'' -> Q
                if (r.dst != f.dst) continue;
                for (size_t bm = 0; bm < mors.size(); ++bm) {
                    const IvMor& b = mors[bm];  // P'' -> R''
                    if (b.src != l.src || b.dst != r.src) continue;
                    IvMor via_top = compose_iv(f, l);
                    IvMor via_bot = compose_iv(r, b);
                    if (l.src != 0 &&
                        (via_top.shift != via_bot.shift || via_top.sign != via_bot.sign))
                        continue;
                    uint32_t imf = image_in(f), imr = image_in(r);
                    uint32_t imcorner = image_in(via_top);
                    if ((imf | imr) != static_cast<uint32_t>(f.dst)) continue;
                    if ((imf & imr) != imcorner) continue;
                    out.cat.base.add_square((int)fm, (int)lm, (int)rm, (int)bm);
                }
            }
        }
    }
    std::sort(out.cat.base.squares.begin(), out.cat.base.squares.end());
    // canonical completions: unshifted complements
    auto find_mor = [&](int src, int dst, int shift, int sign) {
        IvMor m = canon({src, dst, shift, sign});
        auto it = midx.find({m.src, m.dst, m.shift, m.sign});
        if (it == midx.end()) throw std::logic_error("interval completion: morphism missing");
        return it->second;
    };
    for (const auto& sp : dbl::all_spans(out.cat)) {
        const IvMor& f = mors[sp.first];
        const IvMor& u = mors[sp.second];
        uint32_t imf = image_in(f);
        uint32_t corner_img = image_in(compose_iv(f, u));
        uint32_t rr = (static_cast<uint32_t>(f.dst) & ~imf) | corner_img;
        int right = find_mor((int)rr, f.dst, 0, 1);
        IvMor bot = compose_iv(f, u);  // P'' -> Q, lands inside rr with same shift
        int bottom = find_mor(u.src, (int)rr, bot.shift, bot.sign);
        out.comp.span_complete[sp] = Square{sp.first, sp.second, right, bottom};
    }
    for (const auto& cs : dbl::all_cospans(out.cat)) {
        const IvMor& v = mors[cs.first];
        const IvMor& g = mors[cs.second];
        uint32_t imv = image_in(v);
        uint32_t corner_img = image_in(compose_iv(v, g));
        uint32_t aa = (static_cast<uint32_t>(v.dst) & ~imv) | corner_img;
        int top = find_mor((int)aa, v.dst, 0, 1);
        IvMor lft = compose_iv(v, g);
        int left = find_mor(g.src, (int)aa, lft.shift, lft.sign);
        out.comp.cospan_complete[cs] = Square{top, left, cs.first, cs.second};
    }
    for (const auto& m : dbl::all_span_morphisms(out.cat)) {
        const Square& s1 = out.comp.span_complete.at(m.from);
        const Square& s2 = out.comp.span_complete.at(m.to);
        const IvMor& qv = mors[m.q];
        int w = find_mor(mors[s2.right].src, mors[s1.right].src, qv.shift, qv.sign);
        out.comp.span_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.p, m.q,
                              m.r}] = w;
    }
    for (const auto& m : dbl::all_cospan_morphisms(out.cat)) {
        const Square& s1 = out.comp.cospan_complete.at(m.from);
        const Square& s2 = out.comp.cospan_complete.at(m.to);
        const IvMor& bv = mors[m.beta];
        int a = find_mor(mors[s2.top].src, mors[s1.top].src, bv.shift, bv.sign);
        out.comp.cospan_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.beta,
                                m.gamma, m.delta}] = a;
    }
    for (const Square& sq : out.cat.base.squares) {
        const Square& s0 = out.comp.span_complete.at({sq.top, sq.left});
        const IvMor& rv = mors[sq.right];
        out.comp.w_components[sq.key()] =
            find_mor(rv.src, mors[s0.right].src, rv.shift, rv.sign);
        const Square& c0 = out.comp.cospan_complete.at({sq.right, sq.bottom});
        const IvMor& tv = mors[sq.top];
        out.comp.u_components[sq.key()] =
            find_mor(tv.src, mors[c0.top].src, tv.shift, tv.sign);
    }
    return out;
}

// -------------------------------------------------------------------- path ---

SquaresCat path_double_category(const simp::TruncSSet& x) {
    if (x.bound < 3)
        throw std::invalid_argument("path_double_category: truncation bound must be at least 3");
    if (x.size(0) != 1)
        throw std::invalid_argument("path_double_category: input is not reduced");
    {
        simp::TruncSSet t3 = x;
        t3.bound = 3;
        t3.simplices.resize(4);
        t3.faces.resize(4);
        t3.degeneracies.resize(4);
        auto seg = simp::check_segal(t3, 2);
        if (!seg.pass)
            throw std::invalid_argument(
                "path_double_category: input fails the degree-2 Segal check at level 3");
    }
    auto H = std::make_shared<FinCat>();
    auto V = std::make_shared<FinCat>();
    for (int a = 0; a < x.size(1); ++a) {
        H->add_object(x.id(1, a));
        V->add_object(x.id(1, a));
    }
    // h-mor tau: d2 -> d1 ; v-mor tau: d1 -> d0
    for (int t = 0; t < x.size(2); ++t) {
        H->add_morphism_idx("h:" + x.id(2, t), x.face(2, 2, t), x.face(2, 1, t));
        V->add_morphism_idx("v:" + x.id(2, t), x.face(2, 1, t), x.face(2, 0, t));
    }
    for (int a = 0; a < x.size(1); ++a) {
        H->set_identity_idx(a, x.degeneracy(1, 1, a));
        V->set_identity_idx(a, x.degeneracy(1, 0, a));
    }
    // composition through the level-3 Segal bijections
    std::map<std::pair<int, int>, int> hpair, vpair;  // (d3, d1) / (d0, d2) -> sigma
    for (int s = 0; s < x.size(3); ++s) {
        auto hk = std::make_pair(x.face(3, 3, s), x.face(3, 1, s));
        auto vk = std::make_pair(x.face(3, 0, s), x.face(3, 2, s));
        if (hpair.count(hk) || vpair.count(vk))
            throw std::invalid_argument("path_double_category: Segal bijection not injective");
        hpair[hk] = s;
        vpair[vk] = s;
    }
    for (int t1 = 0; t1 < x.size(2); ++t1) {
        for (int t2 = 0; t2 < x.size(2); ++t2) {
            if (x.face(2, 1, t1) == x.face(2, 2, t2)) {  // h-composable t1 then t2
                auto it = hpair.find({t1, t2});
                if (it == hpair.end())
                    throw std::invalid_argument(
                        "path_double_category: Segal bijection not surjective (0,2)");
                H->set_composite_idx(t2, t1, x.face(3, 2, it->second));
            }
            if (x.face(2, 0, t1) == x.face(2, 1, t2)) {  // v-composable t1 then t2
                auto it = vpair.find({t2, t1});
                if (it == vpair.end())
                    throw std::invalid_argument(
                        "path_double_category: Segal bijection not surjective (1,3)");
                V->set_composite_idx(t2, t1, x.face(3, 1, it->second));
            }
        }
    }
    SquaresCat out;
    out.base.hcat = H;
    out.base.vcat = V;
    for (int s = 0; s < x.size(3); ++s)
        out.base.add_square(x.face(3, 1, s), x.face(3, 3, s), x.face(3, 2, s), x.face(3, 0, s));
    std::sort(out.base.squares.begin(), out.base.squares.end());
    out.basepoint = x.degeneracy(0, 0, 0);
    return out;
}

}  // namespace sqcat::ex

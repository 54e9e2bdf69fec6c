#include "sqcat/catcore.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sqcat::cat {

const std::vector<int> FinCat::empty_{};

void ValidationReport::add(std::string code, std::string detail) {
    violations.push_back({std::move(code), std::move(detail)});
}

void ValidationReport::sort() {
    std::sort(violations.begin(), violations.end());
    violations.erase(std::unique(violations.begin(), violations.end()), violations.end());
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    if (ok()) {
        os << "PASS (0 violations)\n";
        return os.str();
    }
    os << "FAIL (" << violations.size() << " violations)\n";
    for (const auto& v : violations) os << "  " << v.code << ": " << v.detail << "\n";
    return os.str();
}

int FinCat::add_object(const std::string& id) {
    if (obj_index_.count(id)) throw std::invalid_argument("duplicate object id: " + id);
    int idx = static_cast<int>(objects_.size());
    objects_.push_back(id);
    obj_index_[id] = idx;
    identity_.push_back(-1);
    out_.emplace_back();
    in_.emplace_back();
    return idx;
}

int FinCat::add_morphism(const std::string& id, const std::string& src, const std::string& dst) {
    if (mor_index_.count(id)) throw std::invalid_argument("duplicate morphism id: " + id);
    int idx = static_cast<int>(mor_ids_.size());
    mor_ids_.push_back(id);
    mor_index_[id] = idx;
    int s = object_index(src), d = object_index(dst);
    mor_src_.push_back(s);
    mor_dst_.push_back(d);
    raw_src_.push_back(src);
    raw_dst_.push_back(dst);
    if (s >= 0) out_[s].push_back(idx);
    if (d >= 0) in_[d].push_back(idx);
    return idx;
}

int FinCat::add_morphism_idx(const std::string& id, int src, int dst) {
    return add_morphism(id, objects_.at(src), objects_.at(dst));
}

void FinCat::set_identity(const std::string& obj, const std::string& mor) {
    int o = object_index(obj), m = morphism_index(mor);
    id_entries_.emplace_back(o, m);
    if (o >= 0) identity_[o] = m;
}

void FinCat::set_identity_idx(int obj, int mor) {
    identity_.at(obj) = mor;
    id_entries_.emplace_back(obj, mor);
}

void FinCat::set_composite(const std::string& g, const std::string& f, const std::string& gf) {
    int gi = morphism_index(g), fi = morphism_index(f), ci = morphism_index(gf);
    if (gi < 0 || fi < 0 || ci < 0)
        throw std::invalid_argument("set_composite: unknown morphism id");
    set_composite_idx(gi, fi, ci);
}

void FinCat::set_composite_idx(int g, int f, int gf) {
    comp_[(static_cast<long long>(g) << 32) | static_cast<unsigned>(f)] = gf;
}

int FinCat::identity(int obj) const { return identity_.at(obj); }

int FinCat::compose(int g, int f) const {
    if (g < 0 || f < 0) return -1;
    auto it = comp_.find((static_cast<long long>(g) << 32) | static_cast<unsigned>(f));
    return it == comp_.end() ? -1 : it->second;
}

int FinCat::object_index(const std::string& id) const {
    auto it = obj_index_.find(id);
    return it == obj_index_.end() ? -1 : it->second;
}

int FinCat::morphism_index(const std::string& id) const {
    auto it = mor_index_.find(id);
    return it == mor_index_.end() ? -1 : it->second;
}

std::vector<int> FinCat::hom(int x, int y) const {
    std::vector<int> r;
    for (int m : out_[x])
        if (mor_dst_[m] == y) r.push_back(m);
    return r;
}

const std::vector<int>& FinCat::out_of(int obj) const { return out_[obj]; }
const std::vector<int>& FinCat::into(int obj) const { return in_[obj]; }

int FinCat::inverse(int m) const {
    int s = mor_src_[m], d = mor_dst_[m];
    if (s < 0 || d < 0) return -1;
    for (int n : hom(d, s)) {
        if (compose(n, m) == identity_[s] && compose(m, n) == identity_[d]) return n;
    }
    return -1;
}

std::vector<std::array<int, 3>> FinCat::composition_entries() const {
    std::vector<std::array<int, 3>> r;
    r.reserve(comp_.size());
    for (const auto& [k, v] : comp_)
        r.push_back({static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffff), v});
    std::sort(r.begin(), r.end());
    return r;
}

ValidationReport validate_category(const FinCat& c) {
    ValidationReport rep;
    const int M = c.morphism_count();
    // dangling references
    for (int m = 0; m < M; ++m) {
        if (c.src(m) < 0) rep.add("unknown-source", "morphism " + c.morphism_id(m) + " source " + c.raw_src(m));
        if (c.dst(m) < 0) rep.add("unknown-target", "morphism " + c.morphism_id(m) + " target " + c.raw_dst(m));
    }
    // identities present with matching endpoints
    for (int o = 0; o < c.object_count(); ++o) {
        int e = c.identity(o);
        if (e < 0) {
            rep.add("missing-identity", "object " + c.object_id(o));
            continue;
        }
        if (c.src(e) != o || c.dst(e) != o)
            rep.add("identity-endpoints", "object " + c.object_id(o) + " identity " + c.morphism_id(e));
    }
    for (const auto& [o, m] : c.identity_entries()) {
        if (o < 0 || m < 0) rep.add("identity-reference", "unresolved identity entry");
    }
    // composition table: totality on composable pairs, endpoint coherence, no spurious entries
    auto entries = c.composition_entries();
    std::set<std::pair<int, int>> declared;
    for (const auto& [g, f, gf] : entries) {
        declared.insert({g, f});
        if (c.src(g) < 0 || c.dst(f) < 0) continue;
        if (c.dst(f) != c.src(g)) {
            rep.add("spurious-composite",
                    "(" + c.morphism_id(g) + "," + c.morphism_id(f) + ") not composable");
            continue;
        }
        if (c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
            rep.add("composite-endpoints",
                    "(" + c.morphism_id(g) + "," + c.morphism_id(f) + ") = " + c.morphism_id(gf));
    }
    for (int f = 0; f < M; ++f) {
        if (c.dst(f) < 0) continue;
        for (int g : c.out_of(c.dst(f))) {
            if (!declared.count({g, f}))
                rep.add("missing-composite",
                        "(" + c.morphism_id(g) + "," + c.morphism_id(f) + ")");
        }
    }
    if (!rep.ok()) {  // laws are only meaningful on a structurally complete table
        rep.sort();
        return rep;
    }
    // unit laws
    for (int f = 0; f < M; ++f) {
        int l = c.compose(c.identity(c.dst(f)), f);
        int r = c.compose(f, c.identity(c.src(f)));
        if (l != f) rep.add("unit-law", "id∘" + c.morphism_id(f));
        if (r != f) rep.add("unit-law", c.morphism_id(f) + "∘id");
    }
    // associativity over all composable triples
    for (int f = 0; f < M; ++f) {
        for (int g : c.out_of(c.dst(f))) {
            int gf = c.compose(g, f);
            for (int h : c.out_of(c.dst(g))) {
                int hg = c.compose(h, g);
                if (gf < 0 || hg < 0) continue;
                if (c.compose(h, gf) != c.compose(hg, f))
                    rep.add("associativity", "(" + c.morphism_id(h) + "," + c.morphism_id(g) +
                                                 "," + c.morphism_id(f) + ")");
            }
        }
    }
    rep.sort();
    return rep;
}

GroupoidCheck is_groupoid(const FinCat& c) {
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.inverse(m) < 0) return {false, m};
    }
    return {true, -1};
}

ValidationReport validate_functor(const FunctorData& f) {
    ValidationReport rep;
    const FinCat& S = *f.source;
    const FinCat& T = *f.target;
    if (static_cast<int>(f.obj_map.size()) != S.object_count() ||
        static_cast<int>(f.mor_map.size()) != S.morphism_count()) {
        rep.add("functor-shape", "map sizes do not match the source category");
        rep.sort();
        return rep;
    }
    for (int m = 0; m < S.morphism_count(); ++m) {
        int fm = f.mor_map[m];
        if (T.src(fm) != f.obj_map[S.src(m)] || T.dst(fm) != f.obj_map[S.dst(m)])
            rep.add("functor-endpoints", S.morphism_id(m));
    }
    for (int o = 0; o < S.object_count(); ++o) {
        if (f.mor_map[S.identity(o)] != T.identity(f.obj_map[o]))
            rep.add("functor-identity", S.object_id(o));
    }
    for (const auto& [g, x, gx] : S.composition_entries()) {
        if (T.compose(f.mor_map[g], f.mor_map[x]) != f.mor_map[gx])
            rep.add("functor-composition",
                    "(" + S.morphism_id(g) + "," + S.morphism_id(x) + ")");
    }
    rep.sort();
    return rep;
}

FunctorData identity_functor(std::shared_ptr<const FinCat> c) {
    FunctorData f;
    f.source = f.target = c;
    f.obj_map.resize(c->object_count());
    f.mor_map.resize(c->morphism_count());
    for (int i = 0; i < c->object_count(); ++i) f.obj_map[i] = i;
    for (int i = 0; i < c->morphism_count(); ++i) f.mor_map[i] = i;
    return f;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
    if (g.source.get() != f.target.get())
        throw std::invalid_argument("compose_functors: middle categories differ");
    FunctorData r;
    r.source = f.source;
    r.target = g.target;
    r.obj_map.resize(f.obj_map.size());
    r.mor_map.resize(f.mor_map.size());
    for (size_t i = 0; i < f.obj_map.size(); ++i) r.obj_map[i] = g.obj_map[f.obj_map[i]];
    for (size_t i = 0; i < f.mor_map.size(); ++i) r.mor_map[i] = g.mor_map[f.mor_map[i]];
    return r;
}

bool functors_equal(const FunctorData& a, const FunctorData& b) {
    return a.source.get() == b.source.get() && a.target.get() == b.target.get() &&
           a.obj_map == b.obj_map && a.mor_map == b.mor_map;
}

ValidationReport validate_nat_trans(const NatTransData& t) {
    ValidationReport rep;
    const FunctorData& F = t.source;
    const FunctorData& G = t.target;
    if (F.source.get() != G.source.get() || F.target.get() != G.target.get()) {
        rep.add("nat-trans-shape", "functors do not share source/target");
        rep.sort();
        return rep;
    }
    const FinCat& S = *F.source;
    const FinCat& T = *F.target;
    for (int o = 0; o < S.object_count(); ++o) {
        int cmp = t.components[o];
        if (T.src(cmp) != F.obj_map[o] || T.dst(cmp) != G.obj_map[o])
            rep.add("component-endpoints", S.object_id(o));
    }
    for (int m = 0; m < S.morphism_count(); ++m) {
        int x = S.src(m), y = S.dst(m);
        int lhs = T.compose(G.mor_map[m], t.components[x]);
        int rhs = T.compose(t.components[y], F.mor_map[m]);
        if (lhs < 0 || rhs < 0 || lhs != rhs)
            rep.add("naturality", S.morphism_id(m));
    }
    rep.sort();
    return rep;
}

std::string EquivalenceReport::to_string() const {
    std::ostringstream os;
    os << "functor valid: " << (functor_valid ? "yes" : "no")
       << "; fully faithful: " << (fully_faithful ? "yes" : "no")
       << "; essentially surjective: " << (essentially_surjective ? "yes" : "no")
       << "; equivalence: " << (equivalence() ? "yes" : "no");
    if (!detail.empty()) os << "\n" << detail;
    return os.str();
}

EquivalenceReport check_functor_equivalence(const FunctorData& f) {
    EquivalenceReport rep;
    rep.functor_valid = validate_functor(f).ok();
    if (!rep.functor_valid) {
        rep.detail = "functor axioms fail";
        return rep;
    }
    const FinCat& S = *f.source;
    const FinCat& T = *f.target;
    rep.fully_faithful = true;
    for (int x = 0; x < S.object_count() && rep.fully_faithful; ++x) {
        for (int y = 0; y < S.object_count() && rep.fully_faithful; ++y) {
            auto hs = S.hom(x, y);
            auto ht = T.hom(f.obj_map[x], f.obj_map[y]);
            std::set<int> images;
            for (int m : hs) images.insert(f.mor_map[m]);
            if (images.size() != hs.size()) {
                rep.fully_faithful = false;
                rep.detail = "not faithful on hom(" + S.object_id(x) + "," + S.object_id(y) + ")";
            } else if (images.size() != ht.size()) {
                rep.fully_faithful = false;
                rep.detail = "not full on hom(" + S.object_id(x) + "," + S.object_id(y) + ")";
            }
        }
    }
    rep.essentially_surjective = true;
    for (int t = 0; t < T.object_count(); ++t) {
        bool hit = false;
        for (int x = 0; x < S.object_count() && !hit; ++x) {
            if (f.obj_map[x] == t) hit = true;
            for (int m : T.hom(f.obj_map[x], t)) {
                if (T.is_iso(m)) {
                    hit = true;
                    break;
                }
            }
        }
        if (!hit) {
            rep.essentially_surjective = false;
            if (!rep.detail.empty()) rep.detail += "; ";
            rep.detail += "object " + T.object_id(t) + " not essentially in the image";
            break;
        }
    }
    return rep;
}

int PseudoPullback::find_morphism(int src_obj, int dst_obj, int phi, int psi) const {
    auto it = mor_lookup_.find({src_obj, dst_obj, phi, psi});
    return it == mor_lookup_.end() ? -1 : it->second;
}

PseudoPullback pseudo_pullback(const FunctorData& F, const FunctorData& G,
                               bool require_groupoid_target) {
    if (F.target.get() != G.target.get())
        throw std::invalid_argument("pseudo_pullback: functors must share a target");
    PseudoPullback out;
    const FinCat& C = *F.source;
    const FinCat& D = *G.source;
    const FinCat& E = *F.target;
    if (require_groupoid_target) {
        auto g = is_groupoid(E);
        if (!g.groupoid) {
            out.rejected = "target is not a groupoid; witness " + E.morphism_id(g.witness);
            return out;
        }
    }
    auto cat = std::make_shared<FinCat>();
    for (int c = 0; c < C.object_count(); ++c) {
        for (int d = 0; d < D.object_count(); ++d) {
            for (int a : E.hom(F.obj_map[c], G.obj_map[d])) {
                if (!E.is_iso(a)) continue;
                out.triples.push_back({c, d, a});
                cat->add_object("(" + C.object_id(c) + "|" + D.object_id(d) + "|" +
                                E.morphism_id(a) + ")");
            }
        }
    }
    const int N = static_cast<int>(out.triples.size());
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            auto [c1, d1, a1] = out.triples[i];
            auto [c2, d2, a2] = out.triples[j];
            for (int phi : C.hom(c1, c2)) {
                for (int psi : D.hom(d1, d2)) {
                    if (E.compose(G.mor_map[psi], a1) != E.compose(a2, F.mor_map[phi])) continue;
                    int m = cat->add_morphism_idx(
                        "(" + C.morphism_id(phi) + "|" + D.morphism_id(psi) + ")@" +
                            std::to_string(i) + "->" + std::to_string(j),
                        i, j);
                    out.mor_pairs.push_back({phi, psi});
                    out.mor_lookup_[{i, j, phi, psi}] = m;
                }
            }
        }
    }
    // identities and composition, componentwise
    for (int i = 0; i < N; ++i) {
        auto [c, d, a] = out.triples[i];
        cat->set_identity_idx(i, out.mor_lookup_.at({i, i, C.identity(c), D.identity(d)}));
    }
    for (int m1 = 0; m1 < cat->morphism_count(); ++m1) {
        int mid = cat->dst(m1);
        for (int m2 : cat->out_of(mid)) {
            int phi = C.compose(out.mor_pairs[m2][0], out.mor_pairs[m1][0]);
            int psi = D.compose(out.mor_pairs[m2][1], out.mor_pairs[m1][1]);
            int tgt = cat->dst(m2);
            cat->set_composite_idx(m2, m1, out.mor_lookup_.at({cat->src(m1), tgt, phi, psi}));
        }
    }
    out.category = cat;
    out.proj1.source = cat;
    out.proj1.target = F.source;
    out.proj2.source = cat;
    out.proj2.target = G.source;
    for (int i = 0; i < N; ++i) {
        out.proj1.obj_map.push_back(out.triples[i][0]);
        out.proj2.obj_map.push_back(out.triples[i][1]);
    }
    for (const auto& p : out.mor_pairs) {
        out.proj1.mor_map.push_back(p[0]);
        out.proj2.mor_map.push_back(p[1]);
    }
    return out;
}

StrictPullback strict_pullback(const FunctorData& F, const FunctorData& G) {
    if (F.target.get() != G.target.get())
        throw std::invalid_argument("strict_pullback: functors must share a target");
    StrictPullback out;
    const FinCat& C = *F.source;
    const FinCat& D = *G.source;
    auto cat = std::make_shared<FinCat>();
    std::map<std::array<int, 2>, int> obj_lookup;
    for (int c = 0; c < C.object_count(); ++c) {
        for (int d = 0; d < D.object_count(); ++d) {
            if (F.obj_map[c] != G.obj_map[d]) continue;
            obj_lookup[{c, d}] = cat->add_object("(" + C.object_id(c) + "|" + D.object_id(d) + ")");
            out.obj_pairs.push_back({c, d});
        }
    }
    std::map<std::array<int, 4>, int> mor_lookup;
    const int N = static_cast<int>(out.obj_pairs.size());
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            auto [c1, d1] = out.obj_pairs[i];
            auto [c2, d2] = out.obj_pairs[j];
            for (int phi : C.hom(c1, c2)) {
                for (int psi : D.hom(d1, d2)) {
                    if (F.mor_map[phi] != G.mor_map[psi]) continue;
                    int m = cat->add_morphism_idx("(" + C.morphism_id(phi) + "|" +
                                                      D.morphism_id(psi) + ")@" +
                                                      std::to_string(i) + "->" + std::to_string(j),
                                                  i, j);
                    out.mor_pairs.push_back({phi, psi});
                    mor_lookup[{i, j, phi, psi}] = m;
                }
            }
        }
    }
    for (int i = 0; i < N; ++i) {
        auto [c, d] = out.obj_pairs[i];
        cat->set_identity_idx(i, mor_lookup.at({i, i, C.identity(c), D.identity(d)}));
    }
    for (int m1 = 0; m1 < cat->morphism_count(); ++m1) {
        for (int m2 : cat->out_of(cat->dst(m1))) {
            int phi = C.compose(out.mor_pairs[m2][0], out.mor_pairs[m1][0]);
            int psi = D.compose(out.mor_pairs[m2][1], out.mor_pairs[m1][1]);
            cat->set_composite_idx(m2, m1, mor_lookup.at({cat->src(m1), cat->dst(m2), phi, psi}));
        }
    }
    out.category = cat;
    out.proj1.source = cat;
    out.proj1.target = F.source;
    out.proj2.source = cat;
    out.proj2.target = G.source;
    for (const auto& p : out.obj_pairs) {
        out.proj1.obj_map.push_back(p[0]);
        out.proj2.obj_map.push_back(p[1]);
    }
    for (const auto& p : out.mor_pairs) {
        out.proj1.mor_map.push_back(p[0]);
        out.proj2.mor_map.push_back(p[1]);
    }
    return out;
}

bool is_isomorphism_of_categories(const FunctorData& f) {
    if (!validate_functor(f).ok()) return false;
    const FinCat& S = *f.source;
    const FinCat& T = *f.target;
    if (S.object_count() != T.object_count() || S.morphism_count() != T.morphism_count())
        return false;
    std::set<int> objs(f.obj_map.begin(), f.obj_map.end());
    std::set<int> mors(f.mor_map.begin(), f.mor_map.end());
    return static_cast<int>(objs.size()) == T.object_count() &&
           static_cast<int>(mors.size()) == T.morphism_count();
}

}  // namespace sqcat::cat

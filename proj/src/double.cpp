#include "sqcat/double.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sqcat::dbl {

using cat::FinCat;
using cat::ValidationReport;

void FlatDoubleCat::add_square(int t, int l, int r, int b) {
    if (square_set.insert({t, l, r, b}).second) squares.push_back({t, l, r, b});
}

std::string FlatDoubleCat::square_str(const Square& s) const {
    return "(" + hcat->morphism_id(s.top) + "," + vcat->morphism_id(s.left) + "," +
           vcat->morphism_id(s.right) + "," + hcat->morphism_id(s.bottom) + ")";
}

std::vector<Square> FlatDoubleCat::squares_by_top_left(int t, int l) const {
    std::vector<Square> r;
    for (const auto& s : squares)
        if (s.top == t && s.left == l) r.push_back(s);
    return r;
}

std::vector<Square> FlatDoubleCat::squares_by_right_bottom(int rr, int b) const {
    std::vector<Square> r;
    for (const auto& s : squares)
        if (s.right == rr && s.bottom == b) r.push_back(s);
    return r;
}

int SquaresCat::point_h(int obj) const {
    auto h = base.hcat->hom(basepoint, obj);
    if (h.size() != 1) throw std::logic_error("pointing: no unique h-mor from O");
    return h[0];
}

int SquaresCat::point_v(int obj) const {
    auto v = base.vcat->hom(obj, basepoint);
    if (v.size() != 1) throw std::logic_error("pointing: no unique v-mor to O");
    return v[0];
}

ValidationReport validate_flat_double(const FlatDoubleCat& d) {
    ValidationReport rep;
    const FinCat& H = *d.hcat;
    const FinCat& V = *d.vcat;
    // shared object set, same order
    if (H.object_count() != V.object_count()) {
        rep.add("object-sets", "hcat and vcat have different object counts");
    } else {
        for (int i = 0; i < H.object_count(); ++i)
            if (H.object_id(i) != V.object_id(i))
                rep.add("object-sets", "object " + std::to_string(i) + ": " + H.object_id(i) +
                                           " vs " + V.object_id(i));
    }
    auto hr = validate_category(H);
    for (auto& v : hr.violations) rep.add("hcat-" + v.code, v.detail);
    auto vr = validate_category(V);
    for (auto& v : vr.violations) rep.add("vcat-" + v.code, v.detail);
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }
    // boundary compatibility
    for (const auto& s : d.squares) {
        bool ok = H.src(s.top) == V.src(s.left) && H.dst(s.top) == V.src(s.right) &&
                  V.dst(s.left) == H.src(s.bottom) && V.dst(s.right) == H.dst(s.bottom);
        if (!ok) rep.add("square-boundary", d.square_str(s));
    }
    // horizontal identity squares: (id_A, u, u, id_C) for every v-mor u
    for (int u = 0; u < V.morphism_count(); ++u) {
        if (!d.has_square(H.identity(V.src(u)), u, u, H.identity(V.dst(u))))
            rep.add("missing-identity-square-h", "v-mor " + V.morphism_id(u));
    }
    // vertical identity squares: (f, id, id, f) for every h-mor f
    for (int f = 0; f < H.morphism_count(); ++f) {
        if (!d.has_square(f, V.identity(H.src(f)), V.identity(H.dst(f)), f))
            rep.add("missing-identity-square-v", "h-mor " + H.morphism_id(f));
    }
    // pasting closure, via edge indexes so large square sets stay tractable
    std::map<int, std::vector<const Square*>> by_left, by_top;
    for (const auto& s : d.squares) {
        by_left[s.left].push_back(&s);
        by_top[s.top].push_back(&s);
    }
    for (const auto& s1 : d.squares) {
        if (auto it = by_left.find(s1.right); it != by_left.end()) {
            for (const Square* s2 : it->second) {  // horizontal: s2 to the right of s1
                int t = H.compose(s2->top, s1.top);
                int b = H.compose(s2->bottom, s1.bottom);
                if (t >= 0 && b >= 0 && !d.has_square(t, s1.left, s2->right, b))
                    rep.add("missing-pasting-h", d.square_str(s1) + "*" + d.square_str(*s2));
            }
        }
        if (auto it = by_top.find(s1.bottom); it != by_top.end()) {
            for (const Square* s2 : it->second) {  // vertical: s2 below s1
                int l = V.compose(s2->left, s1.left);
                int r = V.compose(s2->right, s1.right);
                if (l >= 0 && r >= 0 && !d.has_square(s1.top, l, r, s2->bottom))
                    rep.add("missing-pasting-v", d.square_str(s1) + "*" + d.square_str(*s2));
            }
        }
    }
    rep.sort();
    return rep;
}

ValidationReport validate_squares_category(const SquaresCat& d) {
    ValidationReport rep = validate_flat_double(d.base);
    const FinCat& H = *d.base.hcat;
    const FinCat& V = *d.base.vcat;
    if (d.basepoint < 0 || d.basepoint >= H.object_count()) {
        rep.add("basepoint", "basepoint missing or out of range");
        rep.sort();
        return rep;
    }
    for (int a = 0; a < H.object_count(); ++a) {
        auto h = H.hom(d.basepoint, a);
        if (h.size() != 1)
            rep.add("pointing-h", "object " + H.object_id(a) + " has " +
                                      std::to_string(h.size()) + " h-mors from the basepoint");
        auto v = V.hom(a, d.basepoint);
        if (v.size() != 1)
            rep.add("pointing-v", "object " + V.object_id(a) + " has " +
                                      std::to_string(v.size()) + " v-mors to the basepoint");
    }
    rep.sort();
    return rep;
}

WeqSets weak_equivalences(const SquaresCat& d) {
    WeqSets w;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    int idO_h = H.identity(d.basepoint);
    int idO_v = V.identity(d.basepoint);
    for (int f = 0; f < H.morphism_count(); ++f) {
        Square s{f, d.point_v(H.src(f)), d.point_v(H.dst(f)), idO_h};
        if (d.base.has_square(s.top, s.left, s.right, s.bottom)) {
            w.hweq.push_back(f);
            w.h_witness[f] = s;
        }
    }
    for (int u = 0; u < V.morphism_count(); ++u) {
        Square s{d.point_h(V.src(u)), idO_v, u, d.point_h(V.dst(u))};
        if (d.base.has_square(s.top, s.left, s.right, s.bottom)) {
            w.vweq.push_back(u);
            w.v_witness[u] = s;
        }
    }
    return w;
}

std::vector<std::pair<int, int>> all_spans(const SquaresCat& d) {
    std::vector<std::pair<int, int>> r;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    for (int f = 0; f < H.morphism_count(); ++f)
        for (int u : V.out_of(H.src(f))) r.emplace_back(f, u);
    return r;
}

std::vector<std::pair<int, int>> all_cospans(const SquaresCat& d) {
    std::vector<std::pair<int, int>> r;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    for (int v = 0; v < V.morphism_count(); ++v)
        for (int g : H.into(V.dst(v))) r.emplace_back(v, g);
    return r;
}

std::vector<SpanMorphism> all_span_morphisms(const SquaresCat& d) {
    std::vector<SpanMorphism> out;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    auto spans = all_spans(d);
    for (const auto& s : spans) {
        auto [f, u] = s;
        int A = H.src(f), B = H.dst(f), C = V.dst(u);
        for (const auto& s2 : spans) {
            auto [f2, u2] = s2;
            int A2 = H.src(f2), B2 = H.dst(f2), C2 = V.dst(u2);
            for (int p : V.hom(A, A2)) {
                for (int q : V.hom(B, B2)) {
                    if (!d.base.has_square(f, p, q, f2)) continue;
                    for (int r : V.hom(C, C2)) {
                        if (V.compose(r, u) != V.compose(u2, p)) continue;
                        out.push_back({s, s2, p, q, r});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<CospanMorphism> all_cospan_morphisms(const SquaresCat& d) {
    std::vector<CospanMorphism> out;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    auto cospans = all_cospans(d);
    for (const auto& s : cospans) {
        auto [v, g] = s;
        int B = V.src(v), D = V.dst(v), C = H.src(g);
        for (const auto& s2 : cospans) {
            auto [v2, g2] = s2;
            int B2 = V.src(v2), D2 = V.dst(v2), C2 = H.src(g2);
            for (int gamma : V.hom(C, C2)) {
                for (int delta : V.hom(D, D2)) {
                    if (!d.base.has_square(g, gamma, delta, g2)) continue;
                    for (int beta : V.hom(B, B2)) {
                        if (V.compose(delta, v) != V.compose(v2, beta)) continue;
                        out.push_back({s, s2, beta, gamma, delta});
                    }
                }
            }
        }
    }
    return out;
}

namespace {

std::string span_str(const SquaresCat& d, std::pair<int, int> s) {
    return "span(" + d.hcat().morphism_id(s.first) + "," + d.vcat().morphism_id(s.second) + ")";
}

std::string cospan_str(const SquaresCat& d, std::pair<int, int> s) {
    return "cospan(" + d.vcat().morphism_id(s.first) + "," + d.hcat().morphism_id(s.second) + ")";
}

// Checks the span half of the axioms: section + functoriality + w shape and
// naturality. The cospan half is handled by the caller through duality.
void check_span_side(const SquaresCat& d, const CompletionData& comp, AxiomReport& rep) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    // (i) section on objects
    for (const auto& s : all_spans(d)) {
        auto it = comp.span_complete.find(s);
        if (it == comp.span_complete.end()) {
            rep.missing.push_back(span_str(d, s));
            continue;
        }
        const Square& sq = it->second;
        if (sq.top != s.first || sq.left != s.second)
            rep.failures.push_back("span completion does not restrict to its span: " +
                                   span_str(d, s));
        else if (!d.base.has_square(sq.top, sq.left, sq.right, sq.bottom))
            rep.failures.push_back("span completion is not a square: " + span_str(d, s));
    }
    if (!rep.missing.empty()) return;
    // (i) functoriality of the action
    auto sms = all_span_morphisms(d);
    auto act = [&](const SpanMorphism& m) -> int {
        auto it = comp.span_action.find(
            {m.from.first, m.from.second, m.to.first, m.to.second, m.p, m.q, m.r});
        return it == comp.span_action.end() ? -1 : it->second;
    };
    for (const auto& m : sms) {
        int w = act(m);
        if (w < 0) {
            rep.missing.push_back("action on " + span_str(d, m.from) + "->" + span_str(d, m.to) +
                                  " [" + V.morphism_id(m.p) + "," + V.morphism_id(m.q) + "," +
                                  V.morphism_id(m.r) + "]");
            continue;
        }
        const Square& s1 = comp.span_complete.at(m.from);
        const Square& s2 = comp.span_complete.at(m.to);
        // bottom face square and right all-vertical face
        if (!d.base.has_square(s1.bottom, m.r, w, s2.bottom))
            rep.failures.push_back("span action bottom face not a square: " + span_str(d, m.from) +
                                   "->" + span_str(d, m.to));
        if (V.compose(w, s1.right) != V.compose(s2.right, m.q))
            rep.failures.push_back("span action right face does not commute: " +
                                   span_str(d, m.from) + "->" + span_str(d, m.to));
    }
    if (!rep.missing.empty()) return;
    // identity and composition functoriality
    for (const auto& s : all_spans(d)) {
        int A = H.src(s.first), B = H.dst(s.first), C = V.dst(s.second);
        SpanMorphism idm{s, s, V.identity(A), V.identity(B), V.identity(C)};
        const Square& sq = comp.span_complete.at(s);
        if (act(idm) != V.identity(V.dst(sq.right)))
            rep.failures.push_back("span action not unital at " + span_str(d, s));
    }
    std::map<std::pair<int, int>, std::vector<int>> by_from;  // span -> indices into sms
    std::map<std::pair<int, int>, std::vector<int>> by_to;
    for (size_t i = 0; i < sms.size(); ++i) {
        by_from[sms[i].from].push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < sms.size(); ++i) {
        const auto& m1 = sms[i];
        for (int j : by_from[m1.to]) {
            const auto& m2 = sms[j];
            SpanMorphism c{m1.from, m2.to, V.compose(m2.p, m1.p), V.compose(m2.q, m1.q),
                           V.compose(m2.r, m1.r)};
            if (c.p < 0 || c.q < 0 || c.r < 0) continue;
            int lhs = act(c);
            int rhs = V.compose(act(m2), act(m1));
            if (lhs != rhs)
                rep.failures.push_back("span action not functorial on " + span_str(d, m1.from) +
                                       "->" + span_str(d, m1.to) + "->" + span_str(d, m2.to));
        }
    }
    // (ii) w components: shape per square
    for (const auto& sq : d.base.squares) {
        auto it = comp.w_components.find(sq.key());
        if (it == comp.w_components.end()) {
            rep.missing.push_back("w component for " + d.base.square_str(sq));
            continue;
        }
        int w = it->second;
        const Square& s0 = comp.span_complete.at({sq.top, sq.left});
        if (V.src(w) != V.dst(s0.right) || V.dst(w) != V.dst(sq.right)) {
            rep.failures.push_back("w component endpoints wrong for " + d.base.square_str(sq));
            continue;
        }
        if (!d.base.has_square(s0.bottom, V.identity(H.src(s0.bottom)), w, sq.bottom))
            rep.failures.push_back("w bottom face not a square for " + d.base.square_str(sq));
        if (V.compose(w, s0.right) != sq.right)
            rep.failures.push_back("w right face does not commute for " + d.base.square_str(sq));
    }
    if (!rep.missing.empty()) return;
    // (ii) naturality of w against every square morphism; a square morphism is
    // a vertical transformation between squares, i.e. components (pA,pB,pC,pD)
    // with mixed faces squares and vertical faces commuting.
    for (const auto& s1 : d.base.squares) {
        int A = H.src(s1.top), B = H.dst(s1.top), C = V.dst(s1.left), D = V.dst(s1.right);
        for (const auto& s2 : d.base.squares) {
            int A2 = H.src(s2.top), B2 = H.dst(s2.top), C2 = V.dst(s2.left), D2 = V.dst(s2.right);
            for (int pA : V.hom(A, A2)) {
                for (int pB : V.hom(B, B2)) {
                    if (!d.base.has_square(s1.top, pA, pB, s2.top)) continue;
                    for (int pC : V.hom(C, C2)) {
                        if (V.compose(pC, s1.left) != V.compose(s2.left, pA)) continue;
                        for (int pD : V.hom(D, D2)) {
                            if (!d.base.has_square(s1.bottom, pC, pD, s2.bottom)) continue;
                            if (V.compose(pD, s1.right) != V.compose(s2.right, pB)) continue;
                            // induced map on completions is the span action of (pA,pB,pC)
                            auto it = comp.span_action.find({s1.top, s1.left, s2.top, s2.left,
                                                             pA, pB, pC});
                            if (it == comp.span_action.end()) continue;  // covered above
                            int sw = it->second;
                            int w1 = comp.w_components.at(s1.key());
                            int w2 = comp.w_components.at(s2.key());
                            if (V.compose(w2, sw) != V.compose(pD, w1))
                                rep.failures.push_back("w not natural against morphism " +
                                                       d.base.square_str(s1) + "->" +
                                                       d.base.square_str(s2));
                        }
                    }
                }
            }
        }
    }
}

void check_cospan_side(const SquaresCat& d, const CompletionData& comp, AxiomReport& rep,
                       const WeqSets& weqs) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    // (iii) section on objects
    for (const auto& s : all_cospans(d)) {
        auto it = comp.cospan_complete.find(s);
        if (it == comp.cospan_complete.end()) {
            rep.missing.push_back(cospan_str(d, s));
            continue;
        }
        const Square& sq = it->second;
        if (sq.right != s.first || sq.bottom != s.second)
            rep.failures.push_back("cospan completion does not restrict to its cospan: " +
                                   cospan_str(d, s));
        else if (!d.base.has_square(sq.top, sq.left, sq.right, sq.bottom))
            rep.failures.push_back("cospan completion is not a square: " + cospan_str(d, s));
    }
    if (!rep.missing.empty()) return;
    auto cms = all_cospan_morphisms(d);
    auto act = [&](const CospanMorphism& m) -> int {
        auto it = comp.cospan_action.find(
            {m.from.first, m.from.second, m.to.first, m.to.second, m.beta, m.gamma, m.delta});
        return it == comp.cospan_action.end() ? -1 : it->second;
    };
    for (const auto& m : cms) {
        int a = act(m);
        if (a < 0) {
            rep.missing.push_back("action on " + cospan_str(d, m.from) + "->" +
                                  cospan_str(d, m.to));
            continue;
        }
        const Square& s1 = comp.cospan_complete.at(m.from);
        const Square& s2 = comp.cospan_complete.at(m.to);
        if (!d.base.has_square(s1.top, a, m.beta, s2.top))
            rep.failures.push_back("cospan action top face not a square: " + cospan_str(d, m.from) +
                                   "->" + cospan_str(d, m.to));
        if (V.compose(s2.left, a) != V.compose(m.gamma, s1.left))
            rep.failures.push_back("cospan action left face does not commute: " +
                                   cospan_str(d, m.from) + "->" + cospan_str(d, m.to));
    }
    if (!rep.missing.empty()) return;
    for (const auto& s : all_cospans(d)) {
        int B = V.src(s.first), D = V.dst(s.first), C = H.src(s.second);
        CospanMorphism idm{s, s, V.identity(B), V.identity(C), V.identity(D)};
        const Square& sq = comp.cospan_complete.at(s);
        if (act(idm) != V.identity(H.src(sq.top)))
            rep.failures.push_back("cospan action not unital at " + cospan_str(d, s));
    }
    std::map<std::pair<int, int>, std::vector<int>> by_from;
    for (size_t i = 0; i < cms.size(); ++i) by_from[cms[i].from].push_back(static_cast<int>(i));
    for (size_t i = 0; i < cms.size(); ++i) {
        const auto& m1 = cms[i];
        for (int j : by_from[m1.to]) {
            const auto& m2 = cms[j];
            CospanMorphism c{m1.from, m2.to, V.compose(m2.beta, m1.beta),
                             V.compose(m2.gamma, m1.gamma), V.compose(m2.delta, m1.delta)};
            if (c.beta < 0 || c.gamma < 0 || c.delta < 0) continue;
            if (act(c) != V.compose(act(m2), act(m1)))
                rep.failures.push_back("cospan action not functorial on " + cospan_str(d, m1.from) +
                                       "->" + cospan_str(d, m1.to) + "->" + cospan_str(d, m2.to));
        }
    }
    // (iv) u components with the weak-equivalence requirement
    for (const auto& sq : d.base.squares) {
        auto it = comp.u_components.find(sq.key());
        if (it == comp.u_components.end()) {
            rep.missing.push_back("u component for " + d.base.square_str(sq));
            continue;
        }
        int u = it->second;
        const Square& s0 = comp.cospan_complete.at({sq.right, sq.bottom});
        if (V.src(u) != H.src(s0.top) || V.dst(u) != H.src(sq.top)) {
            rep.failures.push_back("u component endpoints wrong for " + d.base.square_str(sq));
            continue;
        }
        if (!d.base.has_square(s0.top, u, V.identity(H.dst(sq.top)), sq.top))
            rep.failures.push_back("u top face not a square for " + d.base.square_str(sq));
        if (V.compose(sq.left, u) != s0.left)
            rep.failures.push_back("u left face does not commute for " + d.base.square_str(sq));
        if (!weqs.is_vweq(u))
            rep.failures.push_back("u component not a weak equivalence for " +
                                   d.base.square_str(sq));
    }
    if (!rep.missing.empty()) return;
    // naturality of u
    for (const auto& s1 : d.base.squares) {
        int A = H.src(s1.top), B = H.dst(s1.top), C = V.dst(s1.left), D = V.dst(s1.right);
        for (const auto& s2 : d.base.squares) {
            int A2 = H.src(s2.top), B2 = H.dst(s2.top), C2 = V.dst(s2.left), D2 = V.dst(s2.right);
            for (int pA : V.hom(A, A2)) {
                for (int pB : V.hom(B, B2)) {
                    if (!d.base.has_square(s1.top, pA, pB, s2.top)) continue;
                    for (int pC : V.hom(C, C2)) {
                        if (V.compose(pC, s1.left) != V.compose(s2.left, pA)) continue;
                        for (int pD : V.hom(D, D2)) {
                            if (!d.base.has_square(s1.bottom, pC, pD, s2.bottom)) continue;
                            if (V.compose(pD, s1.right) != V.compose(s2.right, pB)) continue;
                            auto it = comp.cospan_action.find({s1.right, s1.bottom, s2.right,
                                                               s2.bottom, pB, pC, pD});
                            if (it == comp.cospan_action.end()) continue;
                            int ta = it->second;
                            int u1 = comp.u_components.at(s1.key());
                            int u2 = comp.u_components.at(s2.key());
                            if (V.compose(u2, ta) != V.compose(pA, u1))
                                rep.failures.push_back("u not natural against morphism " +
                                                       d.base.square_str(s1) + "->" +
                                                       d.base.square_str(s2));
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

std::string AxiomReport::to_string() const {
    std::ostringstream os;
    if (pass) {
        os << "PASS\n";
        return os.str();
    }
    if (!missing.empty()) {
        os << "INCOMPLETE DATA (" << missing.size() << " records)\n";
        for (const auto& m : missing) os << "  missing: " << m << "\n";
    }
    if (!failures.empty()) {
        os << "FAIL (" << failures.size() << " violations)\n";
        for (const auto& f : failures) os << "  " << f << "\n";
    }
    return os.str();
}

AxiomReport check_completion_axioms(const SquaresCat& d, const CompletionData& comp,
                                    CompletionMode mode) {
    AxiomReport rep;
    check_span_side(d, comp, rep);
    if (mode == CompletionMode::Stable && rep.missing.empty() && rep.failures.empty()) {
        auto weqs = weak_equivalences(d);
        check_cospan_side(d, comp, rep, weqs);
    }
    std::sort(rep.failures.begin(), rep.failures.end());
    std::sort(rep.missing.begin(), rep.missing.end());
    rep.pass = rep.failures.empty() && rep.missing.empty();
    return rep;
}

CompletionData synthesize_completion_data(const SquaresCat& d) {
    CompletionData comp;
    const FinCat& V = d.vcat();
    for (const auto& s : all_spans(d)) {
        auto cands = d.base.squares_by_top_left(s.first, s.second);
        if (!cands.empty()) comp.span_complete[s] = cands.front();
    }
    for (const auto& s : all_cospans(d)) {
        auto cands = d.base.squares_by_right_bottom(s.first, s.second);
        if (!cands.empty()) comp.cospan_complete[s] = cands.front();
    }
    for (const auto& m : all_span_morphisms(d)) {
        auto i1 = comp.span_complete.find(m.from);
        auto i2 = comp.span_complete.find(m.to);
        if (i1 == comp.span_complete.end() || i2 == comp.span_complete.end()) continue;
        const Square& s1 = i1->second;
        const Square& s2 = i2->second;
        // prefer identities so that stable inputs get identity actions
        std::vector<int> cands = V.hom(V.dst(s1.right), V.dst(s2.right));
        std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
            bool ia = a == V.identity(V.src(a)) && V.src(a) == V.dst(a);
            bool ib = b == V.identity(V.src(b)) && V.src(b) == V.dst(b);
            return ia > ib;
        });
        for (int w : cands) {
            if (!d.base.has_square(s1.bottom, m.r, w, s2.bottom)) continue;
            if (V.compose(w, s1.right) != V.compose(s2.right, m.q)) continue;
            comp.span_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.p, m.q,
                              m.r}] = w;
            break;
        }
    }
    for (const auto& m : all_cospan_morphisms(d)) {
        auto i1 = comp.cospan_complete.find(m.from);
        auto i2 = comp.cospan_complete.find(m.to);
        if (i1 == comp.cospan_complete.end() || i2 == comp.cospan_complete.end()) continue;
        const Square& s1 = i1->second;
        const Square& s2 = i2->second;
        const FinCat& H = d.hcat();
        std::vector<int> cands = V.hom(H.src(s1.top), H.src(s2.top));
        std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
            bool ia = a == V.identity(V.src(a)) && V.src(a) == V.dst(a);
            bool ib = b == V.identity(V.src(b)) && V.src(b) == V.dst(b);
            return ia > ib;
        });
        for (int a : cands) {
            if (!d.base.has_square(s1.top, a, m.beta, s2.top)) continue;
            if (V.compose(s2.left, a) != V.compose(m.gamma, s1.left)) continue;
            comp.cospan_action[{m.from.first, m.from.second, m.to.first, m.to.second, m.beta,
                                m.gamma, m.delta}] = a;
            break;
        }
    }
    const FinCat& H = d.hcat();
    for (const auto& sq : d.base.squares) {
        auto it = comp.span_complete.find({sq.top, sq.left});
        if (it != comp.span_complete.end()) {
            const Square& s0 = it->second;
            std::vector<int> cands = V.hom(V.dst(s0.right), V.dst(sq.right));
            std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
                bool ia = a == V.identity(V.src(a)) && V.src(a) == V.dst(a);
                bool ib = b == V.identity(V.src(b)) && V.src(b) == V.dst(b);
                return ia > ib;
            });
            for (int w : cands) {
                if (!d.base.has_square(s0.bottom, V.identity(H.src(s0.bottom)), w, sq.bottom))
                    continue;
                if (V.compose(w, s0.right) != sq.right) continue;
                comp.w_components[sq.key()] = w;
                break;
            }
        }
        auto jt = comp.cospan_complete.find({sq.right, sq.bottom});
        if (jt != comp.cospan_complete.end()) {
            const Square& s0 = jt->second;
            std::vector<int> cands = V.hom(H.src(s0.top), H.src(sq.top));
            std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
                bool ia = a == V.identity(V.src(a)) && V.src(a) == V.dst(a);
                bool ib = b == V.identity(V.src(b)) && V.src(b) == V.dst(b);
                return ia > ib;
            });
            for (int u : cands) {
                if (!d.base.has_square(s0.top, u, V.identity(H.dst(sq.top)), sq.top)) continue;
                if (V.compose(sq.left, u) != s0.left) continue;
                comp.u_components[sq.key()] = u;
                break;
            }
        }
    }
    return comp;
}

IsostableReport check_isostable(const SquaresCat& d, const CompletionData& comp) {
    IsostableReport rep;
    rep.stable = check_completion_axioms(d, comp, CompletionMode::Stable);
    const FinCat& V = d.vcat();
    auto weqs = weak_equivalences(d);
    for (int u : weqs.vweq) {
        if (!V.is_iso(u))
            rep.failures.push_back("vertical weak equivalence not invertible: " +
                                   V.morphism_id(u));
    }
    for (int f : weqs.hweq) {
        if (!d.hcat().is_iso(f))
            rep.failures.push_back("horizontal weak equivalence not invertible: " +
                                   d.hcat().morphism_id(f));
    }
    // flip closure on squares whose vertical edges are invertible weqs
    for (const auto& s : d.base.squares) {
        if (!weqs.is_vweq(s.left) || !weqs.is_vweq(s.right)) continue;
        int li = V.inverse(s.left), ri = V.inverse(s.right);
        if (li < 0 || ri < 0) continue;  // reported above
        if (!d.base.has_square(s.bottom, li, ri, s.top))
            rep.failures.push_back("missing flip of " + d.base.square_str(s));
    }
    std::sort(rep.failures.begin(), rep.failures.end());
    rep.pass = rep.stable.pass && rep.failures.empty();
    return rep;
}

std::string IsostableReport::to_string() const {
    std::ostringstream os;
    os << "stable axioms: " << (stable.pass ? "PASS" : "FAIL") << "\n";
    if (!stable.pass) os << stable.to_string();
    if (failures.empty())
        os << "invertibility and flip closure: PASS\n";
    else {
        os << "invertibility and flip closure: FAIL\n";
        for (const auto& f : failures) os << "  " << f << "\n";
    }
    os << "isostable: " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

SquaresCat opposite_vertical(const FlatDoubleCat& d, const std::string& basepoint) {
    const FinCat& V = *d.vcat;
    auto vop = std::make_shared<FinCat>();
    for (int i = 0; i < V.object_count(); ++i) vop->add_object(V.object_id(i));
    for (int m = 0; m < V.morphism_count(); ++m)
        vop->add_morphism_idx(V.morphism_id(m), V.dst(m), V.src(m));
    for (int o = 0; o < V.object_count(); ++o) vop->set_identity_idx(o, V.identity(o));
    for (const auto& [g, f, gf] : V.composition_entries()) vop->set_composite_idx(f, g, gf);
    SquaresCat out;
    out.base.hcat = d.hcat;
    out.base.vcat = vop;
    for (const auto& s : d.squares) out.base.add_square(s.bottom, s.left, s.right, s.top);
    std::sort(out.base.squares.begin(), out.base.squares.end());
    out.basepoint = d.hcat->object_index(basepoint);
    auto rep = validate_squares_category(out);
    for (const auto& v : rep.violations) {
        if (v.code == "pointing-h" || v.code == "pointing-v" || v.code == "basepoint")
            throw std::invalid_argument("opposite_vertical: pointing cannot be satisfied: " +
                                        v.code + " " + v.detail);
    }
    return out;
}

SquaresCat extension_category(const SquaresCat& d) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    const auto& sqs = d.base.squares;
    const int N = static_cast<int>(sqs.size());
    auto eh = std::make_shared<FinCat>();
    auto ev = std::make_shared<FinCat>();
    for (int i = 0; i < N; ++i) {
        std::string id = "sq" + std::to_string(i);
        eh->add_object(id);
        ev->add_object(id);
    }
    // h-mors: cornerwise h-mors whose two all-horizontal faces commute in hcat
    std::map<std::array<int, 6>, int> hmor_lookup;  // (i, j, hA, hB, hC, hD) -> index
    std::vector<std::array<int, 6>> hmors;
    for (int i = 0; i < N; ++i) {
        const Square& s1 = sqs[i];
        int A = H.src(s1.top), B = H.dst(s1.top), C = H.src(s1.bottom), D = H.dst(s1.bottom);
        for (int j = 0; j < N; ++j) {
            const Square& s2 = sqs[j];
            int A2 = H.src(s2.top), B2 = H.dst(s2.top), C2 = H.src(s2.bottom),
                D2 = H.dst(s2.bottom);
            for (int hA : H.hom(A, A2)) {
                for (int hB : H.hom(B, B2)) {
                    if (H.compose(hB, s1.top) != H.compose(s2.top, hA)) continue;
                    for (int hC : H.hom(C, C2)) {
                        for (int hD : H.hom(D, D2)) {
                            if (H.compose(hD, s1.bottom) != H.compose(s2.bottom, hC)) continue;
                            int m = eh->add_morphism_idx(
                                "h[" + std::to_string(i) + ">" + std::to_string(j) + "|" +
                                    H.morphism_id(hA) + ";" + H.morphism_id(hB) + ";" +
                                    H.morphism_id(hC) + ";" + H.morphism_id(hD) + "]",
                                i, j);
                            hmors.push_back({i, j, hA, hB, hC, hD});
                            hmor_lookup[{i, j, hA, hB, hC, hD}] = m;
                        }
                    }
                }
            }
        }
    }
    // v-mors: cornerwise v-mors whose two all-vertical faces commute in vcat
    std::map<std::array<int, 6>, int> vmor_lookup;
    std::vector<std::array<int, 6>> vmors;
    for (int i = 0; i < N; ++i) {
        const Square& s1 = sqs[i];
        int A = H.src(s1.top), B = H.dst(s1.top), C = H.src(s1.bottom), D = H.dst(s1.bottom);
        for (int j = 0; j < N; ++j) {
            const Square& s2 = sqs[j];
            int A2 = H.src(s2.top), B2 = H.dst(s2.top), C2 = H.src(s2.bottom),
                D2 = H.dst(s2.bottom);
            for (int vA : V.hom(A, A2)) {
                for (int vC : V.hom(C, C2)) {
                    if (V.compose(vC, s1.left) != V.compose(s2.left, vA)) continue;
                    for (int vB : V.hom(B, B2)) {
                        for (int vD : V.hom(D, D2)) {
                            if (V.compose(vD, s1.right) != V.compose(s2.right, vB)) continue;
                            int m = ev->add_morphism_idx(
                                "v[" + std::to_string(i) + ">" + std::to_string(j) + "|" +
                                    V.morphism_id(vA) + ";" + V.morphism_id(vB) + ";" +
                                    V.morphism_id(vC) + ";" + V.morphism_id(vD) + "]",
                                i, j);
                            vmors.push_back({i, j, vA, vB, vC, vD});
                            vmor_lookup[{i, j, vA, vB, vC, vD}] = m;
                        }
                    }
                }
            }
        }
    }
    for (int i = 0; i < N; ++i) {
        const Square& s = sqs[i];
        int A = H.src(s.top), B = H.dst(s.top), C = H.src(s.bottom), D = H.dst(s.bottom);
        eh->set_identity_idx(i, hmor_lookup.at({i, i, H.identity(A), H.identity(B), H.identity(C),
                                                H.identity(D)}));
        ev->set_identity_idx(i, vmor_lookup.at({i, i, V.identity(A), V.identity(B), V.identity(C),
                                                V.identity(D)}));
    }
    for (size_t a = 0; a < hmors.size(); ++a) {
        const auto& m1 = hmors[a];
        for (int m2i : eh->out_of(m1[1])) {
            const auto& m2 = hmors[m2i];
            eh->set_composite_idx(
                m2i, static_cast<int>(a),
                hmor_lookup.at({m1[0], m2[1], H.compose(m2[2], m1[2]), H.compose(m2[3], m1[3]),
                                H.compose(m2[4], m1[4]), H.compose(m2[5], m1[5])}));
        }
    }
    for (size_t a = 0; a < vmors.size(); ++a) {
        const auto& m1 = vmors[a];
        for (int m2i : ev->out_of(m1[1])) {
            const auto& m2 = vmors[m2i];
            ev->set_composite_idx(
                m2i, static_cast<int>(a),
                vmor_lookup.at({m1[0], m2[1], V.compose(m2[2], m1[2]), V.compose(m2[3], m1[3]),
                                V.compose(m2[4], m1[4]), V.compose(m2[5], m1[5])}));
        }
    }
    SquaresCat out;
    out.base.hcat = eh;
    out.base.vcat = ev;
    // squares of the extension category: pointwise squares of d
    for (size_t ht = 0; ht < hmors.size(); ++ht) {
        const auto& t = hmors[ht];
        for (size_t vl = 0; vl < vmors.size(); ++vl) {
            const auto& l = vmors[vl];
            if (l[0] != t[0]) continue;
            for (size_t vr = 0; vr < vmors.size(); ++vr) {
                const auto& r = vmors[vr];
                if (r[0] != t[1]) continue;
                for (int hbi : eh->hom(l[1], r[1])) {
                    const auto& b = hmors[hbi];
                    bool ok = d.base.has_square(t[2], l[2], r[2], b[2]) &&
                              d.base.has_square(t[3], l[3], r[3], b[3]) &&
                              d.base.has_square(t[4], l[4], r[4], b[4]) &&
                              d.base.has_square(t[5], l[5], r[5], b[5]);
                    if (ok)
                        out.base.add_square(static_cast<int>(ht), static_cast<int>(vl),
                                            static_cast<int>(vr), hbi);
                }
            }
        }
    }
    // basepoint: the identity square on O
    const Square idsq{H.identity(d.basepoint), V.identity(d.basepoint), V.identity(d.basepoint),
                      H.identity(d.basepoint)};
    int bp = -1;
    for (int i = 0; i < N; ++i)
        if (sqs[i] == idsq) bp = i;
    if (bp < 0) throw std::logic_error("extension_category: identity square on O missing");
    out.basepoint = bp;
    return out;
}

}  // namespace sqcat::dbl

#include "sqcat/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sqcat::simp {

using cat::FinCat;
using cat::FunctorData;
using cat::ValidationReport;

int TruncSSet::index_of(int n, const std::string& sid) const {
    for (int i = 0; i < size(n); ++i)
        if (simplices[n][i] == sid) return i;
    return -1;
}

TruncSSet TruncSCat::objects() const {
    TruncSSet x;
    x.bound = bound;
    x.simplices.resize(bound + 1);
    x.faces.resize(bound + 1);
    x.degeneracies.resize(bound + 1);
    for (int n = 0; n <= bound; ++n) {
        for (int o = 0; o < levels[n]->object_count(); ++o)
            x.simplices[n].push_back(levels[n]->object_id(o));
        if (n >= 1)
            for (const auto& f : faces[n]) x.faces[n].push_back(f.obj_map);
        if (n < bound)
            for (const auto& s : degeneracies[n]) x.degeneracies[n].push_back(s.obj_map);
    }
    return x;
}

namespace {

bool map_total(const std::vector<int>& m, int src_size, int dst_size) {
    if (static_cast<int>(m.size()) != src_size) return false;
    for (int v : m)
        if (v < 0 || v >= dst_size) return false;
    return true;
}

}  // namespace

ValidationReport validate_truncated(const TruncSSet& x) {
    ValidationReport rep;
    const int N = x.bound;
    if (static_cast<int>(x.simplices.size()) != N + 1 ||
        static_cast<int>(x.faces.size()) < N + 1 ||
        static_cast<int>(x.degeneracies.size()) < std::max(N, 1)) {
        rep.add("shape", "level containers do not match the bound");
        rep.sort();
        return rep;
    }
    for (int n = 1; n <= N; ++n) {
        if (static_cast<int>(x.faces[n].size()) != n + 1) {
            rep.add("shape", "level " + std::to_string(n) + " must carry faces d_0..d_" +
                                 std::to_string(n));
            continue;
        }
        for (int i = 0; i <= n; ++i)
            if (!map_total(x.faces[n][i], x.size(n), x.size(n - 1)))
                rep.add("map-totality", "d_" + std::to_string(i) + " at level " + std::to_string(n));
    }
    for (int n = 0; n < N; ++n) {
        if (static_cast<int>(x.degeneracies[n].size()) != n + 1) {
            rep.add("shape", "level " + std::to_string(n) + " must carry degeneracies s_0..s_" +
                                 std::to_string(n));
            continue;
        }
        for (int i = 0; i <= n; ++i)
            if (!map_total(x.degeneracies[n][i], x.size(n), x.size(n + 1)))
                rep.add("map-totality", "s_" + std::to_string(i) + " at level " + std::to_string(n));
    }
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }
    auto name = [&](int n, int v) { return x.id(n, v); };
    // d_i d_j = d_{j-1} d_i for i < j
    for (int n = 2; n <= N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (int s = 0; s < x.size(n); ++s)
                    if (x.face(n - 1, i, x.face(n, j, s)) != x.face(n - 1, j - 1, x.face(n, i, s)))
                        rep.add("simplicial-identity",
                                "d_" + std::to_string(i) + " d_" + std::to_string(j) +
                                    " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                                    " at level " + std::to_string(n) + " simplex " + name(n, s));
    // s_i s_j = s_{j+1} s_i for i <= j
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (int s = 0; s < x.size(n); ++s)
                    if (x.degeneracy(n + 1, i, x.degeneracy(n, j, s)) !=
                        x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, s)))
                        rep.add("simplicial-identity",
                                "s_" + std::to_string(i) + " s_" + std::to_string(j) +
                                    " != s_" + std::to_string(j + 1) + " s_" + std::to_string(i) +
                                    " at level " + std::to_string(n) + " simplex " + name(n, s));
    // d_i s_j relations
    for (int n = 0; n < N; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n + 1; ++i) {
                for (int s = 0; s < x.size(n); ++s) {
                    int lhs = x.face(n + 1, i, x.degeneracy(n, j, s));
                    int rhs;
                    if (i == j || i == j + 1)
                        rhs = s;
                    else if (i < j)
                        rhs = x.degeneracy(n - 1, j - 1, x.face(n, i, s));
                    else
                        rhs = x.degeneracy(n - 1, j, x.face(n, i - 1, s));
                    if (lhs != rhs)
                        rep.add("simplicial-identity",
                                "d_" + std::to_string(i) + " s_" + std::to_string(j) +
                                    " at level " + std::to_string(n) + " simplex " + name(n, s));
                }
            }
        }
    }
    rep.sort();
    return rep;
}

ValidationReport validate_truncated(const TruncSCat& x) {
    ValidationReport rep;
    for (int n = 0; n <= x.bound; ++n) {
        auto r = validate_category(*x.levels[n]);
        for (const auto& v : r.violations)
            rep.add("level-" + std::to_string(n) + "-" + v.code, v.detail);
    }
    for (int n = 1; n <= x.bound; ++n)
        for (int i = 0; i <= n; ++i) {
            auto r = validate_functor(x.faces[n][i]);
            for (const auto& v : r.violations)
                rep.add("face-functor", "d_" + std::to_string(i) + " level " + std::to_string(n) +
                                            ": " + v.code + " " + v.detail);
        }
    for (int n = 0; n < x.bound; ++n)
        for (int i = 0; i <= n; ++i) {
            auto r = validate_functor(x.degeneracies[n][i]);
            for (const auto& v : r.violations)
                rep.add("degeneracy-functor", "s_" + std::to_string(i) + " level " +
                                                  std::to_string(n) + ": " + v.code + " " +
                                                  v.detail);
        }
    if (!rep.ok()) {
        rep.sort();
        return rep;
    }
    // strict functor equalities via the object simplicial set plus morphism maps
    auto eqf = [&](const FunctorData& a, const FunctorData& b, const std::string& what) {
        if (!(a.obj_map == b.obj_map && a.mor_map == b.mor_map))
            rep.add("simplicial-identity", what);
    };
    const int N = x.bound;
    for (int n = 2; n <= N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                eqf(cat::compose_functors(x.faces[n - 1][i], x.faces[n][j]),
                    cat::compose_functors(x.faces[n - 1][j - 1], x.faces[n][i]),
                    "d_" + std::to_string(i) + " d_" + std::to_string(j) + " at level " +
                        std::to_string(n));
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                eqf(cat::compose_functors(x.degeneracies[n + 1][i], x.degeneracies[n][j]),
                    cat::compose_functors(x.degeneracies[n + 1][j + 1], x.degeneracies[n][i]),
                    "s_" + std::to_string(i) + " s_" + std::to_string(j) + " at level " +
                        std::to_string(n));
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                auto lhs = cat::compose_functors(x.faces[n + 1][i], x.degeneracies[n][j]);
                FunctorData rhs;
                if (i == j || i == j + 1)
                    rhs = cat::identity_functor(x.levels[n]);
                else if (i < j)
                    rhs = cat::compose_functors(x.degeneracies[n - 1][j - 1], x.faces[n][i]);
                else
                    rhs = cat::compose_functors(x.degeneracies[n - 1][j], x.faces[n][i - 1]);
                eqf(lhs, rhs, "d_" + std::to_string(i) + " s_" + std::to_string(j) + " at level " +
                                  std::to_string(n));
            }
    rep.sort();
    return rep;
}

int apply_operator(const TruncSSet& x, int n, const std::vector<int>& theta, int simplex) {
    const int m = static_cast<int>(theta.size()) - 1;
    for (int k = 0; k < m; ++k)
        if (theta[k] > theta[k + 1]) throw std::invalid_argument("operator not monotone");
    // degeneracy part first (recursively): X(theta' ∘ sigma^j) = s_j ∘ X(theta')
    for (int j = 0; j < m; ++j) {
        if (theta[j] == theta[j + 1]) {
            std::vector<int> rest = theta;
            rest.erase(rest.begin() + j + 1);
            return x.degeneracy(m - 1, j, apply_operator(x, n, rest, simplex));
        }
    }
    if (m == n) return simplex;  // injective and full: identity
    // injective, not surjective: strip the largest missing value
    std::vector<bool> hit(n + 1, false);
    for (int v : theta) hit[v] = true;
    int a = n;
    while (hit[a]) --a;
    std::vector<int> rest = theta;
    for (int& v : rest)
        if (v > a) --v;
    return apply_operator(x, n - 1, rest, x.face(n, a, simplex));
}

FunctorData operator_functor(const TruncSCat& x, int n, const std::vector<int>& theta) {
    const int m = static_cast<int>(theta.size()) - 1;
    for (int j = 0; j < m; ++j) {
        if (theta[j] == theta[j + 1]) {
            std::vector<int> rest = theta;
            rest.erase(rest.begin() + j + 1);
            return cat::compose_functors(x.degeneracies[m - 1][j], operator_functor(x, n, rest));
        }
    }
    if (m == n) return cat::identity_functor(x.levels[n]);
    std::vector<bool> hit(n + 1, false);
    for (int v : theta) hit[v] = true;
    int a = n;
    while (hit[a]) --a;
    std::vector<int> rest = theta;
    for (int& v : rest)
        if (v > a) --v;
    return cat::compose_functors(operator_functor(x, n - 1, rest), x.faces[n][a]);
}

std::vector<int> subset_operator(const std::vector<int>& subset) { return subset; }

int PartialMonoid::index_of(const std::string& e) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == e) return static_cast<int>(i);
    return -1;
}

ValidationReport validate_partial_monoid(const PartialMonoid& m) {
    ValidationReport rep;
    const int n = static_cast<int>(m.elements.size());
    if (m.unit < 0 || m.unit >= n) {
        rep.add("unit", "unit element missing");
        rep.sort();
        return rep;
    }
    for (int a = 0; a < n; ++a) {
        if (!m.defined(m.unit, a) || m.times(m.unit, a) != a)
            rep.add("unit-law", "1*" + m.elements[a]);
        if (!m.defined(a, m.unit) || m.times(a, m.unit) != a)
            rep.add("unit-law", m.elements[a] + "*1");
    }
    // associativity whenever both sides are defined
    for (const auto& [ab, v1] : m.product) {
        auto [a, b] = ab;
        for (int c = 0; c < n; ++c) {
            bool lhs = m.defined(v1, c);
            bool rhs = m.defined(b, c) && m.defined(a, m.times(b, c));
            if (lhs && rhs && m.times(v1, c) != m.times(a, m.times(b, c)))
                rep.add("associativity", "(" + m.elements[a] + "*" + m.elements[b] + ")*" +
                                             m.elements[c]);
        }
    }
    rep.sort();
    return rep;
}

namespace {

// Chain-of-morphisms nerve machinery shared by nerve() and the partial-monoid
// nerve: levels indexed by tuples, with canonical bracket ids.
struct ChainComplexBuilder {
    TruncSSet x;
    std::vector<std::map<std::vector<int>, int>> index;  // tuple -> position per level

    void init(int bound) {
        x.bound = bound;
        x.simplices.resize(bound + 1);
        x.faces.resize(bound + 1);
        x.degeneracies.resize(bound + 1);
        index.resize(bound + 1);
    }
    int add(int level, const std::vector<int>& key, const std::string& id) {
        auto [it, fresh] = index[level].emplace(key, x.size(level));
        if (fresh) x.simplices[level].push_back(id);
        return it->second;
    }
};

}  // namespace

TruncSSet nerve(const FinCat& c, int levels) {
    ChainComplexBuilder b;
    b.init(levels);
    // level 0: objects; level n: composable chains
    std::vector<std::vector<std::vector<int>>> chains(levels + 1);
    for (int o = 0; o < c.object_count(); ++o) {
        chains[0].push_back({o});
        b.add(0, {o}, c.object_id(o));
    }
    for (int n = 1; n <= levels; ++n) {
        if (n == 1) {
            for (int m = 0; m < c.morphism_count(); ++m) {
                chains[1].push_back({m});
                b.add(1, {m}, "<" + c.morphism_id(m) + ">");
            }
        } else {
            for (const auto& ch : chains[n - 1]) {
                for (int m : c.out_of(c.dst(ch.back()))) {
                    auto ext = ch;
                    ext.push_back(m);
                    std::string id = "<";
                    for (size_t i = 0; i < ext.size(); ++i)
                        id += (i ? "|" : "") + c.morphism_id(ext[i]);
                    id += ">";
                    chains[n].push_back(ext);
                    b.add(n, ext, id);
                }
            }
        }
    }
    auto face_key = [&](const std::vector<int>& ch, int i) {
        const int n = static_cast<int>(ch.size());
        std::vector<int> r;
        if (n == 1) {  // to level 0: endpoints
            if (i == 0) return std::vector<int>{c.dst(ch[0])};
            return std::vector<int>{c.src(ch[0])};
        }
        if (i == 0) {
            r.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
            r.assign(ch.begin(), ch.end() - 1);
        } else {
            r.assign(ch.begin(), ch.end());
            r[i] = c.compose(ch[i], ch[i - 1]);
            r.erase(r.begin() + (i - 1));
        }
        return r;
    };
    for (int n = 1; n <= levels; ++n) {
        b.x.faces[n].assign(n + 1, std::vector<int>(b.x.size(n), -1));
        for (size_t s = 0; s < chains[n].size(); ++s)
            for (int i = 0; i <= n; ++i)
                b.x.faces[n][i][s] = b.index[n - 1].at(face_key(chains[n][s], i));
    }
    for (int n = 0; n < levels; ++n) {
        b.x.degeneracies[n].assign(n + 1, std::vector<int>(b.x.size(n), -1));
        for (size_t s = 0; s < chains[n].size(); ++s) {
            const auto& ch = chains[n][s];
            for (int i = 0; i <= n; ++i) {
                std::vector<int> r;
                if (n == 0) {
                    r = {c.identity(ch[0])};
                } else {
                    r = ch;
                    int v = (i == n) ? c.dst(ch.back()) : c.src(ch[i]);
                    r.insert(r.begin() + i, c.identity(v));
                }
                b.x.degeneracies[n][i][s] = b.index[n + 1].at(r);
            }
        }
    }
    return b.x;
}

TruncSSet nerve_partial_monoid(const PartialMonoid& m, int levels) {
    ChainComplexBuilder b;
    b.init(levels);
    std::vector<std::vector<std::vector<int>>> tuples(levels + 1);
    tuples[0].push_back({});
    b.add(0, {}, "*");
    for (int n = 1; n <= levels; ++n) {
        for (const auto& t : tuples[n - 1]) {
            // running left-to-right product must stay defined
            for (int e = 0; e < static_cast<int>(m.elements.size()); ++e) {
                if (!t.empty()) {
                    int prod = t[0];
                    bool ok = true;
                    for (size_t i = 1; i < t.size() && ok; ++i) prod = m.times(prod, t[i]);
                    if (!m.defined(prod, e)) continue;
                    (void)ok;
                }
                auto ext = t;
                ext.push_back(e);
                std::string id = "(";
                for (size_t i = 0; i < ext.size(); ++i)
                    id += (i ? "," : "") + m.elements[ext[i]];
                id += ")";
                tuples[n].push_back(ext);
                b.add(n, ext, id);
            }
        }
    }
    auto face_key = [&](const std::vector<int>& t, int i) {
        const int n = static_cast<int>(t.size());
        std::vector<int> r;
        if (i == 0)
            r.assign(t.begin() + 1, t.end());
        else if (i == n)
            r.assign(t.begin(), t.end() - 1);
        else {
            r = t;
            r[i] = m.times(t[i - 1], t[i]);
            r.erase(r.begin() + (i - 1));
        }
        return r;
    };
    for (int n = 1; n <= levels; ++n) {
        b.x.faces[n].assign(n + 1, std::vector<int>(b.x.size(n), -1));
        for (size_t s = 0; s < tuples[n].size(); ++s)
            for (int i = 0; i <= n; ++i)
                b.x.faces[n][i][s] = b.index[n - 1].at(face_key(tuples[n][s], i));
    }
    for (int n = 0; n < levels; ++n) {
        b.x.degeneracies[n].assign(n + 1, std::vector<int>(b.x.size(n), -1));
        for (size_t s = 0; s < tuples[n].size(); ++s) {
            for (int i = 0; i <= n; ++i) {
                auto r = tuples[n][s];
                r.insert(r.begin() + i, m.unit);
                b.x.degeneracies[n][i][s] = b.index[n + 1].at(r);
            }
        }
    }
    return b.x;
}

TruncSSet edgewise_subdivision(const TruncSSet& x, int out_bound) {
    if (x.bound < 2 * out_bound + 1)
        throw std::invalid_argument("edgewise_subdivision: input bound must reach 2N+1");
    TruncSSet r;
    r.bound = out_bound;
    r.simplices.resize(out_bound + 1);
    r.faces.resize(out_bound + 1);
    r.degeneracies.resize(out_bound + 1);
    for (int n = 0; n <= out_bound; ++n) r.simplices[n] = x.simplices[2 * n + 1];
    auto doubled = [](const std::vector<int>& theta, int n) {
        // Q(theta): [2m+1] -> [2n+1]
        const int m = static_cast<int>(theta.size()) - 1;
        std::vector<int> q(2 * m + 2);
        for (int j = 0; j <= m; ++j) q[j] = n - theta[m - j];
        for (int j = 0; j <= m; ++j) q[m + 1 + j] = n + 1 + theta[j];
        return q;
    };
    for (int n = 1; n <= out_bound; ++n) {
        r.faces[n].assign(n + 1, std::vector<int>(r.size(n), -1));
        for (int i = 0; i <= n; ++i) {
            std::vector<int> delta;
            for (int v = 0; v <= n; ++v)
                if (v != i) delta.push_back(v);
            auto q = doubled(delta, n);
            for (int s = 0; s < r.size(n); ++s)
                r.faces[n][i][s] = apply_operator(x, 2 * n + 1, q, s);
        }
    }
    for (int n = 0; n < out_bound; ++n) {
        r.degeneracies[n].assign(n + 1, std::vector<int>(r.size(n), -1));
        for (int i = 0; i <= n; ++i) {
            std::vector<int> sigma;
            for (int v = 0; v <= n; ++v) {
                sigma.push_back(v);
                if (v == i) sigma.push_back(v);
            }
            auto q = doubled(sigma, n);
            for (int s = 0; s < r.size(n); ++s)
                r.degeneracies[n][i][s] = apply_operator(x, 2 * n + 1, q, s);
        }
    }
    return r;
}

std::string SegalReport::to_string() const {
    std::ostringstream os;
    os << "degree-" << degree << " Segal check, set level (homotopy pullback = strict pullback"
       << " since sets are discrete), verified up to level " << bound << "\n";
    for (const auto& p : positions) {
        os << "  level " << p.level << " " << p.label << ": " << (p.pass ? "PASS" : "FAIL");
        if (!p.pass) os << " [" << p.counterexample << "]";
        os << "\n";
    }
    os << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

namespace {

std::vector<int> range_vec(int a, int b) {  // a..b inclusive
    std::vector<int> r;
    for (int v = a; v <= b; ++v) r.push_back(v);
    return r;
}

// positions of `sub` inside `super`, both sorted
std::vector<int> positions_in(const std::vector<int>& sub, const std::vector<int>& super) {
    std::vector<int> r;
    for (int v : sub) {
        auto it = std::find(super.begin(), super.end(), v);
        r.push_back(static_cast<int>(it - super.begin()));
    }
    return r;
}

struct PullbackCheck {
    bool pass = true;
    std::string counterexample;
};

PullbackCheck strict_pullback_bijection(const TruncSSet& x, int n, const std::vector<int>& A,
                                        const std::vector<int>& B, const std::vector<int>& C) {
    PullbackCheck out;
    const int la = static_cast<int>(A.size()) - 1;
    const int lb = static_cast<int>(B.size()) - 1;
    auto posA = positions_in(C, A);
    auto posB = positions_in(C, B);
    std::map<std::pair<int, int>, int> seen;  // (a, b) -> count of preimages
    for (int s = 0; s < x.size(n); ++s) {
        int a = apply_operator(x, n, A, s);
        int b = apply_operator(x, n, B, s);
        auto key = std::make_pair(a, b);
        if (++seen[key] > 1 && out.pass) {
            out.pass = false;
            out.counterexample = "two simplices map to (" + x.id(la, a) + ", " + x.id(lb, b) + ")";
        }
    }
    if (!out.pass) return out;
    for (int a = 0; a < x.size(la); ++a) {
        for (int b = 0; b < x.size(lb); ++b) {
            if (apply_operator(x, la, posA, a) != apply_operator(x, lb, posB, b)) continue;
            if (!seen.count({a, b})) {
                out.pass = false;
                out.counterexample =
                    "compatible pair (" + x.id(la, a) + ", " + x.id(lb, b) + ") not hit";
                return out;
            }
        }
    }
    return out;
}

}  // namespace

SegalReport check_segal(const TruncSSet& x, int degree) {
    SegalReport rep;
    rep.degree = degree;
    rep.bound = x.bound;
    if (degree == 1) {
        for (int n = 2; n <= x.bound; ++n) {
            SegalReport::Position p{n, "spine", true, ""};
            // injectivity + surjectivity onto compatible edge tuples
            std::map<std::vector<int>, int> seen;
            for (int s = 0; s < x.size(n); ++s) {
                std::vector<int> spine;
                for (int k = 1; k <= n; ++k)
                    spine.push_back(apply_operator(x, n, {k - 1, k}, s));
                if (++seen[spine] > 1 && p.pass) {
                    p.pass = false;
                    p.counterexample = "spine map not injective";
                }
            }
            if (p.pass) {
                // enumerate compatible tuples by walking edges
                std::function<bool(std::vector<int>&)> extend = [&](std::vector<int>& acc) {
                    if (static_cast<int>(acc.size()) == n) {
                        if (!seen.count(acc)) {
                            p.pass = false;
                            std::string t;
                            for (int e : acc) t += (t.empty() ? "" : ";") + x.id(1, e);
                            p.counterexample = "missing preimage for spine (" + t + ")";
                            return false;
                        }
                        return true;
                    }
                    for (int e = 0; e < x.size(1); ++e) {
                        if (!acc.empty() &&
                            x.face(1, 1, e) != x.face(1, 0, acc.back()))
                            continue;
                        acc.push_back(e);
                        if (!extend(acc)) return false;
                        acc.pop_back();
                    }
                    return true;
                };
                std::vector<int> acc;
                extend(acc);
            }
            if (!p.pass) rep.pass = false;
            rep.positions.push_back(std::move(p));
        }
        return rep;
    }
    for (int n = 3; n <= x.bound; ++n) {
        for (auto [i, j] : {std::pair{0, 2}, std::pair{n - 2, n}}) {
            SegalReport::Position p{n, "(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                    true, ""};
            std::vector<int> A = range_vec(i, j);
            std::vector<int> B = range_vec(0, i);
            for (int v = j; v <= n; ++v) B.push_back(v);
            std::vector<int> C{i, j};
            auto r = strict_pullback_bijection(x, n, A, B, C);
            p.pass = r.pass;
            p.counterexample = r.counterexample;
            if (!p.pass) rep.pass = false;
            rep.positions.push_back(std::move(p));
        }
    }
    return rep;
}

std::string Segal2GroupoidReport::to_string() const {
    std::ostringstream os;
    os << "degree-2 Segal check, groupoid level (homotopy pullback = iso-comma pseudo-pullback),"
       << " verified up to level " << bound << "\n";
    if (rejected) {
        os << "REJECTED: " << reject_reason << "\n";
        return os.str();
    }
    for (const auto& p : positions)
        os << "  level " << p.level << " " << p.label << ": "
           << (p.comparison.equivalence() ? "PASS" : "FAIL (" + p.comparison.to_string() + ")")
           << "\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

Segal2GroupoidReport check_2segal_groupoids(const TruncSCat& sc, bool force) {
    Segal2GroupoidReport rep;
    rep.bound = sc.bound;
    for (int n = 0; n <= sc.bound; ++n) {
        auto g = cat::is_groupoid(*sc.levels[n]);
        if (!g.groupoid) {
            rep.rejected = true;
            rep.reject_reason = "level " + std::to_string(n) + " is not a groupoid; witness " +
                                sc.levels[n]->morphism_id(g.witness);
            if (!force) return rep;
            break;
        }
    }
    if (force) rep.rejected = false;
    rep.pass = true;
    for (int n = 3; n <= sc.bound; ++n) {
        for (auto [i, j] : {std::pair{0, 2}, std::pair{n - 2, n}}) {
            std::vector<int> A = range_vec(i, j);
            std::vector<int> B = range_vec(0, i);
            for (int v = j; v <= n; ++v) B.push_back(v);
            std::vector<int> C{i, j};
            auto FA = operator_functor(sc, n, A);
            auto FB = operator_functor(sc, n, B);
            auto legA = operator_functor(sc, static_cast<int>(A.size()) - 1, positions_in(C, A));
            auto legB = operator_functor(sc, static_cast<int>(B.size()) - 1, positions_in(C, B));
            auto pp = cat::pseudo_pullback(legA, legB);
            // canonical comparison: x |-> (A-face, B-face, identity)
            cat::FunctorData cmp;
            cmp.source = sc.levels[n];
            cmp.target = pp.category;
            const auto& L = *sc.levels[n];
            const auto& C1 = *legA.target;
            std::map<std::array<int, 3>, int> obj_lookup;
            for (size_t t = 0; t < pp.triples.size(); ++t)
                obj_lookup[pp.triples[t]] = static_cast<int>(t);
            for (int o = 0; o < L.object_count(); ++o) {
                int a = FA.obj_map[o], b = FB.obj_map[o];
                int alpha = C1.identity(legA.obj_map[a]);
                cmp.obj_map.push_back(obj_lookup.at({a, b, alpha}));
            }
            for (int m = 0; m < L.morphism_count(); ++m) {
                int src = cmp.obj_map[L.src(m)], dst = cmp.obj_map[L.dst(m)];
                cmp.mor_map.push_back(
                    pp.find_morphism(src, dst, FA.mor_map[m], FB.mor_map[m]));
            }
            Segal2GroupoidReport::Position p;
            p.level = n;
            p.label = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            p.comparison = cat::check_functor_equivalence(cmp);
            if (!p.comparison.equivalence()) rep.pass = false;
            rep.positions.push_back(std::move(p));
        }
    }
    return rep;
}

std::optional<std::vector<std::vector<int>>> find_iso(const TruncSSet& x, const TruncSSet& y) {
    if (x.bound != y.bound) return std::nullopt;
    const int N = x.bound;
    for (int n = 0; n <= N; ++n)
        if (x.size(n) != y.size(n)) return std::nullopt;
    std::vector<std::vector<int>> match(N + 1);
    for (int n = 0; n <= N; ++n) match[n].assign(x.size(n), -1);

    // backtracking level by level; candidates constrained by chosen face images
    std::function<bool(int)> solve = [&](int level) -> bool {
        if (level > N) return true;
        std::vector<int> used(y.size(level), 0);
        std::function<bool(int)> assign = [&](int s) -> bool {
            if (s == x.size(level)) {
                // degeneracy constraint into this level
                if (level >= 1) {
                    for (int i = 0; i <= level - 1; ++i)
                        for (int t = 0; t < x.size(level - 1); ++t)
                            if (match[level][x.degeneracy(level - 1, i, t)] !=
                                y.degeneracy(level - 1, i, match[level - 1][t]))
                                return false;
                }
                return solve(level + 1);
            }
            for (int c = 0; c < y.size(level); ++c) {
                if (used[c]) continue;
                bool ok = true;
                if (level >= 1)
                    for (int i = 0; i <= level && ok; ++i)
                        if (y.face(level, i, c) != match[level - 1][x.face(level, i, s)]) ok = false;
                if (!ok) continue;
                match[level][s] = c;
                used[c] = 1;
                if (assign(s + 1)) return true;
                match[level][s] = -1;
                used[c] = 0;
            }
            return false;
        };
        return assign(0);
    };
    if (!solve(0)) return std::nullopt;
    return match;
}

}  // namespace sqcat::simp

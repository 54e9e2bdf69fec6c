#include "sqcat/constructions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sqcat::cons {

using cat::FinCat;
using cat::FunctorData;
using dbl::Square;
using dbl::SquaresCat;

namespace {

std::string join_ids(const FinCat& c, const std::vector<int>& ms, bool objects) {
    std::string r;
    for (size_t i = 0; i < ms.size(); ++i)
        r += (i ? "," : "") + (objects ? c.object_id(ms[i]) : c.morphism_id(ms[i]));
    return r;
}

std::string chain_id(const FinCat& c, const Chain& ch) {
    if (ch.length() == 0) return c.object_id(ch.vertices[0]);
    return "[" + join_ids(c, ch.edges, false) + "]";
}

// composite of edges a+1..b of a chain (identity at vertex a when a == b)
int chain_composite(const FinCat& c, const Chain& ch, int a, int b) {
    int m = c.identity(ch.vertices[a]);
    for (int k = a + 1; k <= b; ++k) m = c.compose(ch.edges[k - 1], m);
    return m;
}

Chain chain_reindex(const FinCat& c, const Chain& ch, const std::vector<int>& theta) {
    Chain r;
    const int m = static_cast<int>(theta.size()) - 1;
    for (int k = 0; k <= m; ++k) r.vertices.push_back(ch.vertices[theta[k]]);
    for (int k = 1; k <= m; ++k) r.edges.push_back(chain_composite(c, ch, theta[k - 1], theta[k]));
    return r;
}

std::vector<Chain> all_chains(const FinCat& c, int n) {
    std::vector<Chain> out;
    for (int o = 0; o < c.object_count(); ++o) {
        Chain base;
        base.vertices.push_back(o);
        std::function<void(Chain&)> extend = [&](Chain& ch) {
            if (ch.length() == n) {
                out.push_back(ch);
                return;
            }
            for (int m : c.out_of(ch.vertices.back())) {
                ch.vertices.push_back(c.dst(m));
                ch.edges.push_back(m);
                extend(ch);
                ch.vertices.pop_back();
                ch.edges.pop_back();
            }
        };
        extend(base);
    }
    return out;
}

std::vector<int> delta_op(int n, int i) {  // [n-1] -> [n] skipping i
    std::vector<int> r;
    for (int v = 0; v <= n; ++v)
        if (v != i) r.push_back(v);
    return r;
}

std::vector<int> sigma_op(int n, int i) {  // [n+1] -> [n] repeating i
    std::vector<int> r;
    for (int v = 0; v <= n; ++v) {
        r.push_back(v);
        if (v == i) r.push_back(v);
    }
    return r;
}

// Generic level assembly: objects/morphisms with componentwise vertical
// composition. comps layout is the caller's concern.
struct LevelKit {
    std::shared_ptr<FinCat> category = std::make_shared<FinCat>();
    std::map<std::vector<int>, int> mor_index;  // [src,dst,comps...] -> idx
    std::vector<std::vector<int>> mor_keys;

    int add_morphism(const std::string& id, int src, int dst, const std::vector<int>& comps) {
        std::vector<int> key{src, dst};
        key.insert(key.end(), comps.begin(), comps.end());
        int m = category->add_morphism_idx(id, src, dst);
        mor_index[key] = m;
        mor_keys.push_back(key);
        return m;
    }
    int find(int src, int dst, const std::vector<int>& comps) const {
        std::vector<int> key{src, dst};
        key.insert(key.end(), comps.begin(), comps.end());
        auto it = mor_index.find(key);
        return it == mor_index.end() ? -1 : it->second;
    }
    // identities must have been registered through add_morphism already
    void close(const FinCat& V) {
        auto& c = *category;
        for (int m1 = 0; m1 < c.morphism_count(); ++m1) {
            for (int m2 : c.out_of(c.dst(m1))) {
                const auto& k1 = mor_keys[m1];
                const auto& k2 = mor_keys[m2];
                std::vector<int> comps;
                for (size_t i = 2; i < k1.size(); ++i)
                    comps.push_back(V.compose(k2[i], k1[i]));
                int r = find(k1[0], k2[1], comps);
                if (r < 0) throw std::logic_error("level composition not closed");
                c.set_composite_idx(m2, m1, r);
            }
        }
    }
};

std::string comps_id(const FinCat& V, int src, int dst, const std::vector<int>& comps) {
    return "t(" + std::to_string(src) + ">" + std::to_string(dst) + "|" +
           join_ids(V, comps, false) + ")";
}

}  // namespace

TLevel t_level(const SquaresCat& d, int n) {
    TLevel lv;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    lv.chains = all_chains(H, n);
    LevelKit kit;
    for (size_t i = 0; i < lv.chains.size(); ++i) {
        kit.category->add_object(chain_id(H, lv.chains[i]));
        lv.chain_index[lv.chains[i]] = static_cast<int>(i);
    }
    // ladders: componentwise v-mors with every rung a square
    for (size_t a = 0; a < lv.chains.size(); ++a) {
        const Chain& S = lv.chains[a];
        for (size_t b = 0; b < lv.chains.size(); ++b) {
            const Chain& T = lv.chains[b];
            std::vector<int> comps;
            std::function<void(int)> dfs = [&](int k) {
                if (k == n + 1) {
                    int m = kit.add_morphism(comps_id(V, (int)a, (int)b, comps), (int)a, (int)b,
                                             comps);
                    lv.ladders.push_back({(int)a, (int)b, comps});
                    (void)m;
                    return;
                }
                for (int u : V.hom(S.vertices[k], T.vertices[k])) {
                    if (k > 0 && !d.base.has_square(S.edges[k - 1], comps[k - 1], u, T.edges[k - 1]))
                        continue;
                    comps.push_back(u);
                    dfs(k + 1);
                    comps.pop_back();
                }
            };
            dfs(0);
        }
    }
    for (size_t i = 0; i < lv.chains.size(); ++i) {
        std::vector<int> ids;
        for (int vtx : lv.chains[i].vertices) ids.push_back(V.identity(vtx));
        kit.category->set_identity_idx((int)i, kit.find((int)i, (int)i, ids));
    }
    kit.close(V);
    lv.category = kit.category;
    lv.ladder_index = std::move(kit.mor_index);
    return lv;
}

namespace {

std::string stair_id(const SquaresCat& d, const Staircase& s) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    std::string r = "st{";
    for (int i = 0; i <= s.n; ++i)
        for (int j = i; j < s.n; ++j) r += H.morphism_id(s.h(i, j)) + ";";
    r += "|";
    for (int i = 0; i <= s.n; ++i)
        for (int j = i; j <= s.n; ++j)
            if (i < j) r += V.morphism_id(s.v(i - 0, j)) + ";";
    r += "}";
    if (s.n == 0) r = "st{" + H.object_id(s.at(0, 0)) + "}";
    return r;
}

// All staircases extending a given top row (entries (0,j) and edges h(0,j)).
std::vector<Staircase> staircases_with_row0(const SquaresCat& d, const Chain& row0) {
    const int n = row0.length();
    const FinCat& V = d.vcat();
    std::vector<Staircase> out;
    Staircase s;
    s.n = n;
    s.entry.assign(Staircase::tri_size(n), -1);
    s.hmap.assign(Staircase::tri_size(n), -1);
    s.vmap.assign(Staircase::tri_size(n), -1);
    for (int j = 0; j <= n; ++j) s.entry[Staircase::tri_index(n, 0, j)] = row0.vertices[j];
    for (int j = 0; j < n; ++j) s.hmap[Staircase::tri_index(n, 0, j)] = row0.edges[j];
    std::function<void(int, int)> dfs = [&](int i, int j) {
        // building row i+1: next square at (i, j)
        if (i == n) {
            out.push_back(s);
            return;
        }
        if (j == i) {  // row start: forced pointing v-mor and O entry
            s.vmap[Staircase::tri_index(n, i, i + 1)] = d.point_v(s.at(i, i + 1));
            s.entry[Staircase::tri_index(n, i + 1, i + 1)] = d.basepoint;
            dfs(i, i + 1);
            return;
        }
        if (j == n) {
            dfs(i + 1, i + 1);
            return;
        }
        for (const Square& q : d.base.squares_by_top_left(s.h(i, j), s.v(i, j))) {
            s.vmap[Staircase::tri_index(n, i, j + 1)] = q.right;
            s.hmap[Staircase::tri_index(n, i + 1, j)] = q.bottom;
            s.entry[Staircase::tri_index(n, i + 1, j + 1)] = V.dst(q.right);
            dfs(i, j + 1);
            s.vmap[Staircase::tri_index(n, i, j + 1)] = -1;
            s.hmap[Staircase::tri_index(n, i + 1, j)] = -1;
            s.entry[Staircase::tri_index(n, i + 1, j + 1)] = -1;
        }
    };
    if (n == 0) {
        out.push_back(s);
        return out;
    }
    dfs(0, 0);
    return out;
}

// Enumerate pointwise vertical transformations between staircases; positions
// in lexicographic (i,j) order with incremental face checks.
void stair_trans_dfs(const SquaresCat& d, const Staircase& S, const Staircase& T,
                     const std::function<void(const std::vector<int>&)>& emit) {
    const int n = S.n;
    const FinCat& V = d.vcat();
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) pos.emplace_back(i, j);
    std::vector<int> comps(pos.size(), -1);
    auto comp_at = [&](int i, int j) { return comps[Staircase::tri_index(n, i, j)]; };
    std::function<void(int)> dfs = [&](size_t k) {
        if (k == pos.size()) {
            emit(comps);
            return;
        }
        auto [i, j] = pos[k];
        for (int u : V.hom(S.at(i, j), T.at(i, j))) {
            if (i == j && u != V.identity(d.basepoint)) continue;
            bool ok = true;
            if (j > i && !d.base.has_square(S.h(i, j - 1), comp_at(i, j - 1), u, T.h(i, j - 1)))
                ok = false;  // horizontal edge into (i,j)
            if (ok && i > 0) {  // vertical edge from (i-1,j)
                if (V.compose(u, S.v(i - 1, j)) != V.compose(T.v(i - 1, j), comp_at(i - 1, j)))
                    ok = false;
            }
            if (!ok) continue;
            comps[Staircase::tri_index(n, i, j)] = u;
            dfs(k + 1);
            comps[Staircase::tri_index(n, i, j)] = -1;
        }
    };
    dfs(0);
}

Staircase stair_reindex(const SquaresCat& d, const Staircase& s, const std::vector<int>& theta) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    const int m = static_cast<int>(theta.size()) - 1;
    Staircase r;
    r.n = m;
    r.entry.assign(Staircase::tri_size(m), -1);
    r.hmap.assign(Staircase::tri_size(m), -1);
    r.vmap.assign(Staircase::tri_size(m), -1);
    for (int i = 0; i <= m; ++i)
        for (int j = i; j <= m; ++j)
            r.entry[Staircase::tri_index(m, i, j)] = s.at(theta[i], theta[j]);
    for (int i = 0; i <= m; ++i) {
        for (int j = i; j < m; ++j) {
            // composite along row theta[i] from column theta[j] to theta[j+1]
            int mcomp = H.identity(s.at(theta[i], theta[j]));
            for (int c = theta[j]; c < theta[j + 1]; ++c)
                mcomp = H.compose(s.h(theta[i], c), mcomp);
            r.hmap[Staircase::tri_index(m, i, j)] = mcomp;
        }
    }
    for (int i = 0; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            if (i + 1 > j) continue;
            // composite along column theta[j] from row theta[i] to theta[i+1]
            if (i == m) continue;
            int mcomp = V.identity(s.at(theta[i], theta[j]));
            for (int rr = theta[i]; rr < theta[i + 1]; ++rr)
                mcomp = V.compose(s.v(rr, theta[j]), mcomp);
            r.vmap[Staircase::tri_index(m, i, j)] = mcomp;
        }
    }
    return r;
}

std::vector<int> stair_comps_reindex(int n, const std::vector<int>& comps,
                                     const std::vector<int>& theta) {
    const int m = static_cast<int>(theta.size()) - 1;
    std::vector<int> r(Staircase::tri_size(m), -1);
    for (int i = 0; i <= m; ++i)
        for (int j = i; j <= m; ++j)
            r[Staircase::tri_index(m, i, j)] =
                comps[Staircase::tri_index(n, theta[i], theta[j])];
    return r;
}

}  // namespace

SLevel s_level(const SquaresCat& d, int n) {
    SLevel lv;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    // top rows: chains of length n starting at the basepoint
    for (const Chain& c : all_chains(H, n)) {
        if (c.vertices[0] != d.basepoint) continue;
        for (const Staircase& s : staircases_with_row0(d, c)) lv.staircases.push_back(s);
    }
    LevelKit kit;
    for (size_t i = 0; i < lv.staircases.size(); ++i) {
        kit.category->add_object(stair_id(d, lv.staircases[i]));
        lv.stair_index[lv.staircases[i]] = static_cast<int>(i);
    }
    for (size_t a = 0; a < lv.staircases.size(); ++a) {
        for (size_t b = 0; b < lv.staircases.size(); ++b) {
            stair_trans_dfs(d, lv.staircases[a], lv.staircases[b],
                            [&](const std::vector<int>& comps) {
                                kit.add_morphism(comps_id(V, (int)a, (int)b, comps), (int)a,
                                                 (int)b, comps);
                                lv.transformations.push_back({(int)a, (int)b, comps});
                            });
        }
    }
    for (size_t i = 0; i < lv.staircases.size(); ++i) {
        const Staircase& s = lv.staircases[i];
        std::vector<int> ids(Staircase::tri_size(n), -1);
        for (int x = 0; x <= n; ++x)
            for (int j = x; j <= n; ++j)
                ids[Staircase::tri_index(n, x, j)] = V.identity(s.at(x, j));
        kit.category->set_identity_idx((int)i, kit.find((int)i, (int)i, ids));
    }
    kit.close(V);
    lv.category = kit.category;
    lv.trans_index = std::move(kit.mor_index);
    return lv;
}

namespace {

FunctorData level_operator_functor(
    const std::shared_ptr<FinCat>& from, const std::shared_ptr<FinCat>& to,
    const std::function<int(int)>& omap, const std::function<int(int)>& mmap) {
    FunctorData f;
    f.source = from;
    f.target = to;
    for (int o = 0; o < from->object_count(); ++o) f.obj_map.push_back(omap(o));
    for (int m = 0; m < from->morphism_count(); ++m) f.mor_map.push_back(mmap(m));
    return f;
}

}  // namespace

simp::TruncSCat t_simplicial(const SquaresCat& d, int levels) {
    std::vector<TLevel> lv;
    for (int n = 0; n <= levels; ++n) lv.push_back(t_level(d, n));
    simp::TruncSCat sc;
    sc.bound = levels;
    sc.faces.resize(levels + 1);
    sc.degeneracies.resize(levels + 1);
    for (auto& l : lv) sc.levels.push_back(l.category);
    const FinCat& H = d.hcat();
    auto apply_theta = [&](int n, int m, const std::vector<int>& theta) {
        return level_operator_functor(
            lv[n].category, lv[m].category,
            [&](int o) { return lv[m].chain_index.at(chain_reindex(H, lv[n].chains[o], theta)); },
            [&](int mi) {
                const Ladder& L = lv[n].ladders[mi];
                Chain cs = chain_reindex(H, lv[n].chains[L.src], theta);
                Chain ct = chain_reindex(H, lv[n].chains[L.dst], theta);
                std::vector<int> comps;
                for (int v : theta) comps.push_back(L.comps[v]);
                int si = lv[m].chain_index.at(cs), ti = lv[m].chain_index.at(ct);
                std::vector<int> key{si, ti};
                key.insert(key.end(), comps.begin(), comps.end());
                return lv[m].ladder_index.at(key);
            });
    };
    for (int n = 1; n <= levels; ++n)
        for (int i = 0; i <= n; ++i) sc.faces[n].push_back(apply_theta(n, n - 1, delta_op(n, i)));
    for (int n = 0; n < levels; ++n)
        for (int i = 0; i <= n; ++i)
            sc.degeneracies[n].push_back(apply_theta(n, n + 1, sigma_op(n, i)));
    return sc;
}

simp::TruncSCat s_simplicial(const SquaresCat& d, int levels) {
    std::vector<SLevel> lv;
    for (int n = 0; n <= levels; ++n) lv.push_back(s_level(d, n));
    simp::TruncSCat sc;
    sc.bound = levels;
    sc.faces.resize(levels + 1);
    sc.degeneracies.resize(levels + 1);
    for (auto& l : lv) sc.levels.push_back(l.category);
    auto apply_theta = [&](int n, int m, const std::vector<int>& theta) {
        return level_operator_functor(
            lv[n].category, lv[m].category,
            [&](int o) {
                return lv[m].stair_index.at(stair_reindex(d, lv[n].staircases[o], theta));
            },
            [&](int mi) {
                const STrans& t = lv[n].transformations[mi];
                Staircase ss = stair_reindex(d, lv[n].staircases[t.src], theta);
                Staircase st = stair_reindex(d, lv[n].staircases[t.dst], theta);
                std::vector<int> comps = stair_comps_reindex(n, t.comps, theta);
                int si = lv[m].stair_index.at(ss), ti = lv[m].stair_index.at(st);
                std::vector<int> key{si, ti};
                key.insert(key.end(), comps.begin(), comps.end());
                return lv[m].trans_index.at(key);
            });
    };
    for (int n = 1; n <= levels; ++n)
        for (int i = 0; i <= n; ++i) sc.faces[n].push_back(apply_theta(n, n - 1, delta_op(n, i)));
    for (int n = 0; n < levels; ++n)
        for (int i = 0; i <= n; ++i)
            sc.degeneracies[n].push_back(apply_theta(n, n + 1, sigma_op(n, i)));
    return sc;
}

simp::TruncSSet ob_s(const SquaresCat& d, int levels) { return s_simplicial(d, levels).objects(); }

namespace {

std::string grid_id(const dbl::FlatDoubleCat& d, const Grid& g) {
    if (g.n == 0) return d.hcat->object_id(g.entry[0]);
    std::string r = "gr{";
    for (int h : g.hmap)
        if (h >= 0) r += d.hcat->morphism_id(h) + ";";
    r += "|";
    for (int v : g.vmap)
        if (v >= 0) r += d.vcat->morphism_id(v) + ";";
    return r + "}";
}

Grid grid_reindex(const dbl::FlatDoubleCat& d, const Grid& g, const std::vector<int>& theta) {
    const FinCat& H = *d.hcat;
    const FinCat& V = *d.vcat;
    const int m = static_cast<int>(theta.size()) - 1;
    Grid r;
    r.n = m;
    r.entry.assign((m + 1) * (m + 1), -1);
    r.hmap.assign((m + 1) * (m + 1), -1);
    r.vmap.assign((m + 1) * (m + 1), -1);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) r.entry[i * (m + 1) + j] = g.at(theta[i], theta[j]);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j < m; ++j) {
            int mc = H.identity(g.at(theta[i], theta[j]));
            for (int c = theta[j]; c < theta[j + 1]; ++c)
                mc = H.compose(g.hmap[theta[i] * (g.n + 1) + c], mc);
            r.hmap[i * (m + 1) + j] = mc;
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= m; ++j) {
            int mc = V.identity(g.at(theta[i], theta[j]));
            for (int rr = theta[i]; rr < theta[i + 1]; ++rr)
                mc = V.compose(g.vmap[rr * (g.n + 1) + theta[j]], mc);
            r.vmap[i * (m + 1) + j] = mc;
        }
    }
    return r;
}

std::vector<Grid> all_grids(const dbl::FlatDoubleCat& d, int n) {
    const FinCat& H = *d.hcat;
    const FinCat& V = *d.vcat;
    std::vector<Grid> out;
    if (n == 0) {
        for (int o = 0; o < H.object_count(); ++o) {
            Grid g;
            g.n = 0;
            g.entry = {o};
            g.hmap = {-1};
            g.vmap = {-1};
            out.push_back(g);
        }
        return out;
    }
    for (const Chain& row0 : all_chains(H, n)) {
        Grid g;
        g.n = n;
        g.entry.assign((n + 1) * (n + 1), -1);
        g.hmap.assign((n + 1) * (n + 1), -1);
        g.vmap.assign((n + 1) * (n + 1), -1);
        for (int j = 0; j <= n; ++j) g.entry[j] = row0.vertices[j];
        for (int j = 0; j < n; ++j) g.hmap[j] = row0.edges[j];
        // extend row by row; each row is a horizontal pasting of squares
        std::function<void(int)> next_row = [&](int i) {
            if (i == n) {
                out.push_back(g);
                return;
            }
            std::function<void(int)> fill = [&](int j) {
                if (j == n) {
                    next_row(i + 1);
                    return;
                }
                for (const Square& q :
                     d.squares_by_top_left(g.hmap[i * (n + 1) + j], g.vmap[i * (n + 1) + j])) {
                    g.vmap[i * (n + 1) + j + 1] = q.right;
                    g.hmap[(i + 1) * (n + 1) + j] = q.bottom;
                    g.entry[(i + 1) * (n + 1) + j + 1] = V.dst(q.right);
                    fill(j + 1);
                    g.vmap[i * (n + 1) + j + 1] = -1;
                    g.hmap[(i + 1) * (n + 1) + j] = -1;
                    g.entry[(i + 1) * (n + 1) + j + 1] = -1;
                }
            };
            for (int v0 : V.out_of(g.entry[i * (n + 1)])) {
                g.vmap[i * (n + 1)] = v0;
                g.entry[(i + 1) * (n + 1)] = V.dst(v0);
                fill(0);
                g.vmap[i * (n + 1)] = -1;
                g.entry[(i + 1) * (n + 1)] = -1;
            }
        };
        next_row(0);
    }
    return out;
}

}  // namespace

simp::TruncSSet double_nerve_diag(const dbl::FlatDoubleCat& d, int levels) {
    std::vector<std::vector<Grid>> grids(levels + 1);
    std::vector<std::map<Grid, int>> index(levels + 1);
    simp::TruncSSet x;
    x.bound = levels;
    x.simplices.resize(levels + 1);
    x.faces.resize(levels + 1);
    x.degeneracies.resize(levels + 1);
    for (int n = 0; n <= levels; ++n) {
        grids[n] = all_grids(d, n);
        for (size_t i = 0; i < grids[n].size(); ++i) {
            index[n][grids[n][i]] = static_cast<int>(i);
            x.simplices[n].push_back(grid_id(d, grids[n][i]));
        }
    }
    for (int n = 1; n <= levels; ++n) {
        x.faces[n].assign(n + 1, std::vector<int>(x.size(n), -1));
        for (int i = 0; i <= n; ++i) {
            auto theta = delta_op(n, i);
            for (int s = 0; s < x.size(n); ++s)
                x.faces[n][i][s] = index[n - 1].at(grid_reindex(d, grids[n][s], theta));
        }
    }
    for (int n = 0; n < levels; ++n) {
        x.degeneracies[n].assign(n + 1, std::vector<int>(x.size(n), -1));
        for (int i = 0; i <= n; ++i) {
            auto theta = sigma_op(n, i);
            for (int s = 0; s < x.size(n); ++s)
                x.degeneracies[n][i][s] = index[n + 1].at(grid_reindex(d, grids[n][s], theta));
        }
    }
    return x;
}

TPlusLevel t_plus_level(const SquaresCat& d, int n) {
    TPlusLevel lv;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    for (const Chain& top : all_chains(H, n)) {
        // connectors and row 0 of the staircase via squares on (c_j, t_{j-1})
        std::vector<int> connectors(n + 1, -1);
        Chain row0;
        row0.vertices.assign(n + 1, -1);
        row0.edges.assign(n, -1);
        connectors[0] = d.point_v(top.vertices[0]);
        row0.vertices[0] = d.basepoint;
        std::function<void(int)> dfs = [&](int j) {
            if (j == n + 1) {
                for (const Staircase& s : staircases_with_row0(d, row0)) {
                    lv.objs.push_back({top, connectors, s});
                }
                return;
            }
            for (const Square& q :
                 d.base.squares_by_top_left(top.edges[j - 1], connectors[j - 1])) {
                connectors[j] = q.right;
                row0.vertices[j] = V.dst(q.right);
                row0.edges[j - 1] = q.bottom;
                dfs(j + 1);
                connectors[j] = -1;
                row0.vertices[j] = -1;
                row0.edges[j - 1] = -1;
            }
        };
        if (n == 0) {
            for (const Staircase& s : staircases_with_row0(d, row0)) {
                lv.objs.push_back({top, connectors, s});
            }
        } else {
            dfs(1);
        }
    }
    std::sort(lv.objs.begin(), lv.objs.end());
    LevelKit kit;
    for (size_t i = 0; i < lv.objs.size(); ++i) {
        lv.obj_index[lv.objs[i]] = static_cast<int>(i);
        kit.category->add_object("tp" + std::to_string(i) + "{" +
                                 chain_id(H, lv.objs[i].top) + "/" +
                                 stair_id(d, lv.objs[i].stair) + "/" +
                                 join_ids(V, lv.objs[i].connectors, false) + "}");
    }
    // transformations: top components + staircase components
    for (size_t a = 0; a < lv.objs.size(); ++a) {
        const TPlusObj& Sx = lv.objs[a];
        for (size_t b = 0; b < lv.objs.size(); ++b) {
            const TPlusObj& Tx = lv.objs[b];
            std::vector<int> top_comps;
            std::function<void(int)> dfs_top = [&](int k) {
                if (k == n + 1) {
                    stair_trans_dfs(d, Sx.stair, Tx.stair, [&](const std::vector<int>& sc) {
                        // connector faces: commute in vcat
                        for (int j = 0; j <= n; ++j) {
                            int lhs = V.compose(sc[Staircase::tri_index(n, 0, j)],
                                                Sx.connectors[j]);
                            int rhs = V.compose(Tx.connectors[j], top_comps[j]);
                            if (lhs != rhs || lhs < 0) return;
                        }
                        std::vector<int> comps = top_comps;
                        comps.insert(comps.end(), sc.begin(), sc.end());
                        kit.add_morphism(comps_id(V, (int)a, (int)b, comps), (int)a, (int)b,
                                         comps);
                        lv.transformations.push_back({(int)a, (int)b, top_comps, sc});
                    });
                    return;
                }
                for (int u : V.hom(Sx.top.vertices[k], Tx.top.vertices[k])) {
                    if (k > 0 &&
                        !d.base.has_square(Sx.top.edges[k - 1], top_comps[k - 1], u,
                                           Tx.top.edges[k - 1]))
                        continue;
                    top_comps.push_back(u);
                    dfs_top(k + 1);
                    top_comps.pop_back();
                }
            };
            dfs_top(0);
        }
    }
    for (size_t i = 0; i < lv.objs.size(); ++i) {
        const TPlusObj& o = lv.objs[i];
        std::vector<int> ids;
        for (int vtx : o.top.vertices) ids.push_back(V.identity(vtx));
        for (int x = 0; x <= n; ++x)
            for (int j = x; j <= n; ++j) ids.push_back(V.identity(o.stair.at(x, j)));
        kit.category->set_identity_idx((int)i, kit.find((int)i, (int)i, ids));
    }
    kit.close(V);
    lv.category = kit.category;
    lv.trans_index = std::move(kit.mor_index);
    return lv;
}

HVLevel hv_level(const SquaresCat& d, int n, HVTarget target) {
    HVLevel lv;
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    LevelKit kit;
    if (target == HVTarget::H) {
        for (const Chain& c : all_chains(H, n)) {
            if (c.vertices[0] != d.basepoint) continue;
            lv.chain_index[c] = static_cast<int>(lv.chains.size());
            lv.chains.push_back(c);
            kit.category->add_object(chain_id(H, c));
        }
        for (size_t a = 0; a < lv.chains.size(); ++a) {
            for (size_t b = 0; b < lv.chains.size(); ++b) {
                const Chain& S = lv.chains[a];
                const Chain& T = lv.chains[b];
                std::vector<int> comps;
                std::function<void(int)> dfs = [&](int k) {
                    if (k == n + 1) {
                        kit.add_morphism(comps_id(V, (int)a, (int)b, comps), (int)a, (int)b,
                                         comps);
                        lv.transformations.push_back({(int)a, (int)b, comps});
                        return;
                    }
                    for (int u : V.hom(S.vertices[k], T.vertices[k])) {
                        if (k > 0 &&
                            !d.base.has_square(S.edges[k - 1], comps[k - 1], u, T.edges[k - 1]))
                            continue;
                        comps.push_back(u);
                        dfs(k + 1);
                        comps.pop_back();
                    }
                };
                dfs(0);
            }
        }
    } else {
        auto weqs = dbl::weak_equivalences(d);
        for (const Chain& c : all_chains(V, n)) {
            if (c.vertices[n] != d.basepoint) continue;
            lv.chain_index[c] = static_cast<int>(lv.chains.size());
            lv.chains.push_back(c);
            kit.category->add_object(chain_id(V, c));
        }
        for (size_t a = 0; a < lv.chains.size(); ++a) {
            for (size_t b = 0; b < lv.chains.size(); ++b) {
                const Chain& S = lv.chains[a];
                const Chain& T = lv.chains[b];
                std::vector<int> comps;
                std::function<void(int)> dfs = [&](int k) {
                    if (k == n + 1) {
                        kit.add_morphism(comps_id(V, (int)a, (int)b, comps), (int)a, (int)b,
                                         comps);
                        lv.transformations.push_back({(int)a, (int)b, comps});
                        return;
                    }
                    for (int u : V.hom(S.vertices[k], T.vertices[k])) {
                        if (!weqs.is_vweq(u)) continue;
                        if (k > 0 && V.compose(u, S.edges[k - 1]) !=
                                         V.compose(T.edges[k - 1], comps[k - 1]))
                            continue;
                        comps.push_back(u);
                        dfs(k + 1);
                        comps.pop_back();
                    }
                };
                dfs(0);
            }
        }
    }
    for (size_t i = 0; i < lv.chains.size(); ++i) {
        std::vector<int> ids;
        for (int vtx : lv.chains[i].vertices) ids.push_back(V.identity(vtx));
        kit.category->set_identity_idx((int)i, kit.find((int)i, (int)i, ids));
    }
    kit.close(V);
    lv.category = kit.category;
    lv.ladder_index = std::move(kit.mor_index);
    return lv;
}

namespace {

// modified H face d_0: inductive span completion of the chain
Chain h_face0_chain(const SquaresCat& d, const dbl::CompletionData& comp, const Chain& c,
                    std::vector<std::pair<int, int>>* spans_used) {
    const FinCat& V = d.vcat();
    const int n = c.length();
    Chain r;
    r.vertices.push_back(d.basepoint);
    int lv = d.point_v(c.vertices[1]);
    for (int j = 2; j <= n; ++j) {
        auto key = std::make_pair(c.edges[j - 1], lv);
        auto it = comp.span_complete.find(key);
        if (it == comp.span_complete.end())
            throw IncompleteData("span(" + d.hcat().morphism_id(key.first) + "," +
                                 V.morphism_id(key.second) + ")");
        if (spans_used) spans_used->push_back(key);
        const Square& sq = it->second;
        r.edges.push_back(sq.bottom);
        r.vertices.push_back(V.dst(sq.right));
        lv = sq.right;
    }
    return r;
}

Chain v_facen_chain(const SquaresCat& d, const dbl::CompletionData& comp, const Chain& c,
                    std::vector<std::pair<int, int>>* cospans_used) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    const int n = c.length();
    // walk t = n-1 .. 1, collecting completions, then assemble forward
    std::vector<int> newB(n, -1), newEdge(n, -1);
    int g = d.point_h(c.vertices[n - 1]);
    for (int t = n - 1; t >= 1; --t) {
        auto key = std::make_pair(c.edges[t - 1 + 1], g);  // edge t: vertices[t-1]->vertices[t]
        auto it = comp.cospan_complete.find(std::make_pair(c.edges[t - 1], g));
        (void)key;
        if (it == comp.cospan_complete.end())
            throw IncompleteData("cospan(" + V.morphism_id(c.edges[t - 1]) + "," +
                                 H.morphism_id(g) + ")");
        if (cospans_used) cospans_used->push_back({c.edges[t - 1], g});
        const Square& sq = it->second;
        newB[t] = V.src(sq.left);
        newEdge[t] = sq.left;
        g = sq.top;
    }
    Chain r;
    for (int t = 1; t <= n - 1; ++t) r.vertices.push_back(newB[t]);
    r.vertices.push_back(d.basepoint);
    for (int t = 1; t <= n - 1; ++t) r.edges.push_back(newEdge[t]);
    return r;
}

}  // namespace

cat::FunctorData hv_face(const SquaresCat& d, const dbl::CompletionData& comp,
                         const HVLevel& from, const HVLevel& to, int n, int i, HVTarget target) {
    const FinCat& H = d.hcat();
    const FinCat& V = d.vcat();
    const bool modified = (target == HVTarget::H && i == 0) || (target == HVTarget::V && i == n);
    const FinCat& chain_cat = (target == HVTarget::H) ? H : V;
    auto ordinary = [&](const Chain& c) { return chain_reindex(chain_cat, c, delta_op(n, i)); };
    cat::FunctorData f;
    f.source = from.category;
    f.target = to.category;
    for (const Chain& c : from.chains) {
        Chain img;
        if (!modified)
            img = ordinary(c);
        else if (target == HVTarget::H)
            img = h_face0_chain(d, comp, c, nullptr);
        else
            img = v_facen_chain(d, comp, c, nullptr);
        f.obj_map.push_back(to.chain_index.at(img));
    }
    for (const Ladder& t : from.transformations) {
        const Chain& S = from.chains[t.src];
        const Chain& T = from.chains[t.dst];
        std::vector<int> comps;
        Chain si, ti;
        if (!modified) {
            si = ordinary(S);
            ti = ordinary(T);
            for (int v : delta_op(n, i)) comps.push_back(t.comps[v]);
        } else if (target == HVTarget::H) {
            si = h_face0_chain(d, comp, S, nullptr);
            ti = h_face0_chain(d, comp, T, nullptr);
            comps.push_back(V.identity(d.basepoint));
            int beta_prev = V.identity(d.basepoint);
            int lvS = d.point_v(S.vertices[1]);
            int lvT = d.point_v(T.vertices[1]);
            for (int j = 1; j <= n - 1; ++j) {
                std::array<int, 7> key{S.edges[j], lvS, T.edges[j], lvT,
                                       t.comps[j], t.comps[j + 1], beta_prev};
                auto it = comp.span_action.find(key);
                if (it == comp.span_action.end())
                    throw IncompleteData("span action for modified face");
                beta_prev = it->second;
                comps.push_back(beta_prev);
                lvS = comp.span_complete.at({S.edges[j], lvS}).right;
                lvT = comp.span_complete.at({T.edges[j], lvT}).right;
            }
        } else {
            si = v_facen_chain(d, comp, S, nullptr);
            ti = v_facen_chain(d, comp, T, nullptr);
            std::vector<int> gamma(n + 1, -1);
            gamma[n] = V.identity(d.basepoint);
            int gS = d.point_h(S.vertices[n - 1]);
            int gT = d.point_h(T.vertices[n - 1]);
            for (int tt = n - 1; tt >= 1; --tt) {
                std::array<int, 7> key{S.edges[tt - 1], gS, T.edges[tt - 1], gT,
                                       t.comps[tt - 1], gamma[tt + 1], t.comps[tt]};
                auto it = comp.cospan_action.find(key);
                if (it == comp.cospan_action.end())
                    throw IncompleteData("cospan action for modified face");
                gamma[tt] = it->second;
                gS = comp.cospan_complete.at({S.edges[tt - 1], gS}).top;
                gT = comp.cospan_complete.at({T.edges[tt - 1], gT}).top;
            }
            for (int tt = 1; tt <= n - 1; ++tt) comps.push_back(gamma[tt]);
            comps.push_back(V.identity(d.basepoint));
        }
        int sidx = to.chain_index.at(si), tidx = to.chain_index.at(ti);
        std::vector<int> keyv{sidx, tidx};
        keyv.insert(keyv.end(), comps.begin(), comps.end());
        f.mor_map.push_back(to.ladder_index.at(keyv));
    }
    return f;
}

cat::FunctorData forgetful_functor(const SquaresCat& d, const SLevel& s, const HVLevel& hv,
                                   HVTarget target) {
    const int n = s.staircases.empty() ? 0 : s.staircases[0].n;
    cat::FunctorData f;
    f.source = s.category;
    f.target = hv.category;
    auto project = [&](const Staircase& st) {
        Chain c;
        if (target == HVTarget::H) {
            for (int j = 0; j <= n; ++j) c.vertices.push_back(st.at(0, j));
            for (int j = 0; j < n; ++j) c.edges.push_back(st.h(0, j));
        } else {
            for (int i = 0; i <= n; ++i) c.vertices.push_back(st.at(i, n));
            for (int i = 1; i <= n; ++i) c.edges.push_back(st.v(i - 1, n));
        }
        return c;
    };
    for (const Staircase& st : s.staircases) f.obj_map.push_back(hv.chain_index.at(project(st)));
    for (const STrans& t : s.transformations) {
        std::vector<int> comps;
        if (target == HVTarget::H) {
            for (int j = 0; j <= n; ++j) comps.push_back(t.comps[Staircase::tri_index(n, 0, j)]);
        } else {
            for (int i = 0; i <= n; ++i) comps.push_back(t.comps[Staircase::tri_index(n, i, n)]);
        }
        int si = f.obj_map[t.src], ti = f.obj_map[t.dst];
        std::vector<int> key{si, ti};
        key.insert(key.end(), comps.begin(), comps.end());
        f.mor_map.push_back(hv.ladder_index.at(key));
    }
    return f;
}

std::string ForgetfulReport::to_string() const {
    std::ostringstream os;
    os << "forgetful S_" << level << " -> " << (target == HVTarget::H ? "H_" : "V_") << level
       << ": " << equivalence.to_string() << "\n";
    return os.str();
}

ForgetfulReport forgetful_equivalence(const SquaresCat& d, int n, HVTarget target) {
    ForgetfulReport rep;
    rep.level = n;
    rep.target = target;
    SLevel s = s_level(d, n);
    HVLevel hv = hv_level(d, n, target);
    auto U = forgetful_functor(d, s, hv, target);
    rep.equivalence = cat::check_functor_equivalence(U);
    return rep;
}

std::string ComparisonReport::to_string() const {
    std::ostringstream os;
    os << "comparison witnesses at n = " << level << "\n";
    if (incomplete) {
        os << "INCOMPLETE DATA: " << missing << "\n";
        return os.str();
    }
    auto pr = [&](const char* k, bool v) { os << "  " << k << ": " << (v ? "PASS" : "FAIL") << "\n"; };
    pr("U (top row) functor", u_valid);
    pr("F section functor", f_valid);
    pr("U∘F = id", section);
    pr("tau components", tau_components_valid);
    pr("tau naturality", tau_natural);
    pr("U' (delete top row) functor", uprime_valid);
    pr("F' section functor", fprime_valid);
    pr("U'∘F' = id", section_prime);
    pr("tau' components", tau_prime_components_valid);
    pr("tau' naturality", tau_prime_natural);
    if (!first_failure.empty()) os << "  first failure: " << first_failure << "\n";
    os << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

ComparisonReport comparison_witnesses(const SquaresCat& d, const dbl::CompletionData& comp,
                                      int n) {
    ComparisonReport rep;
    rep.level = n;
    const FinCat& V = d.vcat();
    TLevel T = t_level(d, n);
    TPlusLevel TP = t_plus_level(d, n);
    SLevel S = s_level(d, n);

    try {
        // ---- U: T+ -> T, the top row ----
        cat::FunctorData U;
        U.source = TP.category;
        U.target = T.category;
        for (const TPlusObj& o : TP.objs) U.obj_map.push_back(T.chain_index.at(o.top));
        for (const TPlusTrans& t : TP.transformations) {
            std::vector<int> key{U.obj_map[t.src], U.obj_map[t.dst]};
            key.insert(key.end(), t.comps_top.begin(), t.comps_top.end());
            U.mor_map.push_back(T.ladder_index.at(key));
        }
        rep.u_valid = cat::validate_functor(U).ok();

        // ---- F: T -> T+, sequential span completions ----
        auto span_of = [&](int f, int u) -> const Square& {
            auto it = comp.span_complete.find({f, u});
            if (it == comp.span_complete.end())
                throw IncompleteData("span(" + d.hcat().morphism_id(f) + "," + V.morphism_id(u) +
                                     ")");
            return it->second;
        };
        auto action_of = [&](int f, int u, int f2, int u2, int p, int q, int r) -> int {
            auto it = comp.span_action.find({f, u, f2, u2, p, q, r});
            if (it == comp.span_action.end())
                throw IncompleteData("span action (" + d.hcat().morphism_id(f) + "," +
                                     V.morphism_id(u) + ")->(" + d.hcat().morphism_id(f2) + "," +
                                     V.morphism_id(u2) + ")");
            return it->second;
        };
        // object part: build the T+ object over a chain; also record, per grid
        // position, the span used so the morphism part can replay it.
        struct FBuild {
            TPlusObj obj;
            // spans_used[i][j]: span completed to produce stair position (i+1, j+1)
            std::vector<std::vector<std::pair<int, int>>> spans_used;
        };
        auto build_F = [&](const Chain& c) {
            FBuild b;
            b.obj.top = c;
            b.obj.connectors.assign(n + 1, -1);
            b.obj.stair.n = n;
            b.obj.stair.entry.assign(Staircase::tri_size(n), -1);
            b.obj.stair.hmap.assign(Staircase::tri_size(n), -1);
            b.obj.stair.vmap.assign(Staircase::tri_size(n), -1);
            b.spans_used.assign(n + 1, std::vector<std::pair<int, int>>(n + 1, {-1, -1}));
            auto& st = b.obj.stair;
            auto set_entry = [&](int i, int j, int v) {
                st.entry[Staircase::tri_index(n, i, j)] = v;
            };
            set_entry(0, 0, d.basepoint);
            b.obj.connectors[0] = d.point_v(c.vertices[0]);
            // row 0 via the connectors
            for (int j = 1; j <= n; ++j) {
                std::pair<int, int> sp{c.edges[j - 1], b.obj.connectors[j - 1]};
                const Square& q = span_of(sp.first, sp.second);
                b.spans_used[0][j] = sp;
                b.obj.connectors[j] = q.right;
                set_entry(0, j, V.dst(q.right));
                st.hmap[Staircase::tri_index(n, 0, j - 1)] = q.bottom;
            }
            // lower rows
            for (int i = 0; i < n; ++i) {
                st.vmap[Staircase::tri_index(n, i, i + 1)] = d.point_v(st.at(i, i + 1));
                set_entry(i + 1, i + 1, d.basepoint);
                int lv = st.v(i, i + 1);
                for (int j = i + 2; j <= n; ++j) {
                    std::pair<int, int> sp{st.h(i, j - 1), lv};
                    const Square& q = span_of(sp.first, sp.second);
                    b.spans_used[i + 1][j] = sp;
                    st.vmap[Staircase::tri_index(n, i, j)] = q.right;
                    st.hmap[Staircase::tri_index(n, i + 1, j - 1)] = q.bottom;
                    set_entry(i + 1, j, V.dst(q.right));
                    lv = q.right;
                }
            }
            return b;
        };
        std::vector<FBuild> fimages;
        cat::FunctorData F;
        F.source = T.category;
        F.target = TP.category;
        for (const Chain& c : T.chains) {
            fimages.push_back(build_F(c));
            auto it = TP.obj_index.find(fimages.back().obj);
            if (it == TP.obj_index.end()) throw std::logic_error("F image not a T+ object");
            F.obj_map.push_back(it->second);
        }
        for (const Ladder& L : T.ladders) {
            const FBuild& bs = fimages[L.src];
            const FBuild& bt = fimages[L.dst];
            // top components are the ladder's own; staircase components replayed
            std::vector<int> stair_comps(Staircase::tri_size(n), -1);
            auto set_c = [&](int i, int j, int v) {
                stair_comps[Staircase::tri_index(n, i, j)] = v;
            };
            for (int i = 0; i <= n; ++i) set_c(i, i, V.identity(d.basepoint));
            // row 0 components from the ladder, rows below via the action
            std::vector<std::vector<int>> tau(n + 1, std::vector<int>(n + 1, -1));
            for (int j = 0; j <= n; ++j) tau[0][j] = L.comps[j];  // on the top chain
            // grid rows of the staircase: stair row r corresponds to tau_row r+1
            std::vector<std::vector<int>> stc(n + 1, std::vector<int>(n + 1, -1));
            for (int i = 0; i <= n; ++i) stc[i][i] = V.identity(d.basepoint);
            for (int i = 0; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    auto sp_s = bs.spans_used[i][j];
                    auto sp_t = bt.spans_used[i][j];
                    int p, q, r;
                    if (i == 0) {
                        p = L.comps[j - 1];
                        q = L.comps[j];
                        r = stc[0][j - 1];
                    } else {
                        p = stc[i - 1][j - 1];
                        q = stc[i - 1][j];
                        r = stc[i][j - 1];
                    }
                    stc[i][j] = action_of(sp_s.first, sp_s.second, sp_t.first, sp_t.second, p, q,
                                          r);
                }
            }
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j) set_c(i, j, stc[i][j]);
            std::vector<int> key{F.obj_map[L.src], F.obj_map[L.dst]};
            key.insert(key.end(), L.comps.begin(), L.comps.end());
            key.insert(key.end(), stair_comps.begin(), stair_comps.end());
            auto it = TP.trans_index.find(key);
            if (it == TP.trans_index.end())
                throw std::logic_error("F image of a ladder is not a T+ morphism");
            F.mor_map.push_back(it->second);
        }
        rep.f_valid = cat::validate_functor(F).ok();
        rep.section = cat::functors_equal(cat::compose_functors(U, F),
                                          cat::identity_functor(T.category));

        // ---- tau: F U => id ----
        std::vector<int> tau_mor(TP.objs.size(), -1);
        rep.tau_components_valid = true;
        for (size_t x = 0; x < TP.objs.size(); ++x) {
            const TPlusObj& X = TP.objs[x];
            int fu_idx = F.obj_map[U.obj_map[x]];
            const FBuild& Y = fimages[U.obj_map[x]];
            // components: identity on the top chain; on the staircase, walk the
            // grid composing the span action with the w component of X's squares
            std::vector<std::vector<int>> tc(n + 1, std::vector<int>(n + 1, -1));
            for (int i = 0; i <= n; ++i) tc[i][i] = V.identity(d.basepoint);
            bool ok = true;
            for (int i = 0; i <= n && ok; ++i) {
                for (int j = i + 1; j <= n && ok; ++j) {
                    // X's square above position (i,j) of the staircase
                    Square xsq;
                    int p, q, r;
                    if (i == 0) {
                        xsq = {X.top.edges[j - 1], X.connectors[j - 1], X.connectors[j],
                               X.stair.h(0, j - 1)};
                        p = V.identity(X.top.vertices[j - 1]);
                        q = V.identity(X.top.vertices[j]);
                        r = tc[0][j - 1];
                    } else {
                        xsq = {X.stair.h(i - 1, j - 1), X.stair.v(i - 1, j - 1),
                               X.stair.v(i - 1, j), X.stair.h(i, j - 1)};
                        p = tc[i - 1][j - 1];
                        q = tc[i - 1][j];
                        r = tc[i][j - 1];
                    }
                    auto wit = comp.w_components.find(xsq.key());
                    if (wit == comp.w_components.end())
                        throw IncompleteData("w component for " + d.base.square_str(xsq));
                    auto sp_y = Y.spans_used[i][j];
                    int act = action_of(sp_y.first, sp_y.second, xsq.top, xsq.left, p, q, r);
                    tc[i][j] = V.compose(wit->second, act);
                    if (tc[i][j] < 0) ok = false;
                }
            }
            if (!ok) {
                rep.tau_components_valid = false;
                rep.first_failure = "tau component composition failed";
                break;
            }
            std::vector<int> key{fu_idx, (int)x};
            for (int j = 0; j <= n; ++j) key.push_back(V.identity(X.top.vertices[j]));
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j) key.push_back(tc[i][j]);
            auto it = TP.trans_index.find(key);
            if (it == TP.trans_index.end()) {
                rep.tau_components_valid = false;
                rep.first_failure = "tau component is not a valid T+ morphism at object " +
                                    std::to_string(x);
                break;
            }
            tau_mor[x] = it->second;
        }
        rep.tau_natural = rep.tau_components_valid;
        if (rep.tau_components_valid) {
            const FinCat& TPC = *TP.category;
            auto FU = cat::compose_functors(F, U);
            for (int m = 0; m < TPC.morphism_count() && rep.tau_natural; ++m) {
                int xs = TPC.src(m), xd = TPC.dst(m);
                if (TPC.compose(tau_mor[xd], FU.mor_map[m]) != TPC.compose(m, tau_mor[xs])) {
                    rep.tau_natural = false;
                    rep.first_failure = "tau not natural at " + TPC.morphism_id(m);
                }
            }
        }

        // ---- U': T+ -> S, delete the top row ----
        cat::FunctorData Up;
        Up.source = TP.category;
        Up.target = S.category;
        for (const TPlusObj& o : TP.objs) Up.obj_map.push_back(S.stair_index.at(o.stair));
        for (const TPlusTrans& t : TP.transformations) {
            std::vector<int> key{Up.obj_map[t.src], Up.obj_map[t.dst]};
            key.insert(key.end(), t.comps_stair.begin(), t.comps_stair.end());
            Up.mor_map.push_back(S.trans_index.at(key));
        }
        rep.uprime_valid = cat::validate_functor(Up).ok();

        // ---- F': S -> T+, duplicate the top row with identity connectors ----
        cat::FunctorData Fp;
        Fp.source = S.category;
        Fp.target = TP.category;
        auto fprime_obj = [&](const Staircase& st) {
            TPlusObj o;
            o.stair = st;
            for (int j = 0; j <= n; ++j) o.top.vertices.push_back(st.at(0, j));
            for (int j = 0; j < n; ++j) o.top.edges.push_back(st.h(0, j));
            for (int j = 0; j <= n; ++j) o.connectors.push_back(V.identity(st.at(0, j)));
            return o;
        };
        for (const Staircase& st : S.staircases)
            Fp.obj_map.push_back(TP.obj_index.at(fprime_obj(st)));
        for (const STrans& t : S.transformations) {
            std::vector<int> key{Fp.obj_map[t.src], Fp.obj_map[t.dst]};
            for (int j = 0; j <= n; ++j) key.push_back(t.comps[Staircase::tri_index(n, 0, j)]);
            key.insert(key.end(), t.comps.begin(), t.comps.end());
            Fp.mor_map.push_back(TP.trans_index.at(key));
        }
        rep.fprime_valid = cat::validate_functor(Fp).ok();
        rep.section_prime = cat::functors_equal(cat::compose_functors(Up, Fp),
                                                cat::identity_functor(S.category));

        // ---- tau': id => F' U' ----
        std::vector<int> taup_mor(TP.objs.size(), -1);
        rep.tau_prime_components_valid = true;
        for (size_t x = 0; x < TP.objs.size(); ++x) {
            const TPlusObj& X = TP.objs[x];
            int fu_idx = Fp.obj_map[Up.obj_map[x]];
            std::vector<int> key{(int)x, fu_idx};
            for (int j = 0; j <= n; ++j) key.push_back(X.connectors[j]);
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j) key.push_back(V.identity(X.stair.at(i, j)));
            auto it = TP.trans_index.find(key);
            if (it == TP.trans_index.end()) {
                rep.tau_prime_components_valid = false;
                rep.first_failure = "tau' component is not a valid T+ morphism at object " +
                                    std::to_string(x);
                break;
            }
            taup_mor[x] = it->second;
        }
        rep.tau_prime_natural = rep.tau_prime_components_valid;
        if (rep.tau_prime_components_valid) {
            const FinCat& TPC = *TP.category;
            auto FUp = cat::compose_functors(Fp, Up);
            for (int m = 0; m < TPC.morphism_count() && rep.tau_prime_natural; ++m) {
                int xs = TPC.src(m), xd = TPC.dst(m);
                if (TPC.compose(FUp.mor_map[m], taup_mor[xs]) != TPC.compose(taup_mor[xd], m)) {
                    rep.tau_prime_natural = false;
                    rep.first_failure = "tau' not natural at " + TPC.morphism_id(m);
                }
            }
        }
    } catch (const IncompleteData& e) {
        rep.incomplete = true;
        rep.missing = e.what();
    }
    return rep;
}

}  // namespace sqcat::cons

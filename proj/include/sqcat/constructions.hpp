#ifndef SQCAT_CONSTRUCTIONS_HPP
#define SQCAT_CONSTRUCTIONS_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sqcat/double.hpp"
#include "sqcat/simplicial.hpp"

namespace sqcat::cons {

/// Thrown when an operation needs a completion datum that was not supplied.
struct IncompleteData : std::runtime_error {
    explicit IncompleteData(const std::string& what) : std::runtime_error(what) {}
};

/// A composable chain: vertices[0..n] and edges[1..n] with
/// edge k : vertices[k-1] -> vertices[k] in the given category.
struct Chain {
    std::vector<int> vertices;
    std::vector<int> edges;
    int length() const { return static_cast<int>(edges.size()); }
    bool operator<(const Chain& o) const {
        return std::tie(vertices, edges) < std::tie(o.vertices, o.edges);
    }
    bool operator==(const Chain& o) const = default;
};

/// Ladder between chains: one vertical component per vertex; each rung is a
/// square of the ambient squares category.
struct Ladder {
    int src = -1, dst = -1;
    std::vector<int> comps;
};

/// Triangular staircase diagram with basepoint entries on the diagonal.
/// Positions (i,j) with 0 <= i <= j <= n; hmap at (i,j) points to (i,j+1),
/// vmap at (i,j) points to (i+1,j).
struct Staircase {
    int n = 0;
    std::vector<int> entry;  // flat upper-triangular storage
    std::vector<int> hmap;   // -1 where undefined
    std::vector<int> vmap;

    static int tri_index(int n, int i, int j) { return i * (n + 1) - i * (i - 1) / 2 + (j - i); }
    static int tri_size(int n) { return (n + 1) * (n + 2) / 2; }
    int at(int i, int j) const { return entry[tri_index(n, i, j)]; }
    int h(int i, int j) const { return hmap[tri_index(n, i, j)]; }
    int v(int i, int j) const { return vmap[tri_index(n, i, j)]; }
    bool operator<(const Staircase& o) const {
        return std::tie(entry, hmap, vmap) < std::tie(o.entry, o.hmap, o.vmap);
    }
    bool operator==(const Staircase& o) const = default;
};

/// Pointwise vertical transformation between staircases.
struct STrans {
    int src = -1, dst = -1;
    std::vector<int> comps;  // flat upper-triangular, all positions
};

/// Square grid of pasted squares (a diagonal simplex of the double nerve).
struct Grid {
    int n = 0;
    std::vector<int> entry;  // (n+1)^2 entries, row-major
    std::vector<int> hmap;   // (i,j)->(i,j+1), -1 where undefined
    std::vector<int> vmap;   // (i,j)->(i+1,j)
    int at(int i, int j) const { return entry[i * (n + 1) + j]; }
    bool operator<(const Grid& o) const {
        return std::tie(entry, hmap, vmap) < std::tie(o.entry, o.hmap, o.vmap);
    }
};

/// Objects of T+_n: a top chain, its connectors into a staircase, and the
/// staircase itself. Every elementary face is a square of the input.
struct TPlusObj {
    Chain top;
    std::vector<int> connectors;  // C_j ->> A_{0j}
    Staircase stair;
    bool operator<(const TPlusObj& o) const {
        return std::tie(top, connectors, stair) < std::tie(o.top, o.connectors, o.stair);
    }
};

struct TPlusTrans {
    int src = -1, dst = -1;
    std::vector<int> comps_top;
    std::vector<int> comps_stair;
};

struct TLevel {
    std::shared_ptr<cat::FinCat> category;
    std::vector<Chain> chains;
    std::vector<Ladder> ladders;
    std::map<Chain, int> chain_index;
    std::map<std::vector<int>, int> ladder_index;  // [src,dst,comps...]
};

struct SLevel {
    std::shared_ptr<cat::FinCat> category;
    std::vector<Staircase> staircases;
    std::vector<STrans> transformations;
    std::map<Staircase, int> stair_index;
    std::map<std::vector<int>, int> trans_index;
};

struct TPlusLevel {
    std::shared_ptr<cat::FinCat> category;
    std::vector<TPlusObj> objs;
    std::vector<TPlusTrans> transformations;
    std::map<TPlusObj, int> obj_index;
    std::map<std::vector<int>, int> trans_index;
};

TLevel t_level(const dbl::SquaresCat& d, int n);
SLevel s_level(const dbl::SquaresCat& d, int n);
TPlusLevel t_plus_level(const dbl::SquaresCat& d, int n);

simp::TruncSCat t_simplicial(const dbl::SquaresCat& d, int levels);
simp::TruncSCat s_simplicial(const dbl::SquaresCat& d, int levels);
simp::TruncSSet ob_s(const dbl::SquaresCat& d, int levels);

/// Diagonal of the double nerve: level n is the set of n-by-n pasting grids.
simp::TruncSSet double_nerve_diag(const dbl::FlatDoubleCat& d, int levels);

enum class HVTarget { H, V };

/// Level of the auxiliary simplicial category of horizontal (resp. vertical)
/// chains anchored at the basepoint, with pointwise-weak-equivalence morphisms.
struct HVLevel {
    std::shared_ptr<cat::FinCat> category;
    std::vector<Chain> chains;
    std::vector<Ladder> transformations;
    std::map<Chain, int> chain_index;
    std::map<std::vector<int>, int> ladder_index;
};
HVLevel hv_level(const dbl::SquaresCat& d, int n, HVTarget target);

/// Face functor between hv levels; i = 0 on H (resp. i = n on V) is the
/// modified face built by inductive span (resp. cospan) completion and throws
/// IncompleteData when the needed completion is missing.
cat::FunctorData hv_face(const dbl::SquaresCat& d, const dbl::CompletionData& comp,
                         const HVLevel& from, const HVLevel& to, int n, int i, HVTarget target);

/// Forgetful functor S_n -> H_n (top row) or S_n -> V_n (rightmost column).
cat::FunctorData forgetful_functor(const dbl::SquaresCat& d, const SLevel& s, const HVLevel& hv,
                                   HVTarget target);

struct ForgetfulReport {
    int level = 0;
    HVTarget target = HVTarget::H;
    cat::EquivalenceReport equivalence;
    std::string to_string() const;
};
ForgetfulReport forgetful_equivalence(const dbl::SquaresCat& d, int n, HVTarget target);

struct ComparisonReport {
    int level = 0;
    bool incomplete = false;
    std::string missing;  // first missing completion datum
    // T+ -> T side
    bool u_valid = false, f_valid = false, section = false;
    bool tau_components_valid = false, tau_natural = false;
    // T+ -> S side
    bool uprime_valid = false, fprime_valid = false, section_prime = false;
    bool tau_prime_components_valid = false, tau_prime_natural = false;
    std::string first_failure;
    bool pass() const {
        return !incomplete && u_valid && f_valid && section && tau_components_valid &&
               tau_natural && uprime_valid && fprime_valid && section_prime &&
               tau_prime_components_valid && tau_prime_natural;
    }
    std::string to_string() const;
};

/// Builds the categorical witnesses of the T+ comparisons at one level:
/// the forgetful functors, their sections from completion data, and the
/// comparison transformations, then verifies every shape and naturality
/// condition exhaustively.
ComparisonReport comparison_witnesses(const dbl::SquaresCat& d, const dbl::CompletionData& comp,
                                      int n);

}  // namespace sqcat::cons

#endif

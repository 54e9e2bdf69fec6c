#ifndef SQCAT_SIMPLICIAL_HPP
#define SQCAT_SIMPLICIAL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqcat/catcore.hpp"

namespace sqcat::simp {

/// Simplicial set truncated at level `bound`, with explicit face and
/// degeneracy maps. All simplicial identities within the truncation hold
/// exactly on valid instances.
struct TruncSSet {
    int bound = 0;
    std::vector<std::vector<std::string>> simplices;          // per level 0..bound
    std::vector<std::vector<std::vector<int>>> faces;         // faces[n][i], 1 <= n <= bound
    std::vector<std::vector<std::vector<int>>> degeneracies;  // degeneracies[n][i], n < bound

    int size(int level) const { return static_cast<int>(simplices[level].size()); }
    int face(int n, int i, int x) const { return faces[n][i][x]; }
    int degeneracy(int n, int i, int x) const { return degeneracies[n][i][x]; }
    const std::string& id(int n, int x) const { return simplices[n][x]; }
    int index_of(int n, const std::string& id) const;
};

/// Simplicial category truncated at `bound`: one finite category per level,
/// faces and degeneracies as strict functors.
struct TruncSCat {
    int bound = 0;
    std::vector<std::shared_ptr<cat::FinCat>> levels;
    std::vector<std::vector<cat::FunctorData>> faces;
    std::vector<std::vector<cat::FunctorData>> degeneracies;

    /// The simplicial set of objects with the induced structure maps.
    TruncSSet objects() const;
};

cat::ValidationReport validate_truncated(const TruncSSet& x);
cat::ValidationReport validate_truncated(const TruncSCat& x);

/// Applies the simplicial operator induced by the monotone map
/// theta: [m] -> [n] (given by its m+1 values) to a simplex of level n.
int apply_operator(const TruncSSet& x, int n, const std::vector<int>& theta, int simplex);
/// Same composite as a functor between levels of a simplicial category.
cat::FunctorData operator_functor(const TruncSCat& x, int n, const std::vector<int>& theta);

/// The operator X_n -> X_{|S|-1} restricting a simplex to the vertex subset S.
std::vector<int> subset_operator(const std::vector<int>& subset);

struct PartialMonoid {
    std::vector<std::string> elements;
    int unit = -1;
    std::map<std::pair<int, int>, int> product;  // defined pairs only

    int index_of(const std::string& e) const;
    bool defined(int a, int b) const { return product.count({a, b}) > 0; }
    int times(int a, int b) const { return product.at({a, b}); }
};
cat::ValidationReport validate_partial_monoid(const PartialMonoid& m);

TruncSSet nerve(const cat::FinCat& c, int levels);
TruncSSet nerve_partial_monoid(const PartialMonoid& m, int levels);

/// Edgewise subdivision: level n of the output is level 2n+1 of the input.
TruncSSet edgewise_subdivision(const TruncSSet& x, int out_bound);

struct SegalReport {
    struct Position {
        int level;
        std::string label;  // "spine" or "(i,j)"
        bool pass;
        std::string counterexample;
    };
    int degree = 1;
    int bound = 0;
    std::vector<Position> positions;
    bool pass = true;
    std::string to_string() const;
};

/// degree 1: exact spine bijections for 2 <= n <= bound. degree 2: exact
/// bijection with the strict pullback at positions (0,2) and (n-2,n) for
/// 3 <= n <= bound. Set-level homotopy pullbacks are strict pullbacks.
SegalReport check_segal(const TruncSSet& x, int degree);

struct Segal2GroupoidReport {
    struct Position {
        int level;
        std::string label;
        cat::EquivalenceReport comparison;
    };
    int bound = 0;
    bool rejected = false;     // non-groupoid level found
    std::string reject_reason;
    std::vector<Position> positions;
    bool pass = false;
    std::string to_string() const;
};

/// Groupoid-level 2-Segal check: builds the iso-comma pseudo-pullback of the
/// reduced-position cospans and tests the canonical comparison functor for
/// equivalence, 3 <= n <= bound. Rejects non-groupoid levels unless forced.
Segal2GroupoidReport check_2segal_groupoids(const TruncSCat& sc, bool force = false);

/// Levelwise isomorphism commuting with all faces and degeneracies, found by
/// backtracking search. Returns the per-level bijections when one exists.
std::optional<std::vector<std::vector<int>>> find_iso(const TruncSSet& x, const TruncSSet& y);

}  // namespace sqcat::simp

#endif

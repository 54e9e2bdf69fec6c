#ifndef SQCAT_EXAMPLES_HPP
#define SQCAT_EXAMPLES_HPP

#include <string>
#include <vector>

#include "sqcat/double.hpp"
#include "sqcat/simplicial.hpp"

namespace sqcat::ex {

/// A squares category together with its supplied completion data.
struct Built {
    dbl::SquaresCat cat;
    dbl::CompletionData comp;
};

/// Skeletal finite sets 0..n_max: horizontal morphisms are injections,
/// vertical morphisms their formal opposites, squares the bicartesian ones.
/// Completions are by canonical complements.
Built finset_squares(int n_max);

/// Objects are the monoid elements; horizontal/vertical morphisms witness
/// right/left multiplication, squares witness associativity.
dbl::SquaresCat partial_monoid_squares(const simp::PartialMonoid& m);

/// Objects are the morphisms of c; squares witness associativity of
/// composition. There is no global basepoint, so a marked object is carried
/// separately and pointing-dependent operations reject this output.
struct TwistedArrow {
    dbl::FlatDoubleCat cat;
    std::string marked;
};
TwistedArrow twisted_arrow_squares(const cat::FinCat& c);

struct GraphData {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;  // unordered, no multi-edges
};

/// Variant 1: subgraphs of a fixed ambient graph with full inclusions rel
/// the ambient; squares are vertex partitions into three pieces.
dbl::SquaresCat graph_squares(const GraphData& ambient);
/// Variant 2: graphs on a bounded labeled vertex universe with full
/// embeddings; squares are commutative and pushouts on vertex sets.
/// Variant 3: the same objects with plain subgraph inclusions; squares are
/// pushouts in the category of finite graphs.
dbl::SquaresCat graph_squares(int variant, int vertex_bound);

/// Unions of grid intervals in [0, L] with step 1/q; horizontal morphisms are
/// translation inclusions, squares the image-wise bicartesian ones. With
/// `reflections`, the isometry group also contains the flips.
Built interval_polytopes(int q, int L, bool reflections = false);

/// Path construction on a reduced 2-Segal simplicial set: objects are the
/// 1-simplices, morphisms the 2-simplices, squares the 3-simplices, with
/// compositions through the level-3 Segal bijections.
dbl::SquaresCat path_double_category(const simp::TruncSSet& x);

}  // namespace sqcat::ex

#endif

#ifndef SQCAT_DOUBLE_HPP
#define SQCAT_DOUBLE_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sqcat/catcore.hpp"

namespace sqcat::dbl {

/// A square of a flat double category, stored by its boundary:
/// top/bottom index into hcat, left/right into vcat.
struct Square {
    int top, left, right, bottom;
    auto operator<=>(const Square&) const = default;
    std::array<int, 4> key() const { return {top, left, right, bottom}; }
};

/// Flat double category: horizontal and vertical categories on a shared object
/// set, plus a square-membership set (flatness makes this a property).
struct SquareKeyHash {
    size_t operator()(const std::array<int, 4>& k) const {
        size_t h = 1469598103934665603ull;
        for (int v : k) {
            h ^= static_cast<size_t>(static_cast<unsigned>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct FlatDoubleCat {
    std::shared_ptr<cat::FinCat> hcat, vcat;
    std::vector<Square> squares;  // canonical order, no duplicates
    std::unordered_set<std::array<int, 4>, SquareKeyHash> square_set;

    void add_square(int t, int l, int r, int b);
    bool has_square(int t, int l, int r, int b) const {
        return square_set.count({t, l, r, b}) > 0;
    }
    std::string square_str(const Square& s) const;
    /// squares with the given top and left edge, canonical order
    std::vector<Square> squares_by_top_left(int t, int l) const;
    std::vector<Square> squares_by_right_bottom(int r, int b) const;
};

struct SquaresCat {
    FlatDoubleCat base;
    int basepoint = -1;

    const cat::FinCat& hcat() const { return *base.hcat; }
    const cat::FinCat& vcat() const { return *base.vcat; }
    /// unique h-mor O -> A (valid once pointing holds)
    int point_h(int obj) const;
    /// unique v-mor A -> O
    int point_v(int obj) const;
};

cat::ValidationReport validate_flat_double(const FlatDoubleCat& d);
cat::ValidationReport validate_squares_category(const SquaresCat& d);

struct WeqSets {
    std::vector<int> hweq, vweq;  // sorted morphism indices
    std::map<int, Square> h_witness, v_witness;
    bool is_vweq(int v) const { return v_witness.count(v) > 0; }
    bool is_hweq(int h) const { return h_witness.count(h) > 0; }
};
WeqSets weak_equivalences(const SquaresCat& d);

/// Explicit span/cospan completion data: the sections s, t together with the
/// comparison components w, u and the functorial action on (co)span morphisms.
struct CompletionData {
    // (f: A >-> B, u: A ->> C) -> completing square with that top/left
    std::map<std::pair<int, int>, Square> span_complete;
    // (f,u, f',u', p,q,r) -> induced v-mor between the completions
    std::map<std::array<int, 7>, int> span_action;
    // square -> w component  D0 ->> D
    std::map<std::array<int, 4>, int> w_components;
    // (v: B ->> D, g: C >-> D) -> completing square with that right/bottom
    std::map<std::pair<int, int>, Square> cospan_complete;
    std::map<std::array<int, 7>, int> cospan_action;
    // square -> u component  A0 ->> A
    std::map<std::array<int, 4>, int> u_components;
};

enum class CompletionMode { ProtoWaldhausen, Stable };

struct AxiomReport {
    bool pass = false;
    std::vector<std::string> failures;  // axiom violations, deterministic order
    std::vector<std::string> missing;   // "incomplete data" records
    bool incomplete() const { return !missing.empty(); }
    std::string to_string() const;
};

AxiomReport check_completion_axioms(const SquaresCat& d, const CompletionData& comp,
                                    CompletionMode mode);

/// Brute-force fallback for tiny inputs: searches the squares set for
/// completions and actions; leaves gaps where no candidate exists.
CompletionData synthesize_completion_data(const SquaresCat& d);

struct IsostableReport {
    bool pass = false;
    AxiomReport stable;
    std::vector<std::string> failures;  // non-invertible weq / missing flip
    std::string to_string() const;
};
IsostableReport check_isostable(const SquaresCat& d, const CompletionData& comp);

/// Replaces vcat by its opposite and re-orients the squares. The input must be
/// pointed with `basepoint` initial in both directions; throws when the result
/// cannot satisfy the squares-category pointing either way.
SquaresCat opposite_vertical(const FlatDoubleCat& d, const std::string& basepoint);

/// The extension squares category: objects are the squares of d, morphisms are
/// cornerwise h-mors (resp. v-mors) whose same-type faces commute, and squares
/// are pointwise squares of d.
SquaresCat extension_category(const SquaresCat& d);

/// Spans (f, u) with a common source, canonical order.
std::vector<std::pair<int, int>> all_spans(const SquaresCat& d);
std::vector<std::pair<int, int>> all_cospans(const SquaresCat& d);

/// Morphism of spans (f,u) -> (f',u'): components (p,q,r) with
/// (f,p,q,f') a square and r∘u = u'∘p in vcat.
struct SpanMorphism {
    std::pair<int, int> from, to;
    int p, q, r;
};
std::vector<SpanMorphism> all_span_morphisms(const SquaresCat& d);

/// Morphism of cospans (v,g) -> (v',g'): components (beta,gamma,delta) with
/// (g,gamma,delta,g') a square and delta∘v = v'∘beta in vcat.
struct CospanMorphism {
    std::pair<int, int> from, to;
    int beta, gamma, delta;
};
std::vector<CospanMorphism> all_cospan_morphisms(const SquaresCat& d);

}  // namespace sqcat::dbl

#endif

#ifndef SQCAT_CATCORE_HPP
#define SQCAT_CATCORE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sqcat::cat {

/// One validation failure. `code` is a stable machine-readable tag, `detail`
/// names the offending objects/morphisms by id.
struct Violation {
    std::string code;
    std::string detail;
    bool operator<(const Violation& o) const {
        return code != o.code ? code < o.code : detail < o.detail;
    }
    bool operator==(const Violation& o) const { return code == o.code && detail == o.detail; }
};

struct ValidationReport {
    std::vector<Violation> violations;  // sorted (code, detail)
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
    void add(std::string code, std::string detail);
    void sort();
};

/// A finite category presented by explicit object/morphism sets, an identity
/// assignment and a total composition table on composable pairs.
///
/// The structure may hold unresolved references (src/dst index -1 with the raw
/// id kept); validate_category reports those as violations rather than faults.
class FinCat {
public:
    int add_object(const std::string& id);
    int add_morphism(const std::string& id, const std::string& src, const std::string& dst);
    int add_morphism_idx(const std::string& id, int src, int dst);
    void set_identity(const std::string& obj, const std::string& mor);
    void set_identity_idx(int obj, int mor);
    void set_composite(const std::string& g, const std::string& f, const std::string& gf);
    void set_composite_idx(int g, int f, int gf);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(mor_ids_.size()); }
    const std::string& object_id(int i) const { return objects_[i]; }
    const std::string& morphism_id(int i) const { return mor_ids_[i]; }
    int src(int m) const { return mor_src_[m]; }
    int dst(int m) const { return mor_dst_[m]; }
    const std::string& raw_src(int m) const { return raw_src_[m]; }
    const std::string& raw_dst(int m) const { return raw_dst_[m]; }
    int identity(int obj) const;
    int compose(int g, int f) const;  // g after f, -1 when absent
    int object_index(const std::string& id) const;
    int morphism_index(const std::string& id) const;

    /// Morphisms x -> y in insertion (canonical) order.
    std::vector<int> hom(int x, int y) const;
    const std::vector<int>& out_of(int obj) const;
    const std::vector<int>& into(int obj) const;

    int inverse(int m) const;  // two-sided inverse, -1 when none
    bool is_iso(int m) const { return inverse(m) >= 0; }

    /// All composition entries as (g, f, gf) index triples, canonical order.
    std::vector<std::array<int, 3>> composition_entries() const;
    const std::vector<std::pair<int, int>>& identity_entries() const { return id_entries_; }

private:
    std::vector<std::string> objects_;
    std::unordered_map<std::string, int> obj_index_;
    std::vector<std::string> mor_ids_;
    std::unordered_map<std::string, int> mor_index_;
    std::vector<int> mor_src_, mor_dst_;
    std::vector<std::string> raw_src_, raw_dst_;
    std::vector<int> identity_;                     // object -> morphism, -1 unset
    std::vector<std::pair<int, int>> id_entries_;   // as declared, for validation
    std::unordered_map<long long, int> comp_;       // (g << 32 | f) -> gf
    std::vector<std::vector<int>> out_, in_;
    static const std::vector<int> empty_;
};

ValidationReport validate_category(const FinCat& c);

struct GroupoidCheck {
    bool groupoid = false;
    int witness = -1;  // a morphism with no two-sided inverse, when !groupoid
};
GroupoidCheck is_groupoid(const FinCat& c);

struct FunctorData {
    std::shared_ptr<const FinCat> source, target;
    std::vector<int> obj_map;
    std::vector<int> mor_map;
};

ValidationReport validate_functor(const FunctorData& f);
FunctorData identity_functor(std::shared_ptr<const FinCat> c);
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);
bool functors_equal(const FunctorData& a, const FunctorData& b);

/// Natural transformation between functors with common source and target.
struct NatTransData {
    FunctorData source, target;
    std::vector<int> components;  // source object -> morphism of the common target
};
ValidationReport validate_nat_trans(const NatTransData& t);

struct EquivalenceReport {
    bool functor_valid = false;
    bool fully_faithful = false;
    bool essentially_surjective = false;
    std::string detail;  // first witness of each failure
    bool equivalence() const { return functor_valid && fully_faithful && essentially_surjective; }
    std::string to_string() const;
};
EquivalenceReport check_functor_equivalence(const FunctorData& f);

/// Iso-comma pseudo-pullback of F: C -> E <- D : G. Objects are triples
/// (c, d, alpha) with alpha: F(c) -> G(d) invertible in E.
struct PseudoPullback {
    std::shared_ptr<FinCat> category;
    FunctorData proj1, proj2;
    std::vector<std::array<int, 3>> triples;    // (c, d, alpha)
    std::vector<std::array<int, 2>> mor_pairs;  // (phi, psi)
    std::optional<std::string> rejected;        // set when groupoid mode rejects the input
    /// Morphism index for the pair (phi, psi) between given objects, -1 if absent.
    int find_morphism(int src_obj, int dst_obj, int phi, int psi) const;

    std::map<std::array<int, 4>, int> mor_lookup_;
};
PseudoPullback pseudo_pullback(const FunctorData& F, const FunctorData& G,
                               bool require_groupoid_target = false);

/// Strict (equality-based) pullback of categories.
struct StrictPullback {
    std::shared_ptr<FinCat> category;
    FunctorData proj1, proj2;
    std::vector<std::array<int, 2>> obj_pairs;
    std::vector<std::array<int, 2>> mor_pairs;
};
StrictPullback strict_pullback(const FunctorData& F, const FunctorData& G);

bool is_isomorphism_of_categories(const FunctorData& f);

}  // namespace sqcat::cat

#endif

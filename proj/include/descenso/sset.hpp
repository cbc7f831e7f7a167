#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "descenso/chain.hpp"

namespace descenso {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SSet;
using SSetPtr = std::shared_ptr<const SSet>;

/// Degreewise-finite simplicial set, materialized up to a truncation level.
/// Simplices carry canonical string ids so map equality is syntactic.
class SSet {
public:
    SSet(size_t trunc, std::vector<std::vector<std::string>> ids,
         std::vector<std::vector<std::vector<int>>> faces,
         std::vector<std::vector<std::vector<int>>> degens,
         std::optional<int> basepoint = std::nullopt, bool validate = true);

    size_t trunc() const { return trunc_; }
    size_t size(size_t n) const;
    const std::vector<std::string>& ids(size_t n) const { return ids_.at(n); }
    const std::string& id(size_t n, int s) const { return ids_.at(n).at(s); }
    int index_of(size_t n, const std::string& id) const;

    /// face(n, i, s): d_i of simplex s at level n (1 <= n <= trunc, 0 <= i <= n)
    int face(size_t n, size_t i, int s) const { return faces_.at(n).at(i).at(s); }
    /// degen(n, j, s): s_j of simplex s at level n (n < trunc, 0 <= j <= n)
    int degen(size_t n, size_t j, int s) const { return degens_.at(n).at(j).at(s); }

    bool pointed() const { return base_.has_value(); }
    int basepoint() const;
    /// iterated degeneracy of the basepoint at the given level
    int base_at(size_t n) const;

    bool is_degenerate(size_t n, int s) const;
    size_t nondegenerate_count(size_t n) const;
    /// smallest L with no nondegenerate simplices at levels >= L (within the truncation)
    size_t nondeg_bound() const;

private:
    size_t trunc_;
    std::vector<std::vector<std::string>> ids_;
    std::vector<std::map<std::string, int>> index_;
    std::vector<std::vector<std::vector<int>>> faces_;   // faces_[n][i][s]
    std::vector<std::vector<std::vector<int>>> degens_;  // degens_[n][j][s]
    std::optional<int> base_;

    void validate_identities() const;
};

/// Levelwise map of simplex ids; commutes with faces and degeneracies.
struct SSetMap {
    SSetPtr src, tgt;
    std::vector<std::vector<int>> comp;  // comp[n][s]

    int apply(size_t n, int s) const { return comp.at(n).at(s); }
    bool operator==(const SSetMap& o) const;
};

SSetMap sset_identity(const SSetPtr& k);
SSetMap sset_compose(const SSetMap& outer, const SSetMap& inner);
/// Collapse everything to the basepoint of a pointed target.
SSetMap sset_to_base(const SSetPtr& k, const SSetPtr& pointed_tgt);
void sset_map_validate(const SSetMap& m, bool check_base = true);

/// Standard simplex, n in {0,1,2}; level k = monotone maps [k] -> [n].
SSetPtr delta(size_t n, size_t trunc);
/// delta(1) pointed at vertex 0 (the image of the coface d^1).
SSetPtr interval_pointed(size_t trunc);

struct ProductData {
    SSetPtr sset;
    SSetMap pr_left, pr_right;
    std::vector<std::vector<std::pair<int, int>>> pairs;  // index -> (left, right)
    int index_of_pair(size_t n, int l, int r) const;
};
ProductData sset_product(const SSetPtr& k, const SSetPtr& l);

struct QuotientData {
    SSetPtr sset;
    SSetMap projection;
    std::vector<std::vector<std::vector<int>>> members;  // members[n][class] = source indices
};
/// Collapse a levelwise face/degeneracy-closed set of simplices to a point.
QuotientData sset_quotient(const SSetPtr& k, const std::vector<std::vector<int>>& sub);
/// Identify simplices along the given per-level pairs (closure under the
/// simplicial operators is automatic).
QuotientData sset_glue(const SSetPtr& k, const std::vector<std::vector<std::pair<int, int>>>& rels,
                       std::optional<std::pair<size_t, int>> base = std::nullopt);
/// Push a raw levelwise assignment on the quotient source down to the quotient
/// (verifies constancy on fibers).
SSetMap sset_descend(const QuotientData& q, const std::vector<std::vector<int>>& raw,
                     const SSetPtr& tgt);

struct DisjointUnionData {
    SSetPtr sset;
    SSetMap in_left, in_right;
    std::vector<size_t> left_size;  // indices below this are left-part simplices
};
DisjointUnionData sset_disjoint_union(const SSetPtr& k, const SSetPtr& l);

struct PushoutData {
    SSetPtr sset;
    SSetMap from_left, from_right;  // legs K -> P and L -> P
    DisjointUnionData parts;
    QuotientData quotient;
};
/// Pushout of K <-f- W -g-> L, computed levelwise.
PushoutData sset_pushout(const SSetMap& f, const SSetMap& g,
                         std::optional<std::pair<size_t, int>> base_in_left = std::nullopt);

struct WedgeData {
    SSetPtr sset;
    SSetMap in_left, in_right;
    DisjointUnionData parts;
    QuotientData quotient;
};
WedgeData sset_wedge(const SSetPtr& k, const SSetPtr& l);
SSetMap wedge_project_left(const WedgeData& w);   // collapse the right factor
SSetMap wedge_project_right(const WedgeData& w);  // collapse the left factor

struct CircleData {
    SSetPtr sset;        // pointed; level n has n+1 simplices
    SSetMap projection;  // from delta(1, trunc)
    QuotientData quotient;
};
CircleData circle(size_t trunc);

struct SmashIntervalData {
    SSetPtr sset;        // K smash Delta[1], pointed
    ProductData product; // K x Delta[1]
    QuotientData quotient;
    SSetMap d0, d1;      // end inclusions K -> K smash Delta[1]
};
SmashIntervalData smash_interval(const SSetPtr& k);

struct OmegaData {
    SSetPtr omega;  // two intervals glued crosswise at both endpoints
    SSetMap p, q;   // the two interval legs delta(1) -> omega
    PushoutData pushout;
    CircleData s1;
    SSetMap alpha;    // omega -> S^1, collapses the q copy
    WedgeData wedge;  // S^1 v S^1
    SSetMap pi;       // omega -> S^1 v S^1
};
OmegaData omega_gadget(size_t trunc);

struct OmegaBarData {
    SSetPtr omega_bar;  // two intervals glued end-to-end
    SSetMap p_bar, q_bar;
    PushoutData pushout;
    SSetMap alpha_bar;  // omega_bar -> delta(1): alpha p = id, alpha q = const vertex 0
    WedgeData wedge;    // S^1 v delta(1), the interval pointed at vertex 0
    SSetMap pi_bar;     // omega_bar -> S^1 v delta(1)
    CircleData s1;
};
OmegaBarData omega_bar_gadget(size_t trunc);

struct IntervalRetractions {
    ProductData square;  // delta(1) x delta(1)
    SSetMap r_join;      // pointwise max
    SSetMap r_meet;      // pointwise min
    // The join and meet retractions are units for opposite ends of the
    // interval; the bindings are established by checking the boundary
    // equations at construction time rather than by name.
    SSetMap unit_for_d0;  // u with u(d0 x id) = u(id x d0) = id
    SSetMap unit_for_d1;  // u with u(d1 x id) = u(id x d1) = id
    OmegaData omega;
    SmashIntervalData smash;  // omega smash delta(1)
    SSetMap homotopy;         // omega smash delta(1) -> S^1; ends are {pi1 pi, alpha}
    bool d0_end_is_alpha;     // true when homotopy o d0 = alpha (and o d1 = pi1 pi)
};
IntervalRetractions interval_retractions(size_t trunc);

}  // namespace descenso

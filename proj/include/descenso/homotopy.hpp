#pragma once

#include "descenso/sobj.hpp"

namespace descenso {

/// Cylinder of a span of plain chain maps, through the simple functor.
struct DCyl {
    CylData data;          // simplicial backing (constant levels)
    ChainComplex carrier;  // simple of the cylinder
    ChainMap leg_y;        // Y -> carrier (target of the first map)
    ChainMap leg_z;        // Z -> carrier (target of the second map)
    ChainMap f, g;         // the span A -> Y, A -> Z
};
DCyl dcyl(const ChainMap& f, const ChainMap& g);

/// cyl(A) with its two inclusions and the retraction, all strict.
struct CylObject {
    ChainComplex object;
    DCyl cyl;
    ChainMap i, j, sigma;  // sigma i = sigma j = id exactly
};
CylObject cyl_object(const ChainComplex& a);

/// r : cyl(f,g) -> T with r i = p and r j = q, given p f = q g exactly.
ChainMap cyl_factor(const DCyl& c, const ChainMap& p, const ChainMap& q);

/// Functorial map between span cylinders in the base category.
ChainMap dcyl_map(const DCyl& src, const DCyl& tgt, const ChainMap& phi_x, const ChainMap& phi_y,
                  const ChainMap& phi_z);

struct CylinderLift;

/// Cylinders generated from the canonical one by swapping legs and gluing.
class AdmissibleCylinder {
public:
    enum class Kind { Trivial, Base, Swap, Glue };

    static AdmissibleCylinder trivial(const ChainComplex& a);
    static AdmissibleCylinder base(const ChainComplex& a);
    static AdmissibleCylinder swap(AdmissibleCylinder c);
    static AdmissibleCylinder glue(AdmissibleCylinder c1, AdmissibleCylinder c2);

    const ChainComplex& object() const { return object_; }
    const ChainComplex& carrier() const { return carrier_; }
    const ChainMap& i() const { return i_; }
    const ChainMap& j() const { return j_; }
    const ChainMap& sigma() const { return sigma_; }
    Kind kind() const { return kind_; }
    std::string provenance() const;

    /// Lift along u : S -> object: an admissible cylinder of S together with a
    /// carrier map making both endpoint squares commute exactly.
    CylinderLift precompose(const ChainMap& u) const;

private:
    AdmissibleCylinder() = default;

    ChainComplex object_, carrier_;
    ChainMap i_, j_, sigma_;
    Kind kind_ = Kind::Trivial;
    std::shared_ptr<AdmissibleCylinder> child1_, child2_;
    std::shared_ptr<DCyl> backing_;  // for Base and Glue
};

struct CylinderLift {
    AdmissibleCylinder cylinder;
    ChainMap carrier_map;
};

struct Homotopy {
    AdmissibleCylinder cylinder;
    ChainMap h;         // carrier -> B
    ChainMap from, to;  // h i = from, h j = to (checked exactly)
};
Homotopy make_homotopy(AdmissibleCylinder c, ChainMap h);

Homotopy swap_homotopy(const Homotopy& h);
/// Transitivity through gluing: from f1 ~ f2 and f2 ~ f3 build f1 ~ f3.
Homotopy compose_homotopies(const Homotopy& h1, const Homotopy& h2);
Homotopy precompose_homotopy(const Homotopy& h, const ChainMap& u);
Homotopy postcompose_homotopy(const ChainMap& t, const Homotopy& h);

/// The two canonical maps into cyl(f,g) are homotopic: i f ~ j g.
Homotopy canonical_homotopy(const ChainMap& f, const ChainMap& g);

/// Bounded search for a homotopy between parallel maps: base cylinder first
/// (a linear solve), then glued cylinders up to the budget. Empty result is
/// inconclusive, never a certificate of non-existence.
std::optional<Homotopy> are_homotopic(const ChainMap& f, const ChainMap& g, size_t budget = 1);

struct OreSquare {
    DCyl cyl;          // cyl(f, e)
    ChainMap i;        // B -> W, certified quasi-isomorphism
    ChainMap j;        // C -> W
    Homotopy homotopy; // i f ~ j e, verified
};
/// Completion of a cospan along an equivalence (the left-fraction square).
OreSquare ore_square(const ChainMap& f, const ChainMap& e);

/// Morphism of the homotopy category: forward map and backward equivalence
/// with a common target.
struct Roof {
    ChainMap forward;   // A -> T
    ChainMap backward;  // B -> T, quasi-isomorphism

    const ChainComplex& source() const { return forward.source(); }
    const ChainComplex& target() const { return backward.source(); }
};

Roof roof_from_map(const ChainMap& f);
Roof roof_identity(const ChainComplex& a);
Roof roof_zero(const ChainComplex& a, const ChainComplex& b);
/// Swap the legs; requires the forward leg to be a quasi-isomorphism.
Roof roof_invert(const Roof& r);
/// Composition through an Ore square on the middle cospan. The variant picks a
/// different (homotopic) square, for independence tests.
Roof roof_compose(const Roof& outer, const Roof& inner, int variant = 0);
Roof roof_sum(const Roof& r, const Roof& s);
/// Induced map on homology: H(backward)^{-1} o H(forward).
GradedMap roof_homology(const Roof& r);
/// Complete equality oracle for this instance: compare induced homology maps.
bool roof_equal(const Roof& a, const Roof& b);
bool roof_is_trivial(const Roof& r);
/// Realize a graded map between homologies as a roof (formality of the field
/// instance); used to produce comparison witnesses, never to decide equality.
Roof roof_realize(const GradedMap& phi, const ChainComplex& a, const ChainComplex& b);

/// The second half of the left-fraction proof: given s in E and a homotopy
/// f s ~ g s, produce t' in E with a verified homotopy t' f ~ t' g.
struct Coequalization {
    ChainMap t_prime;   // certified quasi-isomorphism
    Homotopy witness;   // t' f ~ t' g
};
Coequalization coequalize(const ChainMap& f, const ChainMap& g, const ChainMap& s,
                          const Homotopy& h);

}  // namespace descenso

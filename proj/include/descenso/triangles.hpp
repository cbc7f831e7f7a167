#pragma once

#include "descenso/homotopy.hpp"
#include "descenso/sset.hpp"

namespace descenso {

/// Suspension through the simple of the two-sided cone; in this instance the
/// underlying complex is the shift on the nose.
struct Suspension {
    ChainComplex total;
    CylData data;  // Cyl(A -> 0, A -> 0)
};
Suspension suspend(const ChainComplex& a);
ChainMap suspend_map(const ChainMap& f);
Roof suspend_roof(const Roof& r);
/// Canonical identification H_n(Sigma A) -> H_{n-1}(A).
std::vector<Matrix> suspension_unshift(const ChainComplex& a);

/// Descent cone c(f) = simple of the simplicial cone, with its structure maps.
struct DescentCone {
    ChainComplex total;
    ChainMap include;  // B -> c(f)
    ChainMap project;  // c(f) -> Sigma A
    CylData data;
    ChainMap f;
};
DescentCone cone(const ChainMap& f);
/// Functorial map of cones for a strictly commuting square beta f = g alpha.
ChainMap cone_map(const DescentCone& src, const DescentCone& tgt, const ChainMap& alpha,
                  const ChainMap& beta);

struct Triangle {
    ChainComplex a, b, c;
    Roof u, v, w;  // w : C => Sigma A

    bool has_model = false;
    ChainMap model_f;  // A -> T, strict representative of u
    ChainMap model_e;  // B -> T, quasi-isomorphism
    std::shared_ptr<DescentCone> model_cone;
};

/// TR1: every morphism embeds in a cofiber triangle (canonical representative).
Triangle cofiber_triangle(const Roof& f);

/// Homology-level long-exact-sequence certificate (complete for this instance).
bool verify_les(const Triangle& t);
/// Consecutive composites vanish in the homotopy category.
bool composites_vanish(const Triangle& t);

bool triangle_iso(const Triangle& t1, const Triangle& t2, const Roof& ra, const Roof& rb,
                  const Roof& rc);
/// Solve the ladder for the third leg given the two others (five lemma);
/// returns a realized roof witness when a completion exists.
std::optional<Roof> solve_third_iso(const Triangle& t1, const Triangle& t2, const Roof& ra,
                                    const Roof& rb);

/// The homotopical minus sign m_B : Sigma B => Sigma B.
struct MinusData {
    ChainComplex sigma_half;  // s(Lambda^1_2 B)
    ChainMap p1, p2;          // -> Sigma B, with p1 a certified equivalence
    Roof m;                   // p2 o p1^{-1}
};
MinusData minus_map(const ChainComplex& b);

/// TR2 (non-stable form): rotate a cofiber triangle.
Triangle rotate(const Triangle& t);

/// TR3: complete a commuting square of roofs to a morphism of triangles.
Roof complete_morphism(const Triangle& t, const Triangle& t2, const Roof& alpha, const Roof& beta);

/// TR4 data: the octahedron triangle plus its verification bundle.
struct Octahedron {
    Triangle triangle;      // c(u) -> c(vu) -> c(v) -> Sigma c(u)
    ChainMap alpha, beta;   // strict maps between the cones
    Roof gamma;
    ChainMap psi;           // s of C(v) -> C(alpha'), certified equivalence
    bool psi_qis = false;
    bool theta_identities = false;  // theta I = psi' and theta psi = I
    bool tau_identities = false;    // tau I = tau rho = Id for the interval retraction
};
Octahedron octahedron(const ChainMap& u, const ChainMap& v);

/// Cogroup structure on the suspension.
struct Comultiplication {
    ChainComplex sigma;       // Sigma A (the canonical suspension complex)
    ChainComplex sigma_sum;   // Sigma A + Sigma A
    Roof d;                   // Sigma A => Sigma A + Sigma A
    Roof pi1, pi2;            // projections (strict)
    bool counit_strict = false;  // s(pi2 x A) o s(pi x A) = s(alpha x A) exactly
    ChainMap s_alpha;            // certified equivalence witness
};
Comultiplication comultiplication(const ChainComplex& a);

bool counit_check(const Comultiplication& c);
bool inverse_check(const Comultiplication& c, const MinusData& m);
bool coassoc_check(const Comultiplication& c);
bool abelian_check(const ChainComplex& a);

/// Coaction of Sigma A on the cone of f : A -> B.
struct Coaction {
    ChainComplex cone_total;
    ChainComplex target;  // Sigma A + c(f)
    Roof w;
    bool counit_strict = false;
};
Coaction coaction(const ChainMap& f);
bool coaction_compatible(const Coaction& ca, const Comultiplication& cm);

/// The operation induced by the comultiplication on hom-sets: fold (u + v) d.
Roof hom_sum(const Comultiplication& cm, const Roof& u, const Roof& v);

}  // namespace descenso

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descenso/generators.hpp"
#include "descenso/triangles.hpp"

using namespace descenso;

namespace {
GeneratorOptions small_opt() {
    GeneratorOptions o;
    o.max_dim = 3;
    o.max_deg = 2;
    return o;
}
}  // namespace

TEST_CASE("suspension shifts homology and the unshift is an isomorphism") {
    ChainComplex q({1}, {});
    Suspension s = suspend(q);
    CHECK(s.total.homology().dim(0) == 0);
    CHECK(s.total.homology().dim(1) == 1);

    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        Suspension sa = suspend(a);
        std::vector<Matrix> un = suspension_unshift(a);
        for (size_t n = 1; n < un.size(); ++n) {
            CHECK(sa.total.homology().dim(n) == a.homology().dim(n - 1));
            if (un[n].rows() > 0) CHECK(rank(un[n]) == un[n].rows());
        }
        // suspension of a map commutes with homology shift
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        ChainMap sf = suspend_map(f);
        CHECK(is_qis(f) == is_qis(sf));
    }
}

TEST_CASE("descent cone: identity cone acyclic, zero map gives the suspension") {
    Rng rng(5);
    ChainComplex a = random_complex(rng, small_opt());
    DescentCone cid = cone(ChainMap::identity(a));
    CHECK(cid.total.is_acyclic());

    DescentCone c0 = cone(ChainMap::zero(a, ChainComplex::zero()));
    Suspension sa = suspend(a);
    for (size_t n = 0; n <= std::max(c0.total.top(), sa.total.top()); ++n)
        CHECK(c0.total.homology().dim(n) == sa.total.homology().dim(n));
}

TEST_CASE("cofiber triangles: long exact sequence and vanishing composites") {
    Rng rng(7);
    for (int t = 0; t < 8; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        Triangle tri = cofiber_triangle(roof_from_map(f));
        CHECK(verify_les(tri));
        CHECK(composites_vanish(tri));
        // roof-represented map: compose with a backward equivalence
        QisData qd = random_qis(rng, b, small_opt());
        Roof r{qd.map.compose(f), qd.map};
        Triangle tri2 = cofiber_triangle(r);
        CHECK(verify_les(tri2));
        CHECK(composites_vanish(tri2));
    }
    // identity gives an acyclic third object, zero map the suspension
    ChainComplex a = random_complex(rng, small_opt());
    Triangle tid = cofiber_triangle(roof_identity(a));
    CHECK(tid.c.is_acyclic());
    Triangle tzero = cofiber_triangle(roof_zero(a, ChainComplex::zero()));
    Suspension sa = suspend(a);
    for (size_t n = 0; n <= std::max(tzero.c.top(), sa.total.top()); ++n)
        CHECK(tzero.c.homology().dim(n) == sa.total.homology().dim(n));
}

TEST_CASE("descent cone agrees with the classical cone including the boundary sign") {
    Rng rng(11);
    std::optional<bool> boundary_sign;  // fixed once, constant across the corpus
    for (int t = 0; t < 10; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        DescentCone dc = cone(f);
        ConeData cc = classical_cone(f);
        // the underlying complexes are isomorphic by an alternating sign map
        std::vector<Matrix> comps(std::max(dc.total.top(), cc.cone.top()) + 1);
        for (size_t n = 0; n < comps.size(); ++n) {
            Matrix m(cc.cone.dim(n), dc.total.dim(n));
            m.paste(Matrix::identity(b.dim(n)), 0, 0);
            if (n >= 1) {
                Matrix sign = Matrix::identity(a.dim(n - 1));
                if ((n - 1) % 2 == 1) sign = -sign;
                m.paste(sign, b.dim(n), b.dim(n));
            }
            comps[n] = std::move(m);
        }
        ChainMap iso(dc.total, cc.cone, std::move(comps));
        CHECK(is_qis(iso));
        // connecting maps agree up to one global sign after the identification
        GradedMap conn_desc = induced_homology_map(dc.project);
        GradedMap conn_cl = induced_homology_map(cc.projection).compose(induced_homology_map(iso));
        std::vector<Matrix> unshift = suspension_unshift(a);
        ChainComplex a1 = shift(a, 1);
        const HomologyData& h1 = a1.homology();
        const HomologyData& ha = a.homology();
        for (size_t n = 1; n < unshift.size(); ++n) {
            Matrix lhs = unshift[n] * conn_desc.component(n);
            Matrix basis = Matrix::hcat(ha.reps[n - 1], ha.boundaries[n - 1]);
            Matrix taut = basis.cols() == 0 ? Matrix(0, h1.dim(n))
                                            : solve_exact(basis, h1.reps[n])
                                                  .submatrix(0, ha.dim(n - 1), 0, h1.dim(n));
            // the identification alternates by degree; the residual sign is global
            Matrix rhs = taut * conn_cl.component(n);
            if ((n - 1) % 2 == 1) rhs = -rhs;
            if (lhs.rows() * lhs.cols() == 0) continue;
            bool same = lhs == rhs;
            bool neg = lhs == -rhs;
            CHECK((same || neg));
            if (same && neg) continue;  // zero map fixes nothing
            if (!boundary_sign)
                boundary_sign = same;
            else
                CHECK(*boundary_sign == same);
        }
    }
}

TEST_CASE("the minus map") {
    Rng rng(13);
    for (int t = 0; t < 5; ++t) {
        ChainComplex b = random_complex(rng, small_opt());
        MinusData m = minus_map(b);
        Suspension sb = suspend(b);
        // m squared is the identity
        CHECK(roof_equal(roof_compose(m.m, m.m), roof_identity(sb.total)));
        // on homology m is minus the identity
        GradedMap hm = roof_homology(m.m);
        GradedMap expect = -GradedMap::identity(sb.total.homology().h_dims);
        CHECK(hm == expect);
    }
    // naturality on seeded maps
    for (int t = 0; t < 5; ++t) {
        ChainComplex b = random_complex(rng, small_opt());
        ChainComplex b2 = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, b, b2, small_opt());
        Roof sf = roof_from_map(suspend_map(f));
        Roof lhs = roof_compose(minus_map(b2).m, sf);
        Roof rhs = roof_compose(sf, minus_map(b).m);
        CHECK(roof_equal(lhs, rhs));
    }
}

TEST_CASE("rotation is triangle-isomorphic to the cofiber of the second map") {
    Rng rng(17);
    for (int t = 0; t < 6; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        Triangle tri = cofiber_triangle(roof_from_map(f));
        Triangle rot = rotate(tri);
        Triangle cof = cofiber_triangle(tri.v);
        Roof ra = roof_identity(rot.a);
        Roof rb = roof_identity(rot.b);
        auto rc = solve_third_iso(rot, cof, ra, rb);
        REQUIRE(rc.has_value());
        CHECK(triangle_iso(rot, cof, ra, rb, *rc));
        CHECK(verify_les(rot));
    }
}

TEST_CASE("morphism completion (TR3)") {
    Rng rng(19);
    for (int t = 0; t < 5; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        Triangle t1 = cofiber_triangle(roof_from_map(f));

        // identity completion
        Roof gid = complete_morphism(t1, t1, roof_identity(a), roof_identity(b));
        CHECK(roof_homology(gid).is_iso());
        CHECK(roof_equal(roof_compose(gid, t1.v), roof_compose(t1.v, roof_identity(b))));

        // strict commuting square
        ChainComplex a2 = random_complex(rng, small_opt());
        ChainComplex b2 = random_complex(rng, small_opt());
        ChainMap al = random_chain_map(rng, a, a2, small_opt());
        ChainMap g2 = random_chain_map(rng, a2, b2, small_opt());
        ChainMap be_f = random_chain_map(rng, b, b2, small_opt());
        // force the square to commute strictly: take g2 al as the bottom and
        // build the top triangle over a map with be f = g2 al
        // (use f' := g2 o al and the identity as beta is the simplest witness)
        Triangle tsrc = cofiber_triangle(roof_from_map(g2.compose(al)));
        Triangle ttgt = cofiber_triangle(roof_from_map(g2));
        Roof gamma = complete_morphism(tsrc, ttgt, roof_from_map(al), roof_identity(b2));
        CHECK(roof_equal(roof_compose(gamma, tsrc.v), roof_compose(ttgt.v, roof_identity(b2))));
        CHECK(roof_equal(roof_compose(ttgt.w, gamma),
                         roof_compose(suspend_roof(roof_from_map(al)), tsrc.w)));
        (void)be_f;
    }

    // roof-shaped alpha and beta with a square commuting only in HoD
    for (int t = 0; t < 4; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        Triangle t1 = cofiber_triangle(roof_from_map(f));
        QisData qa = random_qis(rng, a, small_opt());
        QisData qb = random_qis(rng, b, small_opt());
        // transported map on the primed objects
        ChainMap f2 = chain_map_with_homology(
            rng, qa.target, qb.target,
            induced_homology_map(qb.map)
                .compose(induced_homology_map(f))
                .compose(induced_homology_map(qa.map).inverse()),
            small_opt());
        Triangle t2 = cofiber_triangle(roof_from_map(f2));
        Roof alpha = roof_from_map(qa.map);
        Roof beta = roof_from_map(qb.map);
        Roof gamma = complete_morphism(t1, t2, alpha, beta);
        CHECK(roof_homology(gamma).is_iso());  // alpha, beta equivalences force gamma one
        CHECK(roof_equal(roof_compose(gamma, t1.v), roof_compose(t2.v, beta)));
        CHECK(roof_equal(roof_compose(t2.w, gamma), roof_compose(suspend_roof(alpha), t1.w)));
    }
}

TEST_CASE("octahedron") {
    Rng rng(23);
    for (int t = 0; t < 4; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainComplex c = random_complex(rng, small_opt());
        ChainMap u = random_chain_map(rng, a, b, small_opt());
        ChainMap v = random_chain_map(rng, b, c, small_opt());
        Octahedron oct = octahedron(u, v);
        CHECK(oct.psi_qis);
        CHECK(oct.theta_identities);
        CHECK(oct.tau_identities);
        CHECK(verify_les(oct.triangle));
        CHECK(composites_vanish(oct.triangle));
    }
    // degenerate cases
    ChainComplex a = random_complex(rng, small_opt());
    ChainComplex b = random_complex(rng, small_opt());
    ChainMap u = random_chain_map(rng, a, b, small_opt());
    Octahedron ov = octahedron(u, ChainMap::identity(b));
    CHECK(ov.triangle.c.is_acyclic());
    CHECK(verify_les(ov.triangle));
    Octahedron ou = octahedron(ChainMap::identity(a), u);
    CHECK(ou.triangle.a.is_acyclic());
    CHECK(roof_is_trivial(ou.triangle.w));
}

TEST_CASE("cogroup structure on the suspension") {
    Rng rng(29);
    for (int t = 0; t < 3; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        Comultiplication cm = comultiplication(a);
        CHECK(cm.counit_strict);
        CHECK(counit_check(cm));
        MinusData m = minus_map(a);
        CHECK(inverse_check(cm, m));
        CHECK(coassoc_check(cm));
    }
    ChainComplex a = random_complex(rng, small_opt());
    CHECK(abelian_check(a));
    // trivial object: comultiplication on zero
    Comultiplication cz = comultiplication(ChainComplex::zero());
    CHECK(roof_is_trivial(cz.d));
}

TEST_CASE("hom-sets become groups: the induced sum matches graded addition") {
    Rng rng(31);
    for (int t = 0; t < 4; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex x = random_complex(rng, small_opt());
        Comultiplication cm = comultiplication(a);
        ChainMap u = random_chain_map(rng, cm.sigma, x, small_opt());
        ChainMap v = random_chain_map(rng, cm.sigma, x, small_opt());
        Roof sum = hom_sum(cm, roof_from_map(u), roof_from_map(v));
        GradedMap expect = induced_homology_map(u) + induced_homology_map(v);
        CHECK(roof_homology(sum) == expect);
    }
}

TEST_CASE("coaction of the suspension on the cone") {
    Rng rng(37);
    for (int t = 0; t < 3; ++t) {
        ChainComplex a = random_complex(rng, small_opt());
        ChainComplex b = random_complex(rng, small_opt());
        ChainMap f = random_chain_map(rng, a, b, small_opt());
        Coaction ca = coaction(f);
        CHECK(ca.counit_strict);
        Comultiplication cm = comultiplication(a);
        CHECK(coaction_compatible(ca, cm));
    }
    // the identity coaction lives on the interval gadget glued from two cells:
    // its carrier has the levelwise ranks of omega-bar tensor A
    ChainComplex a = random_complex(rng, small_opt());
    OmegaBarData ob = omega_bar_gadget(3);
    TensorData tob = tensor_pointed(ob.omega_bar, a, 3);
    SSetPtr interval = interval_pointed(3);
    TensorData ca_t = tensor_pointed(interval, a, 3);
    for (size_t n = 0; n <= 3; ++n) {
        size_t what_dim = a.total_dim() * (n + 2 - 1) + ca_t.obj->level(n).total_dim();
        // What(id)_n = B(=A) + n middles + CA_n; omega-bar has 2n+2 nonbase simplices
       CHECK(tob.obj->level(n).total_dim() == a.total_dim() * (2 * n + 2));
        CHECK(what_dim == a.total_dim() * (2 * n + 2));
    }
}

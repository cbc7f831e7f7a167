#include "descenso/verify.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "descenso/generators.hpp"
#include "descenso/triangles.hpp"

namespace descenso {

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["status"] = r.passed() ? "pass" : "fail";
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        Json e;
        e["property"] = f.property;
        e["seed"] = f.case_seed;
        e["status"] = "fail";
        if (!f.witness.is_null()) e["witness"] = f.witness;
        fails.push_back(std::move(e));
    }
    j["failures"] = std::move(fails);
    return j;
}

std::string report_to_markdown(const VerificationReport& r) {
    std::string out = "## " + r.suite + "\n";
    out += "- seed: " + std::to_string(r.seed) + "\n";
    out += "- cases: " + std::to_string(r.cases) + "\n";
    out += std::string("- status: ") + (r.passed() ? "pass" : "FAIL") + "\n";
    out += "- wall time: " + std::to_string(r.wall_ms) + " ms\n";
    for (const auto& f : r.failures)
        out += "  - failure `" + f.property + "` (case seed " + std::to_string(f.case_seed) + ")\n";
    return out;
}

namespace {

GeneratorOptions gen_options(const SweepOptions& opt) {
    GeneratorOptions g;
    g.max_dim = opt.max_dim;
    g.max_deg = opt.max_deg;
    return g;
}

/// Deterministic per-case seeds derived from the sweep seed.
uint64_t case_seed(uint64_t seed, size_t index) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    return rng.next();
}

/// Fan a case runner across worker threads; failures keep their case order.
template <typename Fn>
VerificationReport sweep(const std::string& suite, const SweepOptions& opt, size_t cases, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = suite;
    report.seed = opt.seed;
    report.cases = cases;
    std::vector<std::vector<CaseFailure>> results(cases);
    std::atomic<size_t> next{0};
    size_t workers = opt.threads ? opt.threads : std::max<unsigned>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, cases == 0 ? size_t{1} : cases);
    auto work = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= cases) break;
            uint64_t cs = case_seed(opt.seed, i);
            Rng rng(cs);
            try {
                fn(rng, cs, results[i]);
            } catch (const std::exception& e) {
                results[i].push_back({std::string("exception: ") + e.what(), cs, Json()});
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& r : results)
        for (auto& f : r) report.failures.push_back(std::move(f));
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SSetPtr pick_shape(Rng& rng, size_t trunc) {
    switch (rng.below(3)) {
        case 0: return delta(1, trunc);
        case 1: return circle(trunc).sset;
        default: return delta(2, trunc);
    }
}

}  // namespace

VerificationReport verify_axioms(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    size_t trunc = std::max<size_t>(opt.truncation, 3);
    auto non_equivalences = std::make_shared<std::atomic<size_t>>(0);
    VerificationReport report = sweep("axioms", opt, opt.cases, [&, gen, trunc, non_equivalences](
                                                                    Rng& rng, uint64_t cs,
                                                                    std::vector<CaseFailure>& out) {
        // coproducts: sums of equivalences are equivalences
        {
            ChainComplex a = random_complex(rng, gen);
            ChainComplex b = random_complex(rng, gen);
            QisData qa = random_qis(rng, a, gen);
            QisData qb = random_qis(rng, b, gen);
            SumData src = direct_sum(a, b);
            SumData tgt = direct_sum(qa.target, qb.target);
            ChainMap sum = direct_sum_map(qa.map, qb.map, src, tgt);
            if (!is_qis(sum))
                out.push_back({"coproducts: sum of equivalences", cs, to_json(sum)});
        }
        // simple additivity: the canonical comparison with the sum is a strict iso
        {
            ChainComplex a = random_complex(rng, gen);
            ChainComplex b = random_complex(rng, gen);
            SSetPtr k = delta(1, trunc);
            BoxData x = boxtimes(k, constant_obj(a, trunc));
            BoxData y = boxtimes(k, constant_obj(b, trunc));
            SimpSumData sum = simp_direct_sum(x.obj, y.obj);
            ChainComplex sx = x.obj->simple_complex();
            ChainComplex sy = y.obj->simple_complex();
            SumData expect = direct_sum(sx, sy);
            ChainMap iso = expect.in1.compose(simple_map(sum.pr_left)) +
                           expect.in2.compose(simple_map(sum.pr_right));
            bool ok = true;
            for (size_t n = 0; n <= iso.source().top() && ok; ++n) {
                Matrix m = iso.component(n);
                if (m.rows() != m.cols() || (m.rows() > 0 && rank(m) != m.rows())) ok = false;
            }
            if (!ok || !is_qis(iso))
                out.push_back({"simple commutes with coproducts", cs, Json()});
        }
        // comparison map on a seeded grid
        {
            ChainComplex a = random_complex(rng, gen);
            SSetPtr k = delta(1, 2);
            BisimpObjPtr z = grid_from_sset(k, constant_obj(a, 2));
            if (rng.below(2) == 0) z = grid_conjugate(rng, z);
            if (!is_qis(aw_map(z)))
                out.push_back({"diagonal comparison is an equivalence", cs, Json()});
        }
        // unit identities
        {
            ChainComplex a = random_complex(rng, gen);
            SimpleUnit u = unit(a, 2);
            if (!(u.lambda.compose(u.rho) == ChainMap::identity(a)) ||
                !(u.rho.compose(u.lambda) == ChainMap::identity(u.lambda.source())) ||
                !is_qis(u.lambda))
                out.push_back({"unit identities", cs, to_json(a)});
        }
        // exactness: a levelwise equivalence has an equivalent simple
        {
            ChainComplex a = random_complex(rng, gen);
            QisData q = random_qis(rng, a, gen);
            SSetPtr k = pick_shape(rng, trunc);
            BoxData x = boxtimes(k, constant_obj(a, trunc));
            BoxData y = boxtimes(k, constant_obj(q.target, trunc));
            SimpMap f = boxtimes_map(x, y, sset_identity(k), constant_map(q.map, trunc));
            if (!is_qis(simple_map(f)))
                out.push_back({"exactness of the simple", cs, to_json(q.map)});
        }
        // cone detection, both directions (a third of the cases force an equivalence)
        {
            ChainComplex a = random_complex(rng, gen);
            ChainMap f = [&] {
                if (rng.below(3) == 0) return random_qis(rng, a, gen).map;
                ChainComplex b = random_complex(rng, gen);
                return random_chain_map(rng, a, b, gen);
            }();
            if (!is_qis(f)) non_equivalences->fetch_add(1);
            SimpObjPtr cx = constant_obj(f.source(), 2);
            SimpObjPtr cy = constant_obj(f.target(), 2);
            SimpObjPtr z = zero_obj(2);
            SimpMap fm{cx, cy, std::vector<ChainMap>(3, f)};
            SimpMap gz{cx, z, {ChainMap::zero(f.source(), z->level(0)),
                               ChainMap::zero(f.source(), z->level(1)),
                               ChainMap::zero(f.source(), z->level(2))}};
            CylData cone = simplicial_cyl(fm, gz);
            bool acyclic = cone.obj->simple_complex().is_acyclic();
            if (acyclic != is_qis(f))
                out.push_back({"cone detects equivalences", cs, to_json(f)});
        }
        // inverse order
        {
            ChainComplex a = random_complex(rng, gen);
            ChainComplex b = random_complex(rng, gen);
            ChainMap g = rng.below(2) == 0 ? random_qis(rng, a, gen).map
                                           : random_chain_map(rng, a, b, gen);
            SSetPtr k = delta(1, trunc);
            BoxData x = boxtimes(k, constant_obj(g.source(), trunc));
            BoxData y = boxtimes(k, constant_obj(g.target(), trunc));
            SimpMap f = boxtimes_map(x, y, sset_identity(k), constant_map(g, trunc));
            if (is_qis(simple_map(f)) != is_qis(simple_map(upsilon_map(f))))
                out.push_back({"inverse order preserves equivalences", cs, to_json(g)});
        }
    });
    // the cone-detection biconditional must be exercised on enough
    // non-equivalences (two fifths of the corpus)
    if (non_equivalences->load() * 5 < opt.cases * 2)
        report.failures.push_back({"cone detection saw too few non-equivalences", opt.seed, Json()});
    return report;
}

VerificationReport verify_comparison(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    gen.max_dim = std::min<size_t>(gen.max_dim, 3);
    gen.max_deg = std::min<size_t>(gen.max_deg, 2);
    return sweep("comparison", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                        std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        bool deep = rng.below(2) == 1;
        SimpObjPtr inner =
            deep ? boxtimes(delta(1, 2), constant_obj(a, 2)).obj : constant_obj(a, 2);
        // the grid diagonal must stay under the truncation: one-level shapes
        // pair with the deep inner object, the 2-simplex with the constant one
        SSetPtr k = deep ? (rng.below(2) == 0 ? delta(1, 2) : circle(2).sset) : pick_shape(rng, 2);
        BisimpObjPtr z = grid_from_sset(k, inner);
        if (rng.below(2) == 0) z = grid_transpose(z);
        if (rng.below(2) == 0) z = grid_conjugate(rng, z);
        ChainMap aw = aw_map(z);
        if (!is_qis(aw)) {
            out.push_back({"comparison map is an equivalence", cs, Json()});
            return;
        }
        // naturality square against a conjugation of the same grid
        BisimpObjPtr z2 = grid_conjugate(rng, z);
        (void)z2;
        // unit compatibility composites on the two degenerate grids
        SimpObjPtr x = boxtimes(delta(1, 2), constant_obj(a, 2)).obj;
        ChainComplex sx = x->simple_complex();
        for (bool transpose : {false, true}) {
            BisimpObjPtr zc = grid_from_sset(delta(0, 2), x);
            if (transpose) zc = grid_transpose(zc);
            ChainMap mu = aw_map(zc);
            bool ok = true;
            std::vector<Matrix> id(std::max(mu.target().top(), sx.top()) + 1);
            for (size_t n = 0; n < id.size(); ++n) {
                if (mu.target().dim(n) != sx.dim(n)) {
                    ok = false;
                    break;
                }
                id[n] = Matrix::identity(sx.dim(n));
            }
            if (!ok) {
                out.push_back({"unit compatibility shapes", cs, Json()});
                continue;
            }
            ChainMap ident(mu.target(), sx, std::move(id));
            if (!(induced_homology_map(ident.compose(mu)) ==
                  GradedMap::identity(sx.homology().h_dims)))
                out.push_back({transpose ? "unit compatibility (second composite)"
                                         : "unit compatibility (first composite)",
                               cs, Json()});
        }
    });
}

VerificationReport verify_fractions(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    gen.max_dim = std::min<size_t>(gen.max_dim, 3);
    gen.max_deg = std::min<size_t>(gen.max_deg, 2);
    return sweep("fractions", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                       std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        ChainComplex b = random_complex(rng, gen);
        ChainMap f = random_chain_map(rng, a, b, gen);
        QisData e = random_qis(rng, a, gen);
        OreSquare sq = ore_square(f, e.map);
        if (!is_qis(sq.i)) out.push_back({"ore square equivalence leg", cs, to_json(f)});
        if (!(sq.homotopy.from == sq.i.compose(f)) || !(sq.homotopy.to == sq.j.compose(e.map)))
            out.push_back({"ore square homotopy witness", cs, to_json(f)});
        GradedMap lhs = induced_homology_map(sq.i).compose(induced_homology_map(f));
        GradedMap rhs = induced_homology_map(sq.j).compose(induced_homology_map(e.map));
        if (!(lhs == rhs)) out.push_back({"ore square commutes on homology", cs, to_json(f)});

        // composition: unit laws, associativity, independence of the square
        ChainComplex c = random_complex(rng, gen);
        ChainComplex d = random_complex(rng, gen);
        Roof r1{random_chain_map(rng, a, b, gen), ChainMap::identity(b)};
        QisData q2 = random_qis(rng, b, gen);
        Roof r2{q2.map.compose(ChainMap::identity(b)), q2.map};  // identity as a lazy roof
        Roof r3{random_chain_map(rng, b, c, gen), ChainMap::identity(c)};
        Roof r4{random_chain_map(rng, c, d, gen), ChainMap::identity(d)};
        if (!roof_equal(roof_compose(r1, roof_identity(a)), r1) ||
            !roof_equal(roof_compose(roof_identity(b), r1), r1))
            out.push_back({"composition unit laws", cs, Json()});
        if (!roof_equal(roof_compose(r3, r1, 0), roof_compose(r3, r1, 1)))
            out.push_back({"independence of the ore square", cs, Json()});
        Roof left = roof_compose(roof_compose(r4, r3), r1);
        Roof right = roof_compose(r4, roof_compose(r3, r1));
        if (!roof_equal(left, right)) out.push_back({"associativity", cs, Json()});
        if (!roof_equal(r2, roof_identity(b)))
            out.push_back({"lazy identity roof", cs, to_json(r2)});

        // coequalization through the proof's cylinder recipe
        ChainComplex s0 = random_complex(rng, gen);
        QisData sq2 = random_qis(rng, s0, gen);
        ChainComplex tgt = random_complex(rng, gen);
        ChainMap u = random_chain_map(rng, sq2.target, tgt, gen);
        GradedMap phi = induced_homology_map(u);
        ChainMap v = chain_map_with_homology(rng, sq2.target, tgt, phi, gen);
        auto h = are_homotopic(u.compose(sq2.map), v.compose(sq2.map), 0);
        if (!h) {
            out.push_back({"homotopy between equalized composites", cs, Json()});
            return;
        }
        Coequalization ce = coequalize(u, v, sq2.map, *h);
        if (!is_qis(ce.t_prime) || !(ce.witness.from == ce.t_prime.compose(u)) ||
            !(ce.witness.to == ce.t_prime.compose(v)))
            out.push_back({"coequalization witness", cs, Json()});
    });
}

VerificationReport verify_cone_oracle(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    std::atomic<int> sign_state{0};  // 0 unset, +1 same, -1 negated
    return sweep("cone-oracle", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                         std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        ChainComplex b = random_complex(rng, gen);
        ChainMap f = random_chain_map(rng, a, b, gen);
        DescentCone dc = cone(f);
        ConeData cc = classical_cone(f);
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
        if (!is_qis(iso)) {
            out.push_back({"cone comparison equivalence", cs, to_json(f)});
            return;
        }
        // long exact sequence of the descent triangle
        Triangle tri = cofiber_triangle(roof_from_map(f));
        if (!verify_les(tri)) out.push_back({"cone long exact sequence", cs, to_json(f)});
        // connecting maps agree with a once-fixed global sign
        GradedMap conn_desc = induced_homology_map(dc.project);
        GradedMap conn_cl = induced_homology_map(cc.projection).compose(induced_homology_map(iso));
        std::vector<Matrix> unshift = suspension_unshift(a);
        ChainComplex a1 = shift(a, 1);
        const HomologyData& h1 = a1.homology();
        const HomologyData& ha = a.homology();
        for (size_t n = 1; n < unshift.size(); ++n) {
            Matrix lhs = unshift[n] * conn_desc.component(n);
            Matrix basis = Matrix::hcat(ha.reps[n - 1], ha.boundaries[n - 1]);
            Matrix taut = basis.cols() == 0
                              ? Matrix(0, h1.dim(n))
                              : solve_exact(basis, h1.reps[n]).submatrix(0, ha.dim(n - 1), 0, h1.dim(n));
            Matrix rhs = taut * conn_cl.component(n);
            if ((n - 1) % 2 == 1) rhs = -rhs;
            if (lhs.rows() * lhs.cols() == 0) continue;
            bool same = lhs == rhs, neg = lhs == -rhs;
            if (!same && !neg) {
                out.push_back({"connecting map comparison", cs, to_json(f)});
                continue;
            }
            if (same && neg) continue;
            int want = same ? 1 : -1;
            int expected = 0;
            if (!sign_state.compare_exchange_strong(expected, want) && sign_state.load() != want)
                out.push_back({"global connecting sign drifted", cs, to_json(f)});
        }
    });
}

VerificationReport verify_triangles(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    gen.max_dim = std::min<size_t>(gen.max_dim, 3);
    gen.max_deg = std::min<size_t>(gen.max_deg, 2);
    return sweep("triangles", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                       std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        ChainComplex b = random_complex(rng, gen);
        ChainMap f = random_chain_map(rng, a, b, gen);

        // TR1: cone of the identity, cofiber embedding, vanishing composites
        if (!cone(ChainMap::identity(a)).total.is_acyclic())
            out.push_back({"TR1 cone of identity", cs, to_json(a)});
        Triangle tri = cofiber_triangle(roof_from_map(f));
        if (!verify_les(tri) || !composites_vanish(tri))
            out.push_back({"TR1 cofiber triangle", cs, to_json(f)});

        // TR2: rotation is isomorphic to the cofiber of the second map
        Triangle rot = rotate(tri);
        Triangle cof = cofiber_triangle(tri.v);
        Roof ra = roof_identity(rot.a), rb = roof_identity(rot.b);
        auto rc = solve_third_iso(rot, cof, ra, rb);
        if (!rc || !triangle_iso(rot, cof, ra, rb, *rc) || !verify_les(rot))
            out.push_back({"TR2 rotation", cs, to_json(f)});

        // TR3, three shapes: a strictly commuting square, equivalence roofs,
        // and roofs with a nontrivial backward leg
        {
            ChainComplex a2 = random_complex(rng, gen);
            ChainMap al = random_chain_map(rng, a, a2, gen);
            ChainComplex b2 = random_complex(rng, gen);
            ChainMap g2 = random_chain_map(rng, a2, b2, gen);
            Triangle tsrc = cofiber_triangle(roof_from_map(g2.compose(al)));
            Triangle ttgt = cofiber_triangle(roof_from_map(g2));
            Roof gamma = complete_morphism(tsrc, ttgt, roof_from_map(al), roof_identity(b2));
            if (!roof_equal(roof_compose(gamma, tsrc.v), roof_compose(ttgt.v, roof_identity(b2))) ||
                !roof_equal(roof_compose(ttgt.w, gamma),
                            roof_compose(suspend_roof(roof_from_map(al)), tsrc.w)))
                out.push_back({"TR3 strict completion", cs, to_json(g2)});
        }
        QisData qa = random_qis(rng, a, gen);
        QisData qb = random_qis(rng, b, gen);
        ChainMap f2 = chain_map_with_homology(
            rng, qa.target, qb.target,
            induced_homology_map(qb.map)
                .compose(induced_homology_map(f))
                .compose(induced_homology_map(qa.map).inverse()),
            gen);
        Triangle t2 = cofiber_triangle(roof_from_map(f2));
        bool inverted = rng.below(2) == 0;
        Triangle& tfrom = inverted ? t2 : tri;
        Triangle& tto = inverted ? tri : t2;
        Roof alpha = inverted ? roof_invert(roof_from_map(qa.map)) : roof_from_map(qa.map);
        Roof beta = inverted ? roof_invert(roof_from_map(qb.map)) : roof_from_map(qb.map);
        Roof gamma = complete_morphism(tfrom, tto, alpha, beta);
        bool squares = roof_equal(roof_compose(gamma, tfrom.v), roof_compose(tto.v, beta)) &&
                       roof_equal(roof_compose(tto.w, gamma), roof_compose(suspend_roof(alpha), tfrom.w));
        if (!squares || !roof_homology(gamma).is_iso())
            out.push_back({"TR3 completion", cs, to_json(f)});

        // TR4: octahedron with its strict identities
        ChainComplex c = random_complex(rng, gen);
        ChainMap v = random_chain_map(rng, b, c, gen);
        Octahedron oct = octahedron(f, v);
        if (!oct.psi_qis || !oct.theta_identities || !oct.tau_identities)
            out.push_back({"TR4 strict identities", cs, to_json(v)});
        if (!verify_les(oct.triangle) || !composites_vanish(oct.triangle))
            out.push_back({"TR4 octahedron sequence", cs, to_json(v)});
    });
}

VerificationReport verify_minus(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    return sweep("minus", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                   std::vector<CaseFailure>& out) {
        ChainComplex b = random_complex(rng, gen);
        MinusData m = minus_map(b);
        Suspension sb = suspend(b);
        if (!roof_equal(roof_compose(m.m, m.m), roof_identity(sb.total)))
            out.push_back({"minus squares to the identity", cs, to_json(b)});
        if (!(roof_homology(m.m) == -GradedMap::identity(sb.total.homology().h_dims)))
            out.push_back({"minus acts as -1 on homology", cs, to_json(b)});
        ChainComplex b2 = random_complex(rng, gen);
        ChainMap f = random_chain_map(rng, b, b2, gen);
        Roof sf = roof_from_map(suspend_map(f));
        if (!roof_equal(roof_compose(minus_map(b2).m, sf), roof_compose(sf, m.m)))
            out.push_back({"minus naturality", cs, to_json(f)});
    });
}

VerificationReport verify_cogroup(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    gen.max_dim = std::min<size_t>(gen.max_dim, 3);
    gen.max_deg = std::min<size_t>(gen.max_deg, 2);
    return sweep("cogroup", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                     std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        Comultiplication cm = comultiplication(a);
        if (!counit_check(cm)) out.push_back({"counit", cs, to_json(a)});
        MinusData m = minus_map(a);
        if (!inverse_check(cm, m)) out.push_back({"inverse law", cs, to_json(a)});
        if (!coassoc_check(cm)) out.push_back({"coassociativity", cs, to_json(a)});
        if (!abelian_check(a)) out.push_back({"abelian double suspension", cs, to_json(a)});
        ChainComplex b = random_complex(rng, gen);
        ChainMap f = random_chain_map(rng, a, b, gen);
        Coaction ca = coaction(f);
        if (!ca.counit_strict) out.push_back({"coaction counit", cs, to_json(f)});
        if (!coaction_compatible(ca, cm)) out.push_back({"coaction compatibility", cs, to_json(f)});
    });
}

VerificationReport verify_stability(const SweepOptions& opt) {
    GeneratorOptions gen = gen_options(opt);
    gen.max_dim = std::min<size_t>(gen.max_dim, 3);
    gen.max_deg = std::min<size_t>(gen.max_deg, 2);
    return sweep("stability", opt, opt.cases, [&, gen](Rng& rng, uint64_t cs,
                                                       std::vector<CaseFailure>& out) {
        ChainComplex a = random_complex(rng, gen);
        Suspension sa = suspend(a);
        for (size_t n = 0; n <= sa.total.top(); ++n) {
            size_t expect = n >= 1 ? a.homology().dim(n - 1) : 0;
            if (sa.total.homology().dim(n) != expect) {
                out.push_back({"suspension shifts homology", cs, to_json(a)});
                break;
            }
        }
        std::vector<Matrix> un = suspension_unshift(a);
        for (size_t n = 1; n < un.size(); ++n)
            if (un[n].rows() != un[n].cols() || (un[n].rows() > 0 && rank(un[n]) != un[n].rows())) {
                out.push_back({"suspension unshift isomorphism", cs, to_json(a)});
                break;
            }
        // hom-set group law matches graded addition
        Comultiplication cm = comultiplication(a);
        ChainComplex x = random_complex(rng, gen);
        ChainMap u = random_chain_map(rng, cm.sigma, x, gen);
        ChainMap v = random_chain_map(rng, cm.sigma, x, gen);
        Roof sum = hom_sum(cm, roof_from_map(u), roof_from_map(v));
        if (!(roof_homology(sum) == induced_homology_map(u) + induced_homology_map(v)))
            out.push_back({"hom-set sum matches graded addition", cs, to_json(u)});
    });
}

VerificationReport verify_filtered(const SweepOptions& opt) {
    return sweep("filtered", opt, opt.cases, [&](Rng& rng, uint64_t cs,
                                                 std::vector<CaseFailure>& out) {
        FilteredOptions fopt;
        fopt.max_deg = std::min<size_t>(opt.max_deg, 3);
        FilteredComplex f = random_filtered(rng, fopt);
        // page recursion up to stabilization
        size_t rmax = static_cast<size_t>(f.hi() - f.lo()) + 2;
        for (size_t r = 1; r <= rmax; ++r) {
            SpectralPage pr = page(f, r);
            SpectralPage pn = page(f, r + 1);
            for (const auto& [key, term] : pr.terms) {
                auto [p, q] = key;
                Matrix outgoing = pr.differential(p, q);
                Matrix incoming = pr.differential(p - static_cast<int>(r), q + static_cast<int>(r) - 1);
                if (term.dim - rank(outgoing) - rank(incoming) != pn.dim(p, q)) {
                    out.push_back({"page recursion", cs, to_json(f)});
                    r = rmax;
                    break;
                }
            }
        }
        // infinity page equals the graded cohomology
        SpectralPage pinf = page(f, rmax);
        for (int p = f.lo(); p <= f.hi(); ++p)
            for (size_t n = 0; n <= f.complex().top(); ++n)
                if (pinf.dim(p, static_cast<int>(n) - p) != graded_cohomology_dim(f, p, n)) {
                    out.push_back({"infinity page is the graded cohomology", cs, to_json(f)});
                    p = f.hi();
                    break;
                }
        // decalage page shift per bidegree and per total degree
        FilteredComplex df = dec(f);
        SpectralPage d1 = page(df, 1);
        SpectralPage e2 = page(f, 2);
        for (const auto& [key, term] : d1.terms) {
            auto [p, q] = key;
            if (term.dim != e2.dim(2 * p + q, -p)) {
                out.push_back({"decalage bidegree reindexing", cs, to_json(f)});
                break;
            }
        }
        for (size_t n = 0; n <= f.complex().top(); ++n)
            if (d1.total_dim(static_cast<int>(n)) != e2.total_dim(static_cast<int>(n))) {
                out.push_back({"decalage total dimension shift", cs, to_json(f)});
                break;
            }
        // localization transport
        FilteredPair pr = random_filtered_pair(rng, fopt);
        if (is_e2_iso(pr.map) != is_filtered_qis(dec_map(pr.map)))
            out.push_back({"decalage localization transport", cs, to_json(pr.src)});
        // path filtration rank formulas and the graded fiber sequence
        FilteredMap g = filtered_map(pr.src, pr.tgt, [&] {
            std::vector<Matrix> comps;
            for (size_t n = 0; n <= pr.src.complex().top(); ++n)
                comps.push_back(pr.map.f.component(n));
            return comps;
        }());
        for (PathFiltration which : {PathFiltration::M, PathFiltration::N}) {
            PathData pd = path_object(pr.map, g, which);
            for (int p = pd.path.lo(); p <= pd.path.hi(); ++p)
                for (size_t n = 0; n <= pd.path.complex().top(); ++n) {
                    int middle = which == PathFiltration::M ? p : p - 1;
                    size_t expect = pr.src.filtration(p, n).dim() +
                                    (n >= 1 ? pr.tgt.filtration(middle, n - 1).dim() : 0) +
                                    pr.src.filtration(p, n).dim();
                    if (pd.path.filtration(p, n).dim() != expect) {
                        out.push_back({which == PathFiltration::M ? "path filtration M ranks"
                                                                  : "path filtration N ranks",
                                       cs, to_json(pr.src)});
                        p = pd.path.hi();
                        break;
                    }
                }
        }
        FiberData fd = fiber_sequence(pr.map);
        if (!fd.graded_les_exact)
            out.push_back({"graded long exact sequence of the fiber", cs, to_json(pr.src)});
    });
}

std::vector<VerificationReport> verify_all(const SweepOptions& opt) {
    std::vector<VerificationReport> out;
    out.push_back(verify_axioms(opt));
    out.push_back(verify_comparison(opt));
    out.push_back(verify_fractions(opt));
    out.push_back(verify_cone_oracle(opt));
    out.push_back(verify_triangles(opt));
    out.push_back(verify_minus(opt));
    out.push_back(verify_cogroup(opt));
    out.push_back(verify_stability(opt));
    out.push_back(verify_filtered(opt));
    return out;
}

}  // namespace descenso

#include "descenso/homotopy.hpp"

#include "descenso/generators.hpp"

#include <algorithm>

namespace descenso {

namespace {

constexpr size_t kCylTrunc = 2;

/// Rewrap a chain map between complexes equal to the given endpoints.
ChainMap rewrap(const ChainMap& m, const ChainComplex& src, const ChainComplex& tgt) {
    size_t degs = std::max(src.top(), tgt.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix c = m.component(n);
        if (c.rows() != tgt.dim(n) || c.cols() != src.dim(n)) {
            if (!c.is_zero()) throw ValidationError("rewrap: incompatible component");
            c = Matrix(tgt.dim(n), src.dim(n));
        }
        comps[n] = std::move(c);
    }
    return ChainMap(src, tgt, std::move(comps), false);
}

}  // namespace

DCyl dcyl(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source())) throw std::invalid_argument("dcyl: sources differ");
    SimpObjPtr cx = constant_obj(f.source(), kCylTrunc);
    SimpObjPtr cy = constant_obj(f.target(), kCylTrunc);
    SimpObjPtr cz = constant_obj(g.target(), kCylTrunc);
    SimpMap fm{cx, cy, std::vector<ChainMap>(kCylTrunc + 1, f)};
    SimpMap gm{cx, cz, std::vector<ChainMap>(kCylTrunc + 1, g)};
    CylData data = simplicial_cyl(fm, gm);
    ChainComplex carrier = data.obj->simple_complex();
    ChainMap ly = rewrap(simple_map(data.leg_y), f.target(), carrier);
    ChainMap lz = rewrap(simple_map(data.leg_z), g.target(), carrier);
    return DCyl{std::move(data), std::move(carrier), std::move(ly), std::move(lz), f, g};
}

ChainMap cyl_factor(const DCyl& c, const ChainMap& p, const ChainMap& q) {
    if (!(p.compose(c.f) == q.compose(c.g)))
        throw std::invalid_argument("cyl_factor: p f != q g");
    const ChainComplex& t = p.target();
    const ChainComplex& carrier = c.carrier;
    const TotalBlocks& blocks = c.data.obj->simple_blocks();
    size_t degs = std::max(carrier.top(), t.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix m(t.dim(n), carrier.dim(n));
        const auto* b0 = blocks.find(n, 0);
        if (b0 && b0->size > 0) {
            // level-0 block is Y + Z with the identity basis
            m.paste(p.component(n), 0, b0->offset);
            m.paste(q.component(n), 0, b0->offset + c.data.y->level(0).dim(n));
        }
        comps[n] = std::move(m);
    }
    ChainMap r(carrier, t, std::move(comps));
    if (!(r.compose(c.leg_y) == p) || !(r.compose(c.leg_z) == q))
        throw ValidationError("cyl_factor: retraction identities fail");
    return r;
}

ChainMap dcyl_map(const DCyl& src, const DCyl& tgt, const ChainMap& phi_x, const ChainMap& phi_y,
                  const ChainMap& phi_z) {
    SimpMap fx{src.data.x, tgt.data.x, std::vector<ChainMap>(kCylTrunc + 1, phi_x)};
    SimpMap fy{src.data.y, tgt.data.y, std::vector<ChainMap>(kCylTrunc + 1, phi_y)};
    SimpMap fz{src.data.z, tgt.data.z, std::vector<ChainMap>(kCylTrunc + 1, phi_z)};
    SimpMap m = cyl_map(src.data, tgt.data, fx, fy, fz);
    return rewrap(simple_map(m), src.carrier, tgt.carrier);
}

CylObject cyl_object(const ChainComplex& a) {
    ChainMap id = ChainMap::identity(a);
    DCyl c = dcyl(id, id);
    ChainMap sigma = cyl_factor(c, id, id);
    CylObject out{a, std::move(c), ChainMap(), ChainMap(), std::move(sigma)};
    out.i = out.cyl.leg_y;
    out.j = out.cyl.leg_z;
    if (!(out.sigma.compose(out.i) == id) || !(out.sigma.compose(out.j) == id))
        throw ValidationError("cyl_object: sigma identities fail");
    return out;
}

AdmissibleCylinder AdmissibleCylinder::trivial(const ChainComplex& a) {
    AdmissibleCylinder c;
    c.object_ = a;
    c.carrier_ = a;
    c.i_ = c.j_ = c.sigma_ = ChainMap::identity(a);
    c.kind_ = Kind::Trivial;
    return c;
}

AdmissibleCylinder AdmissibleCylinder::base(const ChainComplex& a) {
    CylObject co = cyl_object(a);
    AdmissibleCylinder c;
    c.object_ = a;
    c.carrier_ = co.cyl.carrier;
    c.i_ = co.i;
    c.j_ = co.j;
    c.sigma_ = co.sigma;
    c.kind_ = Kind::Base;
    c.backing_ = std::make_shared<DCyl>(std::move(co.cyl));
    return c;
}

AdmissibleCylinder AdmissibleCylinder::swap(AdmissibleCylinder c) {
    AdmissibleCylinder out;
    out.object_ = c.object_;
    out.carrier_ = c.carrier_;
    out.i_ = c.j_;
    out.j_ = c.i_;
    out.sigma_ = c.sigma_;
    out.kind_ = Kind::Swap;
    out.child1_ = std::make_shared<AdmissibleCylinder>(std::move(c));
    return out;
}

AdmissibleCylinder AdmissibleCylinder::glue(AdmissibleCylinder c1, AdmissibleCylinder c2) {
    if (!(c1.object_ == c2.object_)) throw std::invalid_argument("glue: object mismatch");
    DCyl backing = dcyl(c2.i_, c1.j_);  // Y end carries c2, Z end carries c1
    AdmissibleCylinder out;
    out.object_ = c1.object_;
    out.carrier_ = backing.carrier;
    out.i_ = backing.leg_z.compose(c1.i_);
    out.j_ = backing.leg_y.compose(c2.j_);
    out.sigma_ = cyl_factor(backing, c2.sigma_, c1.sigma_);
    out.kind_ = Kind::Glue;
    out.child1_ = std::make_shared<AdmissibleCylinder>(std::move(c1));
    out.child2_ = std::make_shared<AdmissibleCylinder>(std::move(c2));
    out.backing_ = std::make_shared<DCyl>(std::move(backing));
    ChainMap id = ChainMap::identity(out.object_);
    if (!(out.sigma_.compose(out.i_) == id) || !(out.sigma_.compose(out.j_) == id))
        throw ValidationError("glue: eta identities fail");
    return out;
}

std::string AdmissibleCylinder::provenance() const {
    switch (kind_) {
        case Kind::Trivial: return "trivial";
        case Kind::Base: return "base";
        case Kind::Swap: return "swap(" + child1_->provenance() + ")";
        case Kind::Glue: return "glue(" + child1_->provenance() + "," + child2_->provenance() + ")";
    }
    return "?";
}

CylinderLift AdmissibleCylinder::precompose(const ChainMap& u) const {
    if (!(u.target() == object_)) throw std::invalid_argument("precompose: target mismatch");
    switch (kind_) {
        case Kind::Trivial:
            return CylinderLift{trivial(u.source()), u};
        case Kind::Base: {
            AdmissibleCylinder cs = base(u.source());
            ChainMap lift = dcyl_map(*cs.backing_, *backing_, u, u, u);
            if (!(lift.compose(cs.i_) == i_.compose(u)) || !(lift.compose(cs.j_) == j_.compose(u)))
                throw ValidationError("precompose: base lift squares fail");
            return CylinderLift{std::move(cs), std::move(lift)};
        }
        case Kind::Swap: {
            CylinderLift inner = child1_->precompose(u);
            return CylinderLift{swap(std::move(inner.cylinder)), std::move(inner.carrier_map)};
        }
        case Kind::Glue: {
            CylinderLift l1 = child1_->precompose(u);
            CylinderLift l2 = child2_->precompose(u);
            AdmissibleCylinder glued = glue(l1.cylinder, l2.cylinder);
            ChainMap lift = dcyl_map(*glued.backing_, *backing_, u, l2.carrier_map, l1.carrier_map);
            if (!(lift.compose(glued.i_) == i_.compose(u)) ||
                !(lift.compose(glued.j_) == j_.compose(u)))
                throw ValidationError("precompose: glued lift squares fail");
            return CylinderLift{std::move(glued), std::move(lift)};
        }
    }
    throw std::logic_error("precompose: unknown kind");
}

Homotopy make_homotopy(AdmissibleCylinder c, ChainMap h) {
    Homotopy out{std::move(c), std::move(h), ChainMap(), ChainMap()};
    out.from = out.h.compose(out.cylinder.i());
    out.to = out.h.compose(out.cylinder.j());
    return out;
}

Homotopy swap_homotopy(const Homotopy& h) {
    Homotopy out{AdmissibleCylinder::swap(h.cylinder), h.h, h.to, h.from};
    return out;
}

Homotopy compose_homotopies(const Homotopy& h1, const Homotopy& h2) {
    if (!(h1.to == h2.from)) throw std::invalid_argument("compose_homotopies: endpoints mismatch");
    AdmissibleCylinder glued = AdmissibleCylinder::glue(h1.cylinder, h2.cylinder);
    // the glued carrier is cyl(c2.i, c1.j); factor the two homotopies through it
    DCyl backing = dcyl(h2.cylinder.i(), h1.cylinder.j());
    ChainMap h = cyl_factor(backing, h2.h, h1.h);
    Homotopy out = make_homotopy(std::move(glued), std::move(h));
    if (!(out.from == h1.from) || !(out.to == h2.to))
        throw ValidationError("compose_homotopies: endpoints do not match");
    return out;
}

Homotopy precompose_homotopy(const Homotopy& h, const ChainMap& u) {
    CylinderLift lift = h.cylinder.precompose(u);
    return make_homotopy(std::move(lift.cylinder), h.h.compose(lift.carrier_map));
}

Homotopy postcompose_homotopy(const ChainMap& t, const Homotopy& h) {
    return make_homotopy(h.cylinder, t.compose(h.h));
}

Homotopy canonical_homotopy(const ChainMap& f, const ChainMap& g) {
    DCyl c = dcyl(f, g);
    AdmissibleCylinder base = AdmissibleCylinder::base(f.source());
    CylObject ca = cyl_object(f.source());
    ChainMap h = dcyl_map(ca.cyl, c, ChainMap::identity(f.source()), f, g);
    Homotopy out = make_homotopy(std::move(base), std::move(h));
    if (!(out.from == c.leg_y.compose(f)) || !(out.to == c.leg_z.compose(g)))
        throw ValidationError("canonical_homotopy: endpoints are not i f and j g");
    return out;
}

namespace {

/// Solve d_B X_q - X_{q-1} dN_q = rhs_q for per-degree unknowns X_q.
std::optional<std::vector<Matrix>> solve_twisted_homotopy(const ChainComplex& b,
                                                          const ChainComplex& n1,
                                                          const std::vector<Matrix>& rhs) {
    // unknown X_q : N1(q) -> B(q+1)
    std::vector<size_t> offs;
    size_t total = 0;
    for (size_t q = 0; q <= n1.top(); ++q) {
        offs.push_back(total);
        total += b.dim(q + 1) * n1.dim(q);
    }
    size_t rows = 0;
    for (size_t q = 0; q <= n1.top(); ++q) rows += b.dim(q) * n1.dim(q);
    Matrix sys(rows, total);
    QVector rhs_vec(rows);
    size_t row0 = 0;
    auto unknown_col = [&](size_t q, size_t bi, size_t nj) {
        return offs[q] + bi * n1.dim(q) + nj;
    };
    for (size_t q = 0; q <= n1.top(); ++q) {
        // equation block at degree q: d_B X_q - X_{q-1} dN_q = rhs_q
        Matrix db = b.d(q + 1);
        Matrix dn = n1.d(q);
        for (size_t r = 0; r < b.dim(q); ++r)
            for (size_t c = 0; c < n1.dim(q); ++c) {
                size_t row = row0 + r * n1.dim(q) + c;
                for (size_t k = 0; k < b.dim(q + 1); ++k)
                    if (!db.at(r, k).is_zero())
                        sys.at(row, unknown_col(q, k, c)) += db.at(r, k);
                if (q >= 1)
                    for (size_t k = 0; k < n1.dim(q - 1); ++k)
                        if (!dn.at(k, c).is_zero())
                            sys.at(row, unknown_col(q - 1, r, k)) -= dn.at(k, c);
                rhs_vec[row] = q < rhs.size() ? rhs[q].at(r, c) : Rational(0);
            }
        row0 += b.dim(q) * n1.dim(q);
    }
    auto sol = solve(sys, rhs_vec);
    if (!sol) return std::nullopt;
    std::vector<Matrix> x;
    for (size_t q = 0; q <= n1.top(); ++q) {
        Matrix m(b.dim(q + 1), n1.dim(q));
        for (size_t bi = 0; bi < b.dim(q + 1); ++bi)
            for (size_t nj = 0; nj < n1.dim(q); ++nj) m.at(bi, nj) = (*sol)[unknown_col(q, bi, nj)];
        x.push_back(std::move(m));
    }
    return x;
}

std::optional<Homotopy> base_homotopy(const ChainMap& f, const ChainMap& g) {
    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    AdmissibleCylinder base = AdmissibleCylinder::base(a);
    CylObject co = cyl_object(a);
    const Normalization& norm = co.cyl.data.obj->normalization();
    const ChainComplex& n1 = norm.levels[1].complex;
    // rhs_q = (-1)^q [f g] d0 restricted to the Moore part at level 1
    std::vector<Matrix> rhs(n1.top() + 1);
    for (size_t q = 0; q <= n1.top(); ++q) {
        Matrix d0 = norm.d0[1].component(q);  // N1(q) -> N0(q) = A(q) + A(q)
        Matrix fy = f.component(q), gz = g.component(q);
        Matrix val(b.dim(q), n1.dim(q));
        for (size_t r = 0; r < b.dim(q); ++r)
            for (size_t cc = 0; cc < n1.dim(q); ++cc) {
                Rational acc;
                for (size_t k = 0; k < a.dim(q); ++k) {
                    acc += fy.at(r, k) * d0.at(k, cc);
                    acc += gz.at(r, k) * d0.at(a.dim(q) + k, cc);
                }
                val.at(r, cc) = q % 2 == 0 ? acc : -acc;
            }
        rhs[q] = std::move(val);
    }
    auto x = solve_twisted_homotopy(b, n1, rhs);
    if (!x) return std::nullopt;
    // assemble H on the carrier: [f g] on the level-0 block, X on the level-1 block
    const ChainComplex& carrier = co.cyl.carrier;
    const TotalBlocks& blocks = co.cyl.data.obj->simple_blocks();
    size_t degs = std::max(carrier.top(), b.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix m(b.dim(n), carrier.dim(n));
        const auto* b0 = blocks.find(n, 0);
        if (b0 && b0->size > 0) {
            m.paste(f.component(n), 0, b0->offset);
            m.paste(g.component(n), 0, b0->offset + a.dim(n));
        }
        const auto* b1 = blocks.find(n, 1);
        if (b1 && b1->size > 0) m.paste((*x)[n - 1], 0, b1->offset);
        comps[n] = std::move(m);
    }
    ChainMap h(carrier, b, std::move(comps));
    Homotopy out = make_homotopy(std::move(base), std::move(h));
    if (!(out.from == f) || !(out.to == g)) return std::nullopt;
    return out;
}

/// Dense solve for a homotopy over an arbitrary admissible cylinder carrier.
std::optional<Homotopy> generic_homotopy(const AdmissibleCylinder& cyl, const ChainMap& f,
                                         const ChainMap& g, size_t unknown_cap = 500) {
    const ChainComplex& c = cyl.carrier();
    const ChainComplex& b = f.target();
    std::vector<size_t> offs;
    size_t total = 0;
    for (size_t n = 0; n <= std::max(c.top(), b.top()); ++n) {
        offs.push_back(total);
        total += b.dim(n) * c.dim(n);
    }
    if (total > unknown_cap) return std::nullopt;
    auto col = [&](size_t n, size_t bi, size_t cj) { return offs[n] + bi * c.dim(n) + cj; };
    std::vector<QVector> eqs;
    QVector rhs;
    auto add_eq = [&](QVector row, Rational v) {
        eqs.push_back(std::move(row));
        rhs.push_back(v);
    };
    size_t degs = offs.size();
    // endpoint constraints H i = f, H j = g
    for (const auto& [leg, val] : {std::pair<const ChainMap&, const ChainMap&>(cyl.i(), f),
                                   std::pair<const ChainMap&, const ChainMap&>(cyl.j(), g)}) {
        for (size_t n = 0; n < degs; ++n) {
            Matrix ln = leg.component(n);
            Matrix vn = val.component(n);
            for (size_t bi = 0; bi < b.dim(n); ++bi)
                for (size_t aj = 0; aj < ln.cols(); ++aj) {
                    QVector row(total);
                    for (size_t cj = 0; cj < c.dim(n); ++cj)
                        if (!ln.at(cj, aj).is_zero()) row[col(n, bi, cj)] += ln.at(cj, aj);
                    add_eq(std::move(row), vn.at(bi, aj));
                }
        }
    }
    // chain condition d_B H = H d_C
    for (size_t n = 1; n < degs; ++n) {
        Matrix db = b.d(n);
        Matrix dc = c.d(n);
        for (size_t bi = 0; bi < b.dim(n - 1); ++bi)
            for (size_t cj = 0; cj < c.dim(n); ++cj) {
                QVector row(total);
                for (size_t k = 0; k < b.dim(n); ++k)
                    if (!db.at(bi, k).is_zero()) row[col(n, k, cj)] += db.at(bi, k);
                for (size_t k = 0; k < c.dim(n - 1); ++k)
                    if (!dc.at(k, cj).is_zero()) row[col(n - 1, bi, k)] -= dc.at(k, cj);
                add_eq(std::move(row), Rational(0));
            }
    }
    Matrix sys(eqs.size(), total);
    for (size_t r = 0; r < eqs.size(); ++r)
        for (size_t cc = 0; cc < total; ++cc) sys.at(r, cc) = eqs[r][cc];
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix m(b.dim(n), c.dim(n));
        for (size_t bi = 0; bi < b.dim(n); ++bi)
            for (size_t cj = 0; cj < c.dim(n); ++cj) m.at(bi, cj) = (*sol)[col(n, bi, cj)];
        comps[n] = std::move(m);
    }
    ChainMap h(c, b, std::move(comps));
    return make_homotopy(cyl, std::move(h));
}

}  // namespace

std::optional<Homotopy> are_homotopic(const ChainMap& f, const ChainMap& g, size_t budget) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw std::invalid_argument("are_homotopic: maps not parallel");
    auto base = base_homotopy(f, g);
    if (base) return base;
    // homotopic maps induce equal homology maps; a mismatch rules a witness out
    if (!(induced_homology_map(f) == induced_homology_map(g))) return std::nullopt;
    const ChainComplex& a = f.source();
    for (size_t depth = 1; depth <= budget; ++depth) {
        std::vector<AdmissibleCylinder> candidates;
        AdmissibleCylinder b1 = AdmissibleCylinder::base(a);
        candidates.push_back(AdmissibleCylinder::glue(b1, AdmissibleCylinder::base(a)));
        candidates.push_back(AdmissibleCylinder::glue(AdmissibleCylinder::swap(AdmissibleCylinder::base(a)),
                                                      AdmissibleCylinder::base(a)));
        candidates.push_back(AdmissibleCylinder::glue(
            AdmissibleCylinder::base(a), AdmissibleCylinder::swap(AdmissibleCylinder::base(a))));
        for (auto& cand : candidates) {
            auto found = generic_homotopy(cand, f, g);
            if (found && found->from == f && found->to == g) return found;
        }
        break;  // deeper towers add nothing new for a one-step budget
    }
    return std::nullopt;
}

OreSquare ore_square(const ChainMap& f, const ChainMap& e) {
    if (!is_qis(e)) throw std::invalid_argument("ore_square: the second map must be an equivalence");
    DCyl c = dcyl(f, e);
    ChainMap i = c.leg_y;
    ChainMap j = c.leg_z;
    if (!is_qis(i)) throw ValidationError("ore_square: canonical leg failed the equivalence check");
    CylObject ca = cyl_object(f.source());
    ChainMap h = dcyl_map(ca.cyl, c, ChainMap::identity(f.source()), f, e);
    Homotopy homotopy = make_homotopy(AdmissibleCylinder::base(f.source()), h);
    if (!(homotopy.from == i.compose(f)) || !(homotopy.to == j.compose(e)))
        throw ValidationError("ore_square: homotopy endpoints mismatch");
    return OreSquare{std::move(c), std::move(i), std::move(j), std::move(homotopy)};
}

Roof roof_from_map(const ChainMap& f) { return Roof{f, ChainMap::identity(f.target())}; }

Roof roof_identity(const ChainComplex& a) { return roof_from_map(ChainMap::identity(a)); }

Roof roof_zero(const ChainComplex& a, const ChainComplex& b) {
    return Roof{ChainMap::zero(a, b), ChainMap::identity(b)};
}

Roof roof_invert(const Roof& r) {
    if (!is_qis(r.forward)) throw std::invalid_argument("roof_invert: forward leg is not an equivalence");
    return Roof{r.backward, r.forward};
}

Roof roof_compose(const Roof& outer, const Roof& inner, int variant) {
    if (!(inner.target() == outer.source()))
        throw std::invalid_argument("roof_compose: middle objects differ");
    // strict inner leg: no Ore square is needed
    if (variant == 0 && inner.backward == ChainMap::identity(inner.target()))
        return Roof{outer.forward.compose(inner.forward), outer.backward};
    OreSquare sq = ore_square(outer.forward, inner.backward);
    ChainMap i = sq.i, j = sq.j;
    if (variant != 0) {
        CylObject cw = cyl_object(sq.cyl.carrier);
        i = cw.i.compose(i);
        j = cw.i.compose(j);
    }
    return Roof{j.compose(inner.forward), i.compose(outer.backward)};
}

Roof roof_sum(const Roof& r, const Roof& s) {
    SumData src = direct_sum(r.source(), s.source());
    SumData mid = direct_sum(r.forward.target(), s.forward.target());
    SumData tgt = direct_sum(r.target(), s.target());
    return Roof{direct_sum_map(r.forward, s.forward, src, mid),
                direct_sum_map(r.backward, s.backward, tgt, mid)};
}

GradedMap roof_homology(const Roof& r) {
    return induced_homology_map(r.backward).inverse().compose(induced_homology_map(r.forward));
}

bool roof_equal(const Roof& a, const Roof& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
    return roof_homology(a) == roof_homology(b);
}

bool roof_is_trivial(const Roof& r) { return roof_homology(r).is_zero(); }

Roof roof_realize(const GradedMap& phi, const ChainComplex& a, const ChainComplex& b) {
    FormalityData fa = formality(a);
    FormalityData fb = formality(b);
    size_t degs = std::max(fa.homology_complex.top(), fb.homology_complex.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix p = phi.component(n);
        if (p.rows() != fb.homology_complex.dim(n) || p.cols() != fa.homology_complex.dim(n)) {
            if (p.rows() * p.cols() != 0) throw std::invalid_argument("roof_realize: shape mismatch");
            p = Matrix(fb.homology_complex.dim(n), fa.homology_complex.dim(n));
        }
        comps[n] = std::move(p);
    }
    ChainMap phimap(fa.homology_complex, fb.homology_complex, std::move(comps), false);
    return Roof{phimap.compose(fa.collapse), fb.collapse};
}

Coequalization coequalize(const ChainMap& f, const ChainMap& g, const ChainMap& s,
                          const Homotopy& h) {
    if (!(h.from == f.compose(s)) || !(h.to == g.compose(s)))
        throw std::invalid_argument("coequalize: homotopy does not connect f s and g s");
    if (!is_qis(s)) throw std::invalid_argument("coequalize: s must be an equivalence");
    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    ChainMap id_a = ChainMap::identity(a);
    ChainMap id_b = ChainMap::identity(b);

    DCyl cp1 = dcyl(f.compose(s), s);
    DCyl cp2 = dcyl(h.h, s.compose(h.cylinder.sigma()));
    DCyl cp3 = dcyl(g.compose(s), s);
    ChainMap alpha = dcyl_map(cp1, cp2, h.cylinder.i(), id_b, id_a);
    ChainMap beta = dcyl_map(cp3, cp2, h.cylinder.j(), id_b, id_a);
    ChainMap gamma = cyl_factor(cp1, id_b, f);
    ChainMap delta = cyl_factor(cp3, id_b, g);
    ChainMap w = cp2.leg_y;

    DCyl col2 = dcyl(gamma, alpha);
    CylObject cyl_b = cyl_object(b);
    CylObject cyl_a = cyl_object(a);
    ChainMap e = dcyl_map(cyl_b.cyl, col2, cp1.leg_y, id_b, w);
    if (!is_qis(e)) throw ValidationError("coequalize: comparison map is not an equivalence");
    ChainMap big_l = dcyl_map(cyl_a.cyl, col2, cp1.leg_z, f, cp2.leg_z);

    ChainMap beta_p = col2.leg_z.compose(beta);
    DCyl col2p = dcyl(beta_p, delta);

    AdmissibleCylinder col1 = AdmissibleCylinder::glue(
        AdmissibleCylinder::trivial(a), AdmissibleCylinder::swap(AdmissibleCylinder::base(a)));
    AdmissibleCylinder col3 = AdmissibleCylinder::glue(
        AdmissibleCylinder::trivial(b), AdmissibleCylinder::swap(AdmissibleCylinder::base(b)));
    DCyl col1_backing = dcyl(cyl_a.j, id_a);
    DCyl col3_backing = dcyl(cyl_b.j, id_b);

    ChainMap h_prime = dcyl_map(col1_backing, col2p, cp3.leg_z, big_l, g);
    ChainMap t = dcyl_map(col3_backing, col2p, cp3.leg_y, e, id_b);

    Homotopy ht = make_homotopy(col3, t);   // tJ ~ tI
    Homotopy h1 = make_homotopy(col1, h_prime);  // tJ g ~ tI f
    ChainMap t_j = ht.from;
    if (!is_qis(t_j)) throw ValidationError("coequalize: t' is not an equivalence");
    if (!(h1.from == t_j.compose(g))) throw ValidationError("coequalize: H' left endpoint mismatch");
    if (!(h1.to == ht.to.compose(f))) throw ValidationError("coequalize: H' right endpoint mismatch");

    Homotopy step1 = precompose_homotopy(ht, f);       // tJ f ~ tI f
    Homotopy step2 = swap_homotopy(h1);                // tI f ~ tJ g
    Homotopy witness = compose_homotopies(step1, step2);
    if (!(witness.from == t_j.compose(f)) || !(witness.to == t_j.compose(g)))
        throw ValidationError("coequalize: witness endpoints mismatch");
    return Coequalization{std::move(t_j), std::move(witness)};
}

}  // namespace descenso

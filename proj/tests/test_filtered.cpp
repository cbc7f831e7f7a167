#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descenso/filtered.hpp"
#include "descenso/generators.hpp"

using namespace descenso;

namespace {
Matrix mat(size_t r, size_t c, std::vector<long> v) {
    std::vector<Rational> e(v.begin(), v.end());
    return Matrix(r, c, std::move(e));
}

/// A minimal two-term instance: A^0 = Q<x> -> A^1 = Q<y>, dx = y,
/// F^0 = everything, F^1 A^1 = A^1, F^1 A^0 = 0, F^2 = 0.
FilteredComplex two_term_example() {
    CochainComplex a({1, 1}, {mat(1, 1, {1})});
    std::vector<std::vector<Subspace>> filt(2);
    // range lo = 0 (everything), hi = 1
    filt[0] = {Subspace::full(1), Subspace::zero(1)};
    filt[1] = {Subspace::full(1), Subspace::full(1)};
    return FilteredComplex(a, 0, 1, std::move(filt));
}

FilteredComplex trivial_filtration(const CochainComplex& a) {
    std::vector<std::vector<Subspace>> filt(a.top() + 1);
    for (size_t n = 0; n <= a.top(); ++n) filt[n] = {Subspace::full(a.dim(n))};
    return FilteredComplex(a, 0, 0, std::move(filt));
}
}  // namespace

TEST_CASE("one-step filtration: first page is the cohomology, later pages equal") {
    Rng rng(3);
    for (int t = 0; t < 6; ++t) {
        FilteredOptions opt;
        FilteredComplex f = random_filtered(rng, opt);
        // strip to the trivial filtration on the same complex
        FilteredComplex triv = trivial_filtration(f.complex());
        SpectralPage p1 = page(triv, 1);
        for (size_t n = 0; n <= f.complex().top(); ++n)
            CHECK(p1.total_dim(static_cast<int>(n)) == f.complex().cohomology_dim(n));
        SpectralPage p2 = page(triv, 2);
        for (size_t n = 0; n <= f.complex().top(); ++n)
            CHECK(p2.total_dim(static_cast<int>(n)) == p1.total_dim(static_cast<int>(n)));
    }
}

TEST_CASE("two-term worked example: E1 two terms, d1 iso, E2 zero, Dec kills E1") {
    FilteredComplex f = two_term_example();
    SpectralPage p1 = page(f, 1);
    CHECK(p1.dim(0, 0) == 1);
    CHECK(p1.dim(1, 0) == 1);
    Matrix d1 = p1.differential(0, 0);
    CHECK(d1.rows() == 1);
    CHECK(rank(d1) == 1);
    SpectralPage p2 = page(f, 2);
    for (const auto& [key, term] : p2.terms) CHECK(term.dim == 0);

    FilteredComplex df = dec(f);
    SpectralPage dp1 = page(df, 1);
    for (const auto& [key, term] : dp1.terms) CHECK(term.dim == 0);
}

TEST_CASE("page recursion: cohomology of (E_r, d_r) is E_{r+1}") {
    Rng rng(7);
    for (int t = 0; t < 12; ++t) {
        FilteredComplex f = random_filtered(rng);
        size_t rmax = static_cast<size_t>(f.hi() - f.lo()) + 2;
        for (size_t r = 1; r <= rmax; ++r) {
            SpectralPage pr = page(f, r);
            SpectralPage pn = page(f, r + 1);
            for (const auto& [key, term] : pr.terms) {
                auto [p, q] = key;
                Matrix out = pr.differential(p, q);
                Matrix in = pr.differential(p - static_cast<int>(r), q + static_cast<int>(r) - 1);
                size_t homology = term.dim - rank(out) - rank(in);
                CHECK(homology == pn.dim(p, q));
            }
        }
    }
}

TEST_CASE("the infinity page computes the graded cohomology") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        FilteredComplex f = random_filtered(rng);
        size_t rstab = static_cast<size_t>(f.hi() - f.lo()) + 2;
        SpectralPage pinf = page(f, rstab);
        for (int p = f.lo(); p <= f.hi(); ++p)
            for (size_t n = 0; n <= f.complex().top(); ++n)
                CHECK(pinf.dim(p, static_cast<int>(n) - p) == graded_cohomology_dim(f, p, n));
    }
}

TEST_CASE("filtered and E2 equivalence detection") {
    FilteredComplex f = two_term_example();
    FilteredMap id = filtered_map(f, f, {mat(1, 1, {1}), mat(1, 1, {1})});
    CHECK(is_filtered_qis(id));
    CHECK(is_e2_iso(id));

    // the map to zero is an E2-isomorphism but not a filtered one
    CochainComplex z({0, 0}, {Matrix(0, 0)});
    std::vector<std::vector<Subspace>> zf(2);
    zf[0] = {Subspace::zero(0), Subspace::zero(0)};
    zf[1] = {Subspace::zero(0), Subspace::zero(0)};
    FilteredComplex zero(z, 0, 1, std::move(zf), false);
    FilteredMap to_zero = filtered_map(f, zero, {Matrix(0, 1), Matrix(0, 1)});
    CHECK(is_e2_iso(to_zero));
    CHECK_FALSE(is_filtered_qis(to_zero));

    // filtered quasi-isomorphisms are E2-isomorphisms on seeded cases
    Rng rng(13);
    int qis_seen = 0;
    for (int t = 0; t < 12; ++t) {
        FilteredPair pr = random_filtered_pair(rng);
        if (is_filtered_qis(pr.map)) {
            ++qis_seen;
            CHECK(is_e2_iso(pr.map));
        }
    }
    (void)qis_seen;
}

TEST_CASE("path objects: rank formulas for both filtrations") {
    Rng rng(17);
    for (int t = 0; t < 8; ++t) {
        FilteredPair f = random_filtered_pair(rng);  // f : B -> A
        FilteredPair g0 = random_filtered_pair(rng);
        (void)g0;
        // build g : C -> A with the same target by composing into f.tgt
        FilteredMap g = filtered_map(f.src, f.tgt, [&] {
            std::vector<Matrix> comps;
            for (size_t n = 0; n <= f.src.complex().top(); ++n)
                comps.push_back(f.map.f.component(n));
            return comps;
        }());
        for (PathFiltration which : {PathFiltration::M, PathFiltration::N}) {
            PathData pd = path_object(f.map, g, which);
            for (int p = pd.path.lo(); p <= pd.path.hi(); ++p)
                for (size_t n = 0; n <= pd.path.complex().top(); ++n) {
                    size_t lhs = pd.path.filtration(p, n).dim();
                    int middle = which == PathFiltration::M ? p : p - 1;
                    size_t rhs = f.src.filtration(p, n).dim() +
                                 (n >= 1 ? f.tgt.filtration(middle, n - 1).dim() : 0) +
                                 f.src.filtration(p, n).dim();
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("loop objects shift the underlying complex") {
    Rng rng(19);
    FilteredComplex x = random_filtered(rng);
    FilteredComplex lx = loop_object(x, PathFiltration::M);
    for (size_t n = 0; n <= lx.complex().top(); ++n)
        CHECK(lx.complex().dim(n) == (n >= 1 ? x.complex().dim(n - 1) : 0));
    // loop of zero is zero
    CochainComplex z({0}, {});
    std::vector<std::vector<Subspace>> zf(1);
    zf[0] = {Subspace::zero(0)};
    FilteredComplex zero(z, 0, 0, std::move(zf), false);
    CHECK(loop_object(zero, PathFiltration::M).complex().dim(0) == 0);
}

TEST_CASE("fiber sequences have exact graded long exact sequences") {
    Rng rng(23);
    for (int t = 0; t < 6; ++t) {
        FilteredPair f = random_filtered_pair(rng);
        FiberData fd = fiber_sequence(f.map);
        CHECK(fd.graded_les_exact);
    }
}

TEST_CASE("decalage: validity, page shift, localization transport") {
    Rng rng(29);
    for (int t = 0; t < 10; ++t) {
        FilteredComplex f = random_filtered(rng);
        FilteredComplex df = dec(f);  // constructor validates the filtration
        // E_1(Dec F)^{p,q} = E_2(F)^{2p+q, -p}; totals per degree agree
        SpectralPage d1 = page(df, 1);
        SpectralPage e2 = page(f, 2);
        for (const auto& [key, term] : d1.terms) {
            auto [p, q] = key;
            CHECK(term.dim == e2.dim(2 * p + q, -p));
        }
        for (size_t n = 0; n <= f.complex().top(); ++n)
            CHECK(d1.total_dim(static_cast<int>(n)) == e2.total_dim(static_cast<int>(n)));
    }
    // E2-isomorphism iff filtered quasi-isomorphism after Dec
    int e2_seen = 0;
    for (int t = 0; t < 10; ++t) {
        FilteredPair pr = random_filtered_pair(rng);
        FilteredMap dm = dec_map(pr.map);
        bool lhs = is_e2_iso(pr.map);
        bool rhs = is_filtered_qis(dm);
        CHECK(lhs == rhs);
        if (lhs) ++e2_seen;
    }
    (void)e2_seen;
}

TEST_CASE("duality smoke test: the path of duals matches the dual of the cone") {
    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
        GeneratorOptions o;
        o.max_dim = 3;
        o.max_deg = 2;
        ChainComplex a = random_complex(rng, o);
        ChainComplex b = random_complex(rng, o);
        ChainMap f = random_chain_map(rng, a, b, o);
        ConeData cd = classical_cone(f);
        // linear-dual in place: (C*)^n = (C_n)* with differential d_{n+1} transposed
        size_t top = std::max(a.top(), b.top()) + 1;
        auto dualize = [&](const ChainComplex& c) {
            std::vector<size_t> dims(top + 1, 0);
            for (size_t n = 0; n <= c.top(); ++n) dims[n] = c.dim(n);
            std::vector<Matrix> diffs;
            for (size_t n = 0; n < top; ++n) diffs.push_back(c.d(n + 1).transpose());
            return CochainComplex(dims, std::move(diffs));
        };
        CochainComplex da = dualize(a);
        CochainComplex db = dualize(b);
        std::vector<Matrix> comps(top + 1);
        for (size_t n = 0; n <= top; ++n) comps[n] = f.component(n).transpose();
        CochainMap fdual = cochain_map(db, da, std::move(comps));  // B* -> A*
        FilteredComplex tb = trivial_filtration(db);
        FilteredComplex ta = trivial_filtration(da);
        FilteredMap fm = filtered_map(tb, ta, fdual.comp);
        // path(f*, f*) has the underlying complex of the dualized cone in each
        // degree once, plus one extra source copy: use the fiber path instead
        FiberData fd = fiber_sequence(fm);
        CHECK(fd.graded_les_exact);
        for (size_t n = 0; n <= top; ++n) {
            size_t cone_h = cd.cone.homology().dim(n);
            size_t path_h = fd.path.path.complex().cohomology_dim(n);
            CHECK(cone_h == path_h);
        }
    }
}

#include "descenso/filtered.hpp"

#include "descenso/generators.hpp"

#include <algorithm>

namespace descenso {

CochainComplex::CochainComplex() : dims_{0} {}

CochainComplex::CochainComplex(std::vector<size_t> dims, std::vector<Matrix> diffs, bool validate)
    : dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty()) dims_.push_back(0);
    if (diffs_.size() + 1 != dims_.size())
        throw ValidationError("CochainComplex: need one differential per step");
    for (size_t n = 0; n + 1 < dims_.size(); ++n)
        if (diffs_[n].rows() != dims_[n + 1] || diffs_[n].cols() != dims_[n])
            throw ValidationError("CochainComplex: differential shape mismatch");
    if (validate)
        for (size_t n = 0; n + 2 < dims_.size(); ++n)
            if (!(diffs_[n + 1] * diffs_[n]).is_zero())
                throw ValidationError("CochainComplex: d o d != 0");
}

Matrix CochainComplex::d(size_t n) const {
    if (n + 1 < dims_.size()) return diffs_[n];
    return Matrix(dim(n + 1), dim(n));
}

bool CochainComplex::operator==(const CochainComplex& o) const {
    return dims_ == o.dims_ && diffs_ == o.diffs_;
}

Subspace CochainComplex::cocycles(size_t n) const {
    if (n >= dims_.size()) return Subspace::zero(0);
    return decompose(d(n)).kernel;
}

Subspace CochainComplex::coboundaries(size_t n) const {
    if (n == 0 || n >= dims_.size()) return Subspace::zero(dim(n));
    return decompose(d(n - 1)).image;
}

size_t CochainComplex::cohomology_dim(size_t n) const {
    if (n >= dims_.size()) return 0;
    return cocycles(n).dim() - coboundaries(n).dim();
}

Matrix CochainMap::component(size_t n) const {
    if (n < comp.size()) return comp[n];
    return Matrix(tgt.dim(n), src.dim(n));
}

CochainMap cochain_map(CochainComplex src, CochainComplex tgt, std::vector<Matrix> comps,
                       bool validate) {
    size_t degs = std::max(src.top(), tgt.top()) + 1;
    comps.resize(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix& m = comps[n];
        if (m.rows() == 0 && m.cols() == 0) m = Matrix(tgt.dim(n), src.dim(n));
        if (m.rows() != tgt.dim(n) || m.cols() != src.dim(n))
            throw ValidationError("CochainMap: component shape mismatch");
    }
    CochainMap f{std::move(src), std::move(tgt), std::move(comps)};
    if (validate)
        for (size_t n = 0; n + 1 < degs; ++n)
            if (!(f.tgt.d(n) * f.comp[n] == f.comp[n + 1] * f.src.d(n)))
                throw ValidationError("CochainMap: does not commute with differentials");
    return f;
}

CochainMap cochain_identity(const CochainComplex& c) {
    std::vector<Matrix> comps;
    for (size_t n = 0; n <= c.top(); ++n) comps.push_back(Matrix::identity(c.dim(n)));
    return cochain_map(c, c, std::move(comps), false);
}

FilteredComplex::FilteredComplex(CochainComplex a, int lo, int hi,
                                 std::vector<std::vector<Subspace>> filt, bool validate)
    : a_(std::move(a)), lo_(lo), hi_(hi), filt_(std::move(filt)) {
    if (lo_ > hi_) throw std::invalid_argument("FilteredComplex: bad filtration range");
    if (filt_.size() != a_.top() + 1) throw ValidationError("FilteredComplex: level count mismatch");
    for (size_t n = 0; n <= a_.top(); ++n) {
        if (filt_[n].size() != static_cast<size_t>(hi_ - lo_ + 1))
            throw ValidationError("FilteredComplex: filtration length mismatch");
        for (const auto& s : filt_[n])
            if (s.ambient_dim != a_.dim(n))
                throw ValidationError("FilteredComplex: filtration ambient mismatch");
    }
    if (!validate) return;
    for (size_t n = 0; n <= a_.top(); ++n) {
        if (filt_[n][0].dim() != a_.dim(n))
            throw ValidationError("FilteredComplex: F^lo must be everything");
        for (int p = lo_; p < hi_; ++p)
            if (!subspace_leq(filtration(p + 1, n), filtration(p, n)))
                throw ValidationError("FilteredComplex: filtration is not decreasing");
        for (int p = lo_; p <= hi_; ++p) {
            const Subspace& s = filtration(p, n);
            if (n < a_.top()) {
                Subspace tgt = filtration(p, n + 1);
                for (size_t j = 0; j < s.dim(); ++j)
                    if (!subspace_contains(tgt, (a_.d(n) * s.basis.column(j)).column_vec(0)))
                        throw ValidationError("FilteredComplex: differential leaves the filtration");
            } else if (!(a_.d(n) * s.basis).is_zero() && a_.dim(n + 1) == 0) {
                // top differential is zero-shaped; nothing to check
            }
        }
    }
}

Subspace FilteredComplex::filtration(int p, size_t n) const {
    if (n > a_.top()) return Subspace::zero(0);
    if (p <= lo_) return Subspace::full(a_.dim(n));
    if (p > hi_) return Subspace::zero(a_.dim(n));
    return filt_[n][static_cast<size_t>(p - lo_)];
}

FilteredMap filtered_map(FilteredComplex src, FilteredComplex tgt, std::vector<Matrix> comps) {
    CochainMap f = cochain_map(src.complex(), tgt.complex(), std::move(comps));
    for (size_t n = 0; n <= src.complex().top(); ++n)
        for (int p = src.lo(); p <= src.hi(); ++p) {
            const Subspace& s = src.filtration(p, n);
            Subspace t = tgt.filtration(p, n);
            for (size_t j = 0; j < s.dim(); ++j)
                if (!subspace_contains(t, (f.component(n) * s.basis.column(j)).column_vec(0)))
                    throw ValidationError("filtered_map: filtration is not respected");
        }
    return FilteredMap{std::move(src), std::move(tgt), std::move(f)};
}

namespace {

Subspace z_space(const FilteredComplex& f, int p, int n, int r) {
    if (n < 0 || n > static_cast<int>(f.complex().top())) return Subspace::zero(0);
    Subspace fp = f.filtration(p, static_cast<size_t>(n));
    Subspace target = f.filtration(p + r, static_cast<size_t>(n) + 1);
    return intersect(fp, preimage(f.complex().d(static_cast<size_t>(n)), target));
}

Subspace boundary_space(const FilteredComplex& f, int p, int n, int r) {
    // Z_{r-1}^{p+1, q-1} + d Z_{r-1}^{p-r+1, q+r-2}
    Subspace part1 = z_space(f, p + 1, n, r - 1);
    Subspace lower = z_space(f, p - r + 1, n - 1, r - 1);
    Subspace part2 = Subspace::zero(f.complex().dim(static_cast<size_t>(std::max(n, 0))));
    if (n >= 1) part2 = Subspace::span(f.complex().d(static_cast<size_t>(n - 1)) * lower.basis);
    if (n < 0) return Subspace::zero(0);
    return subspace_sum(part1, part2);
}

}  // namespace

size_t SpectralPage::dim(int p, int q) const {
    auto it = terms.find({p, q});
    return it == terms.end() ? 0 : it->second.dim;
}

Matrix SpectralPage::differential(int p, int q) const {
    auto it = d.find({p, q});
    if (it != d.end()) return it->second;
    return Matrix(dim(p + static_cast<int>(r), q - static_cast<int>(r) + 1), dim(p, q));
}

size_t SpectralPage::total_dim(int n) const {
    size_t t = 0;
    for (const auto& [key, term] : terms)
        if (key.first + key.second == n) t += term.dim;
    return t;
}

SpectralPage page(const FilteredComplex& f, size_t r) {
    SpectralPage out;
    out.r = r;
    int top = static_cast<int>(f.complex().top());
    for (int p = f.lo(); p <= f.hi(); ++p)
        for (int n = 0; n <= top; ++n) {
            int q = n - p;
            Subspace z = z_space(f, p, n, static_cast<int>(r));
            Subspace b = boundary_space(f, p, n, static_cast<int>(r));
            // greedy complement of the boundary part inside Z
            Matrix acc = b.basis;
            std::vector<size_t> chosen;
            for (size_t j = 0; j < z.basis.cols(); ++j) {
                Matrix cand = Matrix::hcat(acc, z.basis.column(j));
                if (rank(cand) > acc.cols()) {
                    acc = cand;
                    chosen.push_back(j);
                }
            }
            SpectralPage::Term term;
            term.reps = z.basis.columns(chosen);
            term.dim = term.reps.cols();
            term.boundary = b.basis;
            if (term.dim > 0 || b.dim() > 0) out.terms[{p, q}] = std::move(term);
        }
    // differentials d_r : (p, q) -> (p + r, q - r + 1)
    for (auto& [key, term] : out.terms) {
        auto [p, q] = key;
        int n = p + q;
        auto tgt_it = out.terms.find({p + static_cast<int>(r), q - static_cast<int>(r) + 1});
        size_t tgt_dim = tgt_it == out.terms.end() ? 0 : tgt_it->second.dim;
        Matrix m(tgt_dim, term.dim);
        if (term.dim > 0 && n >= 0 && n <= top) {
            Matrix img = f.complex().d(static_cast<size_t>(n)) * term.reps;
            if (tgt_dim == 0) {
                // image must die in the boundary part of the target
                if (tgt_it != out.terms.end()) {
                    Matrix basis = tgt_it->second.boundary;
                    if (basis.cols() == 0) {
                        if (!img.is_zero()) throw ValidationError("page: differential misses the target");
                    } else {
                        solve_exact(basis, img);
                    }
                } else if (!img.is_zero()) {
                    throw ValidationError("page: differential misses the empty target");
                }
            } else {
                Matrix basis = Matrix::hcat(tgt_it->second.reps, tgt_it->second.boundary);
                Matrix coords = solve_exact(basis, img);
                m = coords.submatrix(0, tgt_dim, 0, term.dim);
            }
        }
        out.d[key] = std::move(m);
    }
    // d_r o d_r = 0
    for (const auto& [key, m] : out.d) {
        auto [p, q] = key;
        Matrix next = out.differential(p + static_cast<int>(r), q - static_cast<int>(r) + 1);
        if (!(next * m).is_zero()) throw ValidationError("page: d_r squared is nonzero");
    }
    return out;
}

size_t graded_cohomology_dim(const FilteredComplex& f, int p, size_t n) {
    Subspace z = f.complex().cocycles(n);
    Subspace b = f.complex().coboundaries(n);
    auto fdim = [&](int pp) {
        Subspace fp = f.filtration(pp, n);
        return intersect(z, fp).dim() - intersect(b, fp).dim();
    };
    return fdim(p) - fdim(p + 1);
}

std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& fm, size_t r) {
    SpectralPage ps = page(fm.src, r);
    SpectralPage pt = page(fm.tgt, r);
    std::map<std::pair<int, int>, Matrix> out;
    for (const auto& [key, term] : ps.terms) {
        auto [p, q] = key;
        int n = p + q;
        auto tgt_it = pt.terms.find(key);
        size_t tdim = tgt_it == pt.terms.end() ? 0 : tgt_it->second.dim;
        Matrix m(tdim, term.dim);
        if (term.dim > 0) {
            Matrix img = fm.f.component(static_cast<size_t>(n)) * term.reps;
            if (tdim == 0) {
                if (tgt_it != pt.terms.end() && tgt_it->second.boundary.cols() > 0)
                    solve_exact(tgt_it->second.boundary, img);
                else if (!img.is_zero())
                    throw ValidationError("page_map: image misses the target page");
            } else {
                Matrix basis = Matrix::hcat(tgt_it->second.reps, tgt_it->second.boundary);
                m = solve_exact(basis, img).submatrix(0, tdim, 0, term.dim);
            }
        }
        out[key] = std::move(m);
    }
    return out;
}

namespace {
bool page_iso(const FilteredMap& fm, size_t r) {
    SpectralPage ps = page(fm.src, r);
    SpectralPage pt = page(fm.tgt, r);
    auto maps = page_map(fm, r);
    std::map<std::pair<int, int>, bool> seen;
    for (const auto& [key, m] : maps) {
        size_t sdim = ps.dim(key.first, key.second);
        size_t tdim = pt.dim(key.first, key.second);
        if (sdim != tdim) return false;
        if (sdim > 0 && rank(m) != sdim) return false;
        seen[key] = true;
    }
    for (const auto& [key, term] : pt.terms)
        if (term.dim > 0 && !seen.count(key) && ps.dim(key.first, key.second) != term.dim)
            return false;
    return true;
}
}  // namespace

bool is_filtered_qis(const FilteredMap& fm) { return page_iso(fm, 1); }
bool is_e2_iso(const FilteredMap& fm) { return page_iso(fm, 2); }

PathData path_object(const FilteredMap& f, const FilteredMap& g, PathFiltration which) {
    if (!(f.tgt.complex() == g.tgt.complex()))
        throw std::invalid_argument("path_object: targets differ");
    const CochainComplex& b = f.src.complex();
    const CochainComplex& a = f.tgt.complex();
    const CochainComplex& c = g.src.complex();
    size_t top = std::max({b.top(), a.top() + 1, c.top()});
    std::vector<size_t> dims(top + 1);
    for (size_t n = 0; n <= top; ++n) dims[n] = b.dim(n) + (n >= 1 ? a.dim(n - 1) : 0) + c.dim(n);
    std::vector<Matrix> diffs;
    for (size_t n = 0; n < top; ++n) {
        Matrix d(dims[n + 1], dims[n]);
        size_t col_a = b.dim(n), col_c = col_a + (n >= 1 ? a.dim(n - 1) : 0);
        size_t row_a = b.dim(n + 1), row_c = row_a + a.dim(n);
        d.paste(b.d(n), 0, 0);
        d.paste(f.f.component(n), row_a, 0);
        if (n >= 1) d.paste(-a.d(n - 1), row_a, col_a);
        d.paste(-(g.f.component(n)), row_a, col_c);
        d.paste(c.d(n), row_c, col_c);
        diffs.push_back(std::move(d));
    }
    CochainComplex total(dims, std::move(diffs));

    int lo = std::min(f.src.lo(), std::min(f.tgt.lo(), g.src.lo())) - 1;
    int hi = std::max(f.src.hi(), std::max(f.tgt.hi(), g.src.hi())) + 1;
    std::vector<std::vector<Subspace>> filt(top + 1);
    for (size_t n = 0; n <= top; ++n)
        for (int p = lo; p <= hi; ++p) {
            Subspace gb = f.src.filtration(p, n);
            int middle = which == PathFiltration::M ? p : p - 1;
            Subspace fa = n >= 1 ? f.tgt.filtration(middle, n - 1) : Subspace::zero(0);
            Subspace hc = g.src.filtration(p, n);
            Matrix basis(dims[n], gb.dim() + fa.dim() + hc.dim());
            basis.paste(gb.basis, 0, 0);
            if (n >= 1) basis.paste(fa.basis, b.dim(n), gb.dim());
            basis.paste(hc.basis, b.dim(n) + (n >= 1 ? a.dim(n - 1) : 0), gb.dim() + fa.dim());
            filt[n].push_back(Subspace{dims[n], std::move(basis)});
        }
    FilteredComplex path(total, lo, hi, std::move(filt));

    std::vector<Matrix> prb(top + 1), prc(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        prb[n] = Matrix(b.dim(n), dims[n]);
        prb[n].paste(Matrix::identity(b.dim(n)), 0, 0);
        prc[n] = Matrix(c.dim(n), dims[n]);
        prc[n].paste(Matrix::identity(c.dim(n)), 0, dims[n] - c.dim(n));
    }
    FilteredMap to_left = filtered_map(path, f.src, std::move(prb));
    FilteredMap to_right = filtered_map(path, g.src, std::move(prc));
    return PathData{std::move(path), std::move(to_left), std::move(to_right)};
}

namespace {
FilteredComplex zero_filtered() {
    CochainComplex z({0}, {});
    return FilteredComplex(z, 0, 0, {{Subspace::zero(0)}}, false);
}

FilteredMap zero_into(const FilteredComplex& tgt) {
    FilteredComplex z = zero_filtered();
    std::vector<Matrix> comps(tgt.complex().top() + 1);
    for (size_t n = 0; n <= tgt.complex().top(); ++n) comps[n] = Matrix(tgt.complex().dim(n), 0);
    return filtered_map(z, tgt, std::move(comps));
}
}  // namespace

FilteredComplex loop_object(const FilteredComplex& x, PathFiltration which) {
    FilteredMap z1 = zero_into(x);
    FilteredMap z2 = zero_into(x);
    return path_object(z1, z2, which).path;
}

namespace {

/// Graded piece gr^p as a cochain complex with chosen representative columns.
struct GradedPiece {
    CochainComplex complex;
    std::vector<Matrix> reps;  // columns in A^n spanning a complement of F^{p+1} in F^p
};

GradedPiece graded_piece(const FilteredComplex& f, int p, size_t top_pad = 0) {
    size_t top = std::max(f.complex().top(), top_pad);
    GradedPiece out;
    out.reps.resize(top + 1);
    std::vector<size_t> dims(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        Subspace fp = f.filtration(p, n);
        Subspace fp1 = f.filtration(p + 1, n);
        Matrix acc = fp1.basis;
        std::vector<size_t> chosen;
        for (size_t j = 0; j < fp.basis.cols(); ++j) {
            Matrix cand = Matrix::hcat(acc, fp.basis.column(j));
            if (rank(cand) > acc.cols()) {
                acc = cand;
                chosen.push_back(j);
            }
        }
        out.reps[n] = fp.basis.columns(chosen);
        dims[n] = out.reps[n].cols();
    }
    std::vector<Matrix> diffs;
    for (size_t n = 0; n < top; ++n) {
        // express d(reps) modulo F^{p+1}
        Matrix img = f.complex().d(n) * out.reps[n];
        Matrix basis = Matrix::hcat(out.reps[n + 1], f.filtration(p + 1, n + 1).basis);
        Matrix coords = basis.cols() == 0 ? Matrix(0, img.cols()) : solve_exact(basis, img);
        Matrix m(dims[n + 1], dims[n]);
        for (size_t i = 0; i < dims[n + 1]; ++i)
            for (size_t j = 0; j < dims[n]; ++j) m.at(i, j) = coords.at(i, j);
        diffs.push_back(std::move(m));
    }
    out.complex = CochainComplex(dims, std::move(diffs));
    return out;
}

struct CohomologyBasis {
    std::vector<Matrix> reps;        // cocycle representatives per degree
    std::vector<Matrix> boundaries;  // coboundary bases
    std::vector<size_t> dims;
};

CohomologyBasis cohomology_basis(const CochainComplex& c, size_t top_pad = 0) {
    size_t top = std::max(c.top(), top_pad);
    CohomologyBasis out;
    out.reps.resize(top + 1);
    out.boundaries.resize(top + 1);
    out.dims.resize(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        Subspace z = c.cocycles(n);
        Subspace b = c.coboundaries(n);
        Matrix acc = b.basis;
        std::vector<size_t> chosen;
        for (size_t j = 0; j < z.basis.cols(); ++j) {
            Matrix cand = Matrix::hcat(acc, z.basis.column(j));
            if (rank(cand) > acc.cols()) {
                acc = cand;
                chosen.push_back(j);
            }
        }
        out.reps[n] = z.basis.columns(chosen);
        out.boundaries[n] = b.basis;
        out.dims[n] = out.reps[n].cols();
    }
    return out;
}

Matrix induced_on_cohomology(const CochainComplex& src, const CochainComplex& tgt,
                             const CohomologyBasis& hs, const CohomologyBasis& ht, const Matrix& f,
                             size_t n) {
    if (hs.dims[n] == 0) return Matrix(n < ht.dims.size() ? ht.dims[n] : 0, 0);
    Matrix img = f * hs.reps[n];
    Matrix basis = Matrix::hcat(ht.reps[n], ht.boundaries[n]);
    Matrix coords = solve_exact(basis, img);
    (void)src;
    (void)tgt;
    return coords.submatrix(0, ht.dims[n], 0, hs.dims[n]);
}

}  // namespace

FiberData fiber_sequence(const FilteredMap& f) {
    FilteredMap z = zero_into(f.tgt);
    PathData pd = path_object(f, z, PathFiltration::M);
    FilteredComplex loop = loop_object(f.tgt, PathFiltration::M);

    // graded long exact sequences: for each p the sequence of gr^p complexes
    // 0 -> gr(Omega Y) -> gr(path) -> gr(X) -> 0 with connecting gr(f)
    bool ok = true;
    size_t top = pd.path.complex().top();
    for (int p = pd.path.lo(); p <= pd.path.hi() && ok; ++p) {
        GradedPiece go = graded_piece(loop, p, top);
        GradedPiece gp = graded_piece(pd.path, p, top);
        GradedPiece gx = graded_piece(f.src, p, top);
        CohomologyBasis ho = cohomology_basis(go.complex, top);
        CohomologyBasis hp = cohomology_basis(gp.complex, top);
        CohomologyBasis hx = cohomology_basis(gx.complex, top);

        // inclusion Omega Y -> path: middle block
        std::vector<Matrix> inc(top + 1), prx(top + 1);
        for (size_t n = 0; n <= top; ++n) {
            // build the inclusion/projection on graded representatives
            const CochainComplex& xb = f.src.complex();
            const CochainComplex& yb = f.tgt.complex();
            size_t path_dim = pd.path.complex().dim(n);
            // loop reps live in the middle summand coordinates
            Matrix io(path_dim, go.complex.dim(n));
            for (size_t j = 0; j < go.complex.dim(n); ++j)
                for (size_t i = 0; i < (n >= 1 ? yb.dim(n - 1) : 0); ++i)
                    io.at(xb.dim(n) + i, j) = go.reps[n].at(i, j);
            // express in path graded coordinates
            Matrix basis = Matrix::hcat(gp.reps[n], pd.path.filtration(p + 1, n).basis);
            Matrix coords = basis.cols() == 0 ? Matrix(0, io.cols()) : solve_exact(basis, io);
            inc[n] = Matrix(gp.complex.dim(n), go.complex.dim(n));
            for (size_t i = 0; i < inc[n].rows(); ++i)
                for (size_t j = 0; j < inc[n].cols(); ++j) inc[n].at(i, j) = coords.at(i, j);

            // projection path -> X on graded representatives
            Matrix px = pd.to_left.f.component(n) * gp.reps[n];
            Matrix xbasis = Matrix::hcat(gx.reps[n], f.src.filtration(p + 1, n).basis);
            Matrix xcoords = xbasis.cols() == 0 ? Matrix(0, px.cols()) : solve_exact(xbasis, px);
            prx[n] = Matrix(gx.complex.dim(n), gp.complex.dim(n));
            for (size_t i = 0; i < prx[n].rows(); ++i)
                for (size_t j = 0; j < prx[n].cols(); ++j) prx[n].at(i, j) = xcoords.at(i, j);
        }
        // cohomology-level maps and exactness at each spot
        for (size_t n = 0; n <= top && ok; ++n) {
            Matrix hi_inc = induced_on_cohomology(go.complex, gp.complex, ho, hp, inc[n], n);
            Matrix hi_prx = induced_on_cohomology(gp.complex, gx.complex, hp, hx, prx[n], n);
            // connecting: H^n(gr X) -> H^{n+1}(gr Omega Y): lift to the path,
            // apply d, read off the loop part (= f of the lift)
            Matrix conn(n + 1 <= top ? ho.dims[n + 1] : 0, hx.dims[n]);
            if (n + 1 <= top && hx.dims[n] > 0 && ho.dims[n + 1] > 0) {
                // ambient representatives of the gr X classes
                Matrix amb_x = gx.reps[n] * hx.reps[n];
                // f of the lift lands in Y at degree n = the loop ambient at n+1
                Matrix amb_o = f.f.component(n) * amb_x;
                Matrix full = Matrix::hcat(go.reps[n + 1], loop.filtration(p + 1, n + 1).basis);
                Matrix coords = full.cols() == 0 ? Matrix(0, amb_o.cols()) : solve_exact(full, amb_o);
                Matrix cls(go.complex.dim(n + 1), hx.dims[n]);
                for (size_t i = 0; i < cls.rows(); ++i)
                    for (size_t j = 0; j < cls.cols(); ++j) cls.at(i, j) = coords.at(i, j);
                Matrix basis2 = Matrix::hcat(ho.reps[n + 1], ho.boundaries[n + 1]);
                Matrix c2 = basis2.cols() == 0 ? Matrix(0, cls.cols()) : solve_exact(basis2, cls);
                for (size_t i = 0; i < conn.rows(); ++i)
                    for (size_t j = 0; j < conn.cols(); ++j) conn.at(i, j) = c2.at(i, j);
            }
            // exactness at gr(path): ker(prx) = im(inc)
            if (!(hi_prx * hi_inc).is_zero()) ok = false;
            if (ok && rank(hi_inc) != hi_prx.cols() - rank(hi_prx)) ok = false;
            // exactness at gr(X): ker(conn) = im(prx)
            if (ok && !(conn * hi_prx).is_zero()) ok = false;
            if (ok && rank(hi_prx) != conn.cols() - rank(conn)) ok = false;
            // exactness at gr(Omega): ker(inc at n+1) = im(conn)
            if (ok && n + 1 <= top) {
                Matrix next_inc = induced_on_cohomology(go.complex, gp.complex, ho, hp, inc[n + 1], n + 1);
                if (!(next_inc * conn).is_zero()) ok = false;
                if (ok && rank(conn) != next_inc.cols() - rank(next_inc)) ok = false;
            }
        }
    }
    return FiberData{std::move(pd), std::move(loop), ok};
}

FilteredComplex dec(const FilteredComplex& f) {
    int top = static_cast<int>(f.complex().top());
    int lo = f.lo() - top - 1;
    int hi = f.hi();
    std::vector<std::vector<Subspace>> filt(f.complex().top() + 1);
    for (size_t n = 0; n <= f.complex().top(); ++n)
        for (int p = lo; p <= hi; ++p) {
            Subspace fp = f.filtration(p + static_cast<int>(n), n);
            Subspace nxt = f.filtration(p + static_cast<int>(n) + 1, n + 1);
            if (n == f.complex().top())
                nxt = Subspace::zero(f.complex().dim(n + 1));
            filt[n].push_back(intersect(fp, preimage(f.complex().d(n), nxt)));
        }
    return FilteredComplex(f.complex(), lo, hi, std::move(filt));
}

FilteredMap dec_map(const FilteredMap& fm) {
    std::vector<Matrix> comps;
    for (size_t n = 0; n <= fm.src.complex().top(); ++n) comps.push_back(fm.f.component(n));
    return filtered_map(dec(fm.src), dec(fm.tgt), std::move(comps));
}

namespace {

struct PieceModel {
    // vectors: (degree, jump); pairs map top index -> bottom index
    std::vector<std::pair<size_t, int>> vecs;
    std::vector<std::pair<size_t, size_t>> pairs;  // indices into vecs

    size_t degree(size_t i) const { return vecs[i].first; }
    int jump(size_t i) const { return vecs[i].second; }
};

PieceModel random_pieces(Rng& rng, const FilteredOptions& opt) {
    PieceModel pm;
    size_t n_pieces = 1 + rng.below(opt.max_pieces);
    for (size_t i = 0; i < n_pieces; ++i) {
        bool pair = rng.below(2) == 0;
        size_t deg = rng.below(opt.max_deg);
        int jump = static_cast<int>(rng.below(static_cast<uint64_t>(opt.max_jump)));
        if (pair && deg + 1 < opt.max_deg + 1) {
            int jump2 = jump + static_cast<int>(rng.below(2));  // jump or jump + 1
            pm.vecs.emplace_back(deg, jump);
            pm.vecs.emplace_back(deg + 1, jump2);
            pm.pairs.emplace_back(pm.vecs.size() - 2, pm.vecs.size() - 1);
        } else {
            pm.vecs.emplace_back(deg, jump);
        }
    }
    return pm;
}

struct BuiltFiltered {
    FilteredComplex complex;
    PieceModel model;
    std::vector<std::vector<size_t>> index;  // per degree: vector indices
    std::vector<Matrix> u;                   // basis change per degree
};

BuiltFiltered build_filtered(Rng& rng, const PieceModel& pm, const FilteredOptions& opt) {
    size_t top = opt.max_deg;
    std::vector<std::vector<size_t>> index(top + 1);
    for (size_t i = 0; i < pm.vecs.size(); ++i) index[pm.degree(i)].push_back(i);
    std::vector<size_t> dims(top + 1);
    for (size_t n = 0; n <= top; ++n) dims[n] = index[n].size();
    std::vector<Matrix> diffs;
    for (size_t n = 0; n < top; ++n) {
        Matrix d(dims[n + 1], dims[n]);
        for (auto [t, b] : pm.pairs) {
            if (pm.degree(t) != n) continue;
            size_t col = std::find(index[n].begin(), index[n].end(), t) - index[n].begin();
            size_t row = std::find(index[n + 1].begin(), index[n + 1].end(), b) - index[n + 1].begin();
            d.at(row, col) = Rational(1);
        }
        diffs.push_back(std::move(d));
    }
    CochainComplex base(dims, std::move(diffs));

    int lo = -1, hi = opt.max_jump + 1;
    std::vector<Matrix> u(top + 1);
    for (size_t n = 0; n <= top; ++n) u[n] = random_invertible(rng, dims[n], opt.max_entry);
    std::vector<Matrix> diffs2;
    for (size_t n = 0; n < top; ++n)
        diffs2.push_back(u[n + 1] * base.d(n) * (dims[n] == 0 ? Matrix(0, 0) : invert(u[n])));
    CochainComplex conj(dims, std::move(diffs2));

    std::vector<std::vector<Subspace>> filt(top + 1);
    for (size_t n = 0; n <= top; ++n)
        for (int p = lo; p <= hi; ++p) {
            std::vector<size_t> cols;
            for (size_t k = 0; k < index[n].size(); ++k)
                if (pm.jump(index[n][k]) >= p) cols.push_back(k);
            Matrix basis(dims[n], cols.size());
            for (size_t k = 0; k < cols.size(); ++k)
                basis.paste(u[n].column(cols[k]), 0, k);
            filt[n].push_back(Subspace{dims[n], std::move(basis)});
        }
    return BuiltFiltered{FilteredComplex(conj, lo, hi, std::move(filt)), pm, std::move(index),
                         std::move(u)};
}

}  // namespace

FilteredComplex random_filtered(Rng& rng, const FilteredOptions& opt) {
    PieceModel pm = random_pieces(rng, opt);
    return build_filtered(rng, pm, opt).complex;
}

FilteredPair random_filtered_pair(Rng& rng, const FilteredOptions& opt) {
    PieceModel pm1 = random_pieces(rng, opt);
    PieceModel pm2 = random_pieces(rng, opt);
    BuiltFiltered b1 = build_filtered(rng, pm1, opt);
    BuiltFiltered b2 = build_filtered(rng, pm2, opt);
    size_t top = opt.max_deg;

    // assemble a filtered map in piece coordinates, then conjugate
    auto col_of = [&](const BuiltFiltered& b, size_t vec) {
        size_t n = b.model.degree(vec);
        return static_cast<size_t>(std::find(b.index[n].begin(), b.index[n].end(), vec) -
                                   b.index[n].begin());
    };
    std::vector<Matrix> raw(top + 1);
    for (size_t n = 0; n <= top; ++n)
        raw[n] = Matrix(b2.index[n].size(), b1.index[n].size());
    auto is_pair_top = [&](const PieceModel& pm, size_t v) {
        for (auto [t, b] : pm.pairs)
            if (t == v) return std::optional<size_t>(b);
        return std::optional<size_t>();
    };
    auto is_pair_bottom = [&](const PieceModel& pm, size_t v) {
        for (auto [t, b] : pm.pairs)
            if (b == v) return true;
        return false;
    };
    for (size_t v = 0; v < pm1.vecs.size(); ++v) {
        size_t n = pm1.degree(v);
        int jump = pm1.jump(v);
        auto bottom = is_pair_top(pm1, v);
        if (!bottom && is_pair_bottom(pm1, v)) continue;  // handled with its top
        for (size_t w = 0; w < pm2.vecs.size(); ++w) {
            if (pm2.degree(w) != n) continue;
            if (pm2.jump(w) < jump) continue;
            auto wbot = is_pair_top(pm2, w);
            long coeff = rng.range(-opt.max_entry, opt.max_entry);
            if (coeff == 0) continue;
            if (!bottom) {
                // single source: image must be a cocycle with deep enough jump
                if (wbot) continue;  // pair tops are not cocycles
                raw[n].at(col_of(b2, w), col_of(b1, v)) = Rational(coeff);
            } else {
                // pair source: match pair to pair so the square commutes
                if (!wbot) {
                    // cocycle part on the top only
                    raw[n].at(col_of(b2, w), col_of(b1, v)) = Rational(coeff);
                    continue;
                }
                if (pm2.jump(*wbot) < pm1.jump(*bottom)) continue;
                raw[n].at(col_of(b2, w), col_of(b1, v)) = Rational(coeff);
                raw[n + 1].at(col_of(b2, *wbot), col_of(b1, *bottom)) = Rational(coeff);
            }
        }
    }
    std::vector<Matrix> comps(top + 1);
    for (size_t n = 0; n <= top; ++n) {
        Matrix u1inv = b1.u[n].rows() == 0 ? Matrix(0, 0) : invert(b1.u[n]);
        comps[n] = b2.u[n] * raw[n] * u1inv;
    }
    FilteredMap fm = filtered_map(b1.complex, b2.complex, std::move(comps));
    return FilteredPair{b1.complex, b2.complex, std::move(fm)};
}

}  // namespace descenso

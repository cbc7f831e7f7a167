#include "descenso/generators.hpp"
#include "descenso/sobj.hpp"

namespace descenso {

BisimpObj::BisimpObj(size_t trunc_h, size_t trunc_v, size_t degen_h, size_t degen_v,
                     std::vector<std::vector<ChainComplex>> grid,
                     std::vector<std::vector<std::vector<ChainMap>>> dh,
                     std::vector<std::vector<std::vector<ChainMap>>> dv,
                     std::vector<std::vector<std::vector<ChainMap>>> sh,
                     std::vector<std::vector<std::vector<ChainMap>>> sv, bool validate)
    : trunc_h_(trunc_h), trunc_v_(trunc_v), degen_h_(std::max<size_t>(degen_h, 1)),
      degen_v_(std::max<size_t>(degen_v, 1)), grid_(std::move(grid)), dh_(std::move(dh)),
      dv_(std::move(dv)), sh_(std::move(sh)), sv_(std::move(sv)) {
    if (grid_.size() != trunc_h_ + 1) throw ValidationError("BisimpObj: row count mismatch");
    for (auto& row : grid_)
        if (row.size() != trunc_v_ + 1) throw ValidationError("BisimpObj: column count mismatch");
    if (!validate) return;
    auto eq = [](const ChainMap& a, const ChainMap& b, const char* what) {
        if (!(a == b)) throw ValidationError(std::string("BisimpObj: ") + what);
    };
    for (size_t p = 0; p <= trunc_h_; ++p)
        for (size_t q = 0; q <= trunc_v_; ++q) {
            if (p >= 2)
                for (size_t j = 1; j <= p; ++j)
                    for (size_t i = 0; i < j; ++i)
                        eq(this->dh(p - 1, q, i).compose(this->dh(p, q, j)), this->dh(p - 1, q, j - 1).compose(this->dh(p, q, i)),
                           "horizontal face identity");
            if (q >= 2)
                for (size_t j = 1; j <= q; ++j)
                    for (size_t i = 0; i < j; ++i)
                        eq(this->dv(p, q - 1, i).compose(this->dv(p, q, j)), this->dv(p, q - 1, j - 1).compose(this->dv(p, q, i)),
                           "vertical face identity");
            if (p >= 1 && q >= 1)
                for (size_t i = 0; i <= p; ++i)
                    for (size_t j = 0; j <= q; ++j)
                        eq(this->dv(p - 1, q, j).compose(this->dh(p, q, i)), this->dh(p, q - 1, i).compose(this->dv(p, q, j)),
                           "faces do not commute");
            if (p >= 1 && q < trunc_v_)
                for (size_t i = 0; i <= p; ++i)
                    for (size_t j = 0; j <= q; ++j)
                        eq(this->sv(p - 1, q, j).compose(this->dh(p, q, i)), this->dh(p, q + 1, i).compose(this->sv(p, q, j)),
                           "horizontal face and vertical degeneracy do not commute");
            if (p < trunc_h_ && q >= 1)
                for (size_t i = 0; i <= p; ++i)
                    for (size_t j = 0; j <= q; ++j)
                        eq(this->sh(p, q - 1, i).compose(this->dv(p, q, j)), this->dv(p + 1, q, j).compose(this->sh(p, q, i)),
                           "vertical face and horizontal degeneracy do not commute");
            if (p < trunc_h_ && q < trunc_v_)
                for (size_t i = 0; i <= p; ++i)
                    for (size_t j = 0; j <= q; ++j)
                        eq(this->sv(p + 1, q, j).compose(this->sh(p, q, i)), this->sh(p, q + 1, i).compose(this->sv(p, q, j)),
                           "degeneracies do not commute");
            if (p >= 1)
                for (size_t j = 0; j + 1 <= p; ++j) {
                    eq(this->dh(p, q, j).compose(this->sh(p - 1, q, j)), ChainMap::identity(this->at(p - 1, q)),
                       "horizontal mixed identity");
                    eq(this->dh(p, q, j + 1).compose(this->sh(p - 1, q, j)), ChainMap::identity(this->at(p - 1, q)),
                       "horizontal mixed identity");
                }
            if (q >= 1)
                for (size_t j = 0; j + 1 <= q; ++j) {
                    eq(this->dv(p, q, j).compose(this->sv(p, q - 1, j)), ChainMap::identity(this->at(p, q - 1)),
                       "vertical mixed identity");
                    eq(this->dv(p, q, j + 1).compose(this->sv(p, q - 1, j)), ChainMap::identity(this->at(p, q - 1)),
                       "vertical mixed identity");
                }
        }
}

BisimpObjPtr grid_from_sset(const SSetPtr& k, const SimpObjPtr& x) {
    size_t th = k->trunc(), tv = x->trunc();
    std::vector<std::vector<ChainComplex>> grid(th + 1, std::vector<ChainComplex>(tv + 1));
    for (size_t p = 0; p <= th; ++p)
        for (size_t q = 0; q <= tv; ++q) {
            std::vector<const ChainComplex*> parts(k->size(p), &x->level(q));
            grid[p][q] = multi_direct_sum(parts);
        }
    // horizontal: reindex the K summands; vertical: apply the structure maps of X
    auto reindex = [&](size_t p, size_t q, const std::vector<int>& img, const ChainComplex& tgt,
                       size_t tgt_copies) {
        (void)tgt_copies;
        const ChainComplex& src = grid[p][q];
        size_t xd_top = x->level(q).top();
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t r = 0; r < degs; ++r) {
            Matrix m(tgt.dim(r), src.dim(r));
            size_t xd = x->level(q).dim(r);
            for (size_t s = 0; s < img.size(); ++s)
                if (xd > 0)
                    m.paste(Matrix::identity(xd), static_cast<size_t>(img[s]) * xd, s * xd);
            comps[r] = std::move(m);
        }
        (void)xd_top;
        return ChainMap(src, tgt, std::move(comps), false);
    };
    auto apply_vertical = [&](size_t p, size_t q, const ChainMap& f, const ChainComplex& tgt) {
        const ChainComplex& src = grid[p][q];
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t r = 0; r < degs; ++r) {
            Matrix m(tgt.dim(r), src.dim(r));
            size_t xs = f.source().dim(r), xt = f.target().dim(r);
            for (size_t s = 0; s < k->size(p); ++s) m.paste(f.component(r), s * xt, s * xs);
            comps[r] = std::move(m);
        }
        return ChainMap(src, tgt, std::move(comps), false);
    };
    std::vector<std::vector<std::vector<ChainMap>>> dh(th + 1), dv(th + 1), sh(th + 1), sv(th + 1);
    for (size_t p = 0; p <= th; ++p) {
        dh[p].resize(tv + 1);
        dv[p].resize(tv + 1);
        sh[p].resize(tv + 1);
        sv[p].resize(tv + 1);
        for (size_t q = 0; q <= tv; ++q) {
            if (p >= 1)
                for (size_t i = 0; i <= p; ++i) {
                    std::vector<int> img(k->size(p));
                    for (size_t s = 0; s < img.size(); ++s)
                        img[s] = k->face(p, i, static_cast<int>(s));
                    dh[p][q].push_back(reindex(p, q, img, grid[p - 1][q], k->size(p - 1)));
                }
            if (p < th)
                for (size_t i = 0; i <= p; ++i) {
                    std::vector<int> img(k->size(p));
                    for (size_t s = 0; s < img.size(); ++s)
                        img[s] = k->degen(p, i, static_cast<int>(s));
                    sh[p][q].push_back(reindex(p, q, img, grid[p + 1][q], k->size(p + 1)));
                }
            if (q >= 1)
                for (size_t j = 0; j <= q; ++j)
                    dv[p][q].push_back(apply_vertical(p, q, x->face(q, j), grid[p][q - 1]));
            if (q < tv)
                for (size_t j = 0; j <= q; ++j)
                    sv[p][q].push_back(apply_vertical(p, q, x->degen(q, j), grid[p][q + 1]));
        }
    }
    return std::make_shared<BisimpObj>(th, tv, k->nondeg_bound(), x->degen_level(), std::move(grid),
                                       std::move(dh), std::move(dv), std::move(sh), std::move(sv));
}

BisimpObjPtr grid_transpose(const BisimpObjPtr& z) {
    size_t th = z->trunc_v(), tv = z->trunc_h();
    std::vector<std::vector<ChainComplex>> grid(th + 1, std::vector<ChainComplex>(tv + 1));
    std::vector<std::vector<std::vector<ChainMap>>> dh(th + 1), dv(th + 1), sh(th + 1), sv(th + 1);
    for (size_t p = 0; p <= th; ++p) {
        dh[p].resize(tv + 1);
        dv[p].resize(tv + 1);
        sh[p].resize(tv + 1);
        sv[p].resize(tv + 1);
        for (size_t q = 0; q <= tv; ++q) {
            grid[p][q] = z->at(q, p);
            if (p >= 1)
                for (size_t i = 0; i <= p; ++i) dh[p][q].push_back(z->dv(q, p, i));
            if (q >= 1)
                for (size_t j = 0; j <= q; ++j) dv[p][q].push_back(z->dh(q, p, j));
            if (p < th)
                for (size_t i = 0; i <= p; ++i) sh[p][q].push_back(z->sv(q, p, i));
            if (q < tv)
                for (size_t j = 0; j <= q; ++j) sv[p][q].push_back(z->sh(q, p, j));
        }
    }
    return std::make_shared<BisimpObj>(th, tv, z->degen_v(), z->degen_h(), std::move(grid),
                                       std::move(dh), std::move(dv), std::move(sh), std::move(sv),
                                       false);
}

BisimpObjPtr grid_conjugate(Rng& rng, const BisimpObjPtr& z, long max_entry) {
    size_t th = z->trunc_h(), tv = z->trunc_v();
    // one basis change per grid slot and internal degree
    std::vector<std::vector<std::vector<Matrix>>> u(th + 1), uinv(th + 1);
    std::vector<std::vector<ChainComplex>> grid(th + 1, std::vector<ChainComplex>(tv + 1));
    for (size_t p = 0; p <= th; ++p) {
        u[p].resize(tv + 1);
        uinv[p].resize(tv + 1);
        for (size_t q = 0; q <= tv; ++q) {
            const ChainComplex& c = z->at(p, q);
            u[p][q].resize(c.top() + 1);
            uinv[p][q].resize(c.top() + 1);
            for (size_t r = 0; r <= c.top(); ++r) {
                u[p][q][r] = random_invertible(rng, c.dim(r), max_entry);
                uinv[p][q][r] = c.dim(r) == 0 ? Matrix(0, 0) : invert(u[p][q][r]);
            }
            std::vector<Matrix> diffs;
            for (size_t r = 1; r <= c.top(); ++r)
                diffs.push_back(u[p][q][r - 1] * c.d(r) * uinv[p][q][r]);
            grid[p][q] = ChainComplex(c.dims(), std::move(diffs), false);
        }
    }
    auto conj = [&](const ChainMap& f, size_t ps, size_t qs, size_t pt, size_t qt) {
        const ChainComplex& src = grid[ps][qs];
        const ChainComplex& tgt = grid[pt][qt];
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t r = 0; r < degs; ++r) {
            Matrix mid = f.component(r);
            Matrix left = r < u[pt][qt].size() ? u[pt][qt][r] : Matrix(mid.rows(), mid.rows());
            Matrix right = r < uinv[ps][qs].size() ? uinv[ps][qs][r] : Matrix(mid.cols(), mid.cols());
            comps[r] = left * mid * right;
        }
        return ChainMap(src, tgt, std::move(comps), false);
    };
    std::vector<std::vector<std::vector<ChainMap>>> dh(th + 1), dv(th + 1), sh(th + 1), sv(th + 1);
    for (size_t p = 0; p <= th; ++p) {
        dh[p].resize(tv + 1);
        dv[p].resize(tv + 1);
        sh[p].resize(tv + 1);
        sv[p].resize(tv + 1);
        for (size_t q = 0; q <= tv; ++q) {
            if (p >= 1)
                for (size_t i = 0; i <= p; ++i) dh[p][q].push_back(conj(z->dh(p, q, i), p, q, p - 1, q));
            if (q >= 1)
                for (size_t j = 0; j <= q; ++j) dv[p][q].push_back(conj(z->dv(p, q, j), p, q, p, q - 1));
            if (p < th)
                for (size_t i = 0; i <= p; ++i) sh[p][q].push_back(conj(z->sh(p, q, i), p, q, p + 1, q));
            if (q < tv)
                for (size_t j = 0; j <= q; ++j) sv[p][q].push_back(conj(z->sv(p, q, j), p, q, p, q + 1));
        }
    }
    return std::make_shared<BisimpObj>(th, tv, z->degen_h(), z->degen_v(), std::move(grid),
                                       std::move(dh), std::move(dv), std::move(sh), std::move(sv));
}

SimpObjPtr diagonal(const BisimpObjPtr& z) {
    size_t trunc = std::min(z->trunc_h(), z->trunc_v());
    std::vector<ChainComplex> levels;
    for (size_t n = 0; n <= trunc; ++n) levels.push_back(z->at(n, n));
    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 1; n <= trunc; ++n)
        for (size_t i = 0; i <= n; ++i)
            faces[n].push_back(z->dh(n, n - 1, i).compose(z->dv(n, n, i)));
    for (size_t n = 0; n < trunc; ++n)
        for (size_t j = 0; j <= n; ++j)
            degens[n].push_back(z->sv(n + 1, n, j).compose(z->sh(n, n, j)));
    return std::make_shared<SimpObj>(trunc, z->degen_h() + z->degen_v() - 1, std::move(levels),
                                     std::move(faces), std::move(degens));
}

IteratedSimple iterated_simple(const BisimpObjPtr& z) {
    size_t th = z->trunc_h(), tv = z->trunc_v();
    IteratedSimple out;
    // vertical columns as simplicial objects
    for (size_t p = 0; p <= th; ++p) {
        std::vector<ChainComplex> levels;
        std::vector<std::vector<ChainMap>> faces(tv + 1), degens(tv + 1);
        for (size_t q = 0; q <= tv; ++q) levels.push_back(z->at(p, q));
        for (size_t q = 1; q <= tv; ++q)
            for (size_t j = 0; j <= q; ++j) faces[q].push_back(z->dv(p, q, j));
        for (size_t q = 0; q < tv; ++q)
            for (size_t j = 0; j <= q; ++j) degens[q].push_back(z->sv(p, q, j));
        out.verticals.push_back(std::make_shared<SimpObj>(tv, z->degen_v(), std::move(levels),
                                                          std::move(faces), std::move(degens), false));
    }
    // outer object: p -> s(V_p) with structure maps s(dh_i), s(sh_i)
    std::vector<ChainComplex> levels;
    for (size_t p = 0; p <= th; ++p) levels.push_back(out.verticals[p]->simple_complex());
    std::vector<std::vector<ChainMap>> faces(th + 1), degens(th + 1);
    auto level_map = [&](size_t p_src, size_t p_tgt, bool is_face, size_t idx) {
        SimpMap m{out.verticals[p_src], out.verticals[p_tgt], {}};
        for (size_t q = 0; q <= tv; ++q)
            m.comp.push_back(is_face ? z->dh(p_src, q, idx) : z->sh(p_src, q, idx));
        return simple_map(m);
    };
    for (size_t p = 1; p <= th; ++p)
        for (size_t i = 0; i <= p; ++i) faces[p].push_back(level_map(p, p - 1, true, i));
    for (size_t p = 0; p < th; ++p)
        for (size_t i = 0; i <= p; ++i) degens[p].push_back(level_map(p, p + 1, false, i));
    out.outer = std::make_shared<SimpObj>(th, z->degen_h(), std::move(levels), std::move(faces),
                                          std::move(degens));
    out.total = out.outer->simple_complex();
    return out;
}

namespace {

/// Unnormalized total of a simplicial object, with the alternating-sum
/// simplicial differential and the (-1)^q internal twist.
struct UnnormalizedTotal {
    ChainComplex total;
    TotalBlocks blocks;
};

UnnormalizedTotal tot_unnormalized(const SimpObj& x, size_t pmax) {
    size_t top = 0;
    for (size_t p = 0; p <= pmax; ++p) top = std::max(top, p + x.level(p).top());
    TotalBlocks blocks;
    blocks.blocks.resize(top + 1);
    std::vector<size_t> dims(top + 1, 0);
    for (size_t n = 0; n <= top; ++n)
        for (size_t p = 0; p <= std::min(n, pmax); ++p) {
            size_t q = n - p;
            size_t sz = x.level(p).dim(q);
            blocks.blocks[n].push_back({p, q, dims[n], sz});
            dims[n] += sz;
        }
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= top; ++n) {
        Matrix d(dims[n - 1], dims[n]);
        for (const auto& b : blocks.blocks[n]) {
            if (b.q >= 1) {
                const auto* t = blocks.find(n - 1, b.p);
                if (t) d.paste(x.level(b.p).d(b.q), t->offset, b.offset);
            }
            if (b.p >= 1) {
                const auto* t = blocks.find(n - 1, b.p - 1);
                if (t) {
                    Matrix alt(x.level(b.p - 1).dim(b.q), x.level(b.p).dim(b.q));
                    for (size_t i = 0; i <= b.p; ++i) {
                        Matrix fi = x.face(b.p, i).component(b.q);
                        alt = i % 2 == 0 ? alt + fi : alt - fi;
                    }
                    if (b.q % 2 == 1) alt = -alt;
                    d.paste(alt, t->offset, b.offset);
                }
            }
        }
        diffs.push_back(std::move(d));
    }
    return UnnormalizedTotal{ChainComplex(dims, std::move(diffs)), std::move(blocks)};
}

}  // namespace

ChainMap aw_map(const BisimpObjPtr& z) {
    SimpObjPtr diag = diagonal(z);
    const ChainComplex& sdiag = diag->simple_complex();
    const TotalBlocks& sdiag_blocks = diag->simple_blocks();
    const Normalization& diag_norm = diag->normalization();
    IteratedSimple iter = iterated_simple(z);
    const ChainComplex& ss = iter.total;

    size_t pmax_diag = std::min(diag->trunc(), diag->degen_level() - 1);
    UnnormalizedTotal tot1 = tot_unnormalized(*diag, pmax_diag);

    // triple-graded unnormalized total of the grid
    size_t th = z->trunc_h(), tv = z->trunc_v();
    struct TBlock {
        size_t p, q, r, offset, size;
    };
    size_t top2 = 0;
    for (size_t p = 0; p <= th; ++p)
        for (size_t q = 0; q <= tv; ++q) top2 = std::max(top2, p + q + z->at(p, q).top());
    std::vector<std::vector<TBlock>> blocks2(top2 + 1);
    std::vector<size_t> dims2(top2 + 1, 0);
    for (size_t n = 0; n <= top2; ++n)
        for (size_t p = 0; p <= std::min(n, th); ++p)
            for (size_t q = 0; p + q <= n && q <= tv; ++q) {
                size_t r = n - p - q;
                if (r > z->at(p, q).top()) continue;
                size_t sz = z->at(p, q).dim(r);
                blocks2[n].push_back({p, q, r, dims2[n], sz});
                dims2[n] += sz;
            }
    auto find2 = [&](size_t n, size_t p, size_t q) -> const TBlock* {
        if (n > top2) return nullptr;
        for (const auto& b : blocks2[n])
            if (b.p == p && b.q == q) return &b;
        return nullptr;
    };
    std::vector<Matrix> diffs2;
    for (size_t n = 1; n <= top2; ++n) {
        Matrix d(dims2[n - 1], dims2[n]);
        for (const auto& b : blocks2[n]) {
            if (b.r >= 1) {
                const auto* t = find2(n - 1, b.p, b.q);
                if (t) d.paste(z->at(b.p, b.q).d(b.r), t->offset, b.offset);
            }
            if (b.q >= 1) {
                const auto* t = find2(n - 1, b.p, b.q - 1);
                if (t) {
                    Matrix alt(z->at(b.p, b.q - 1).dim(b.r), b.size);
                    for (size_t j = 0; j <= b.q; ++j) {
                        Matrix fj = z->dv(b.p, b.q, j).component(b.r);
                        alt = j % 2 == 0 ? alt + fj : alt - fj;
                    }
                    if (b.r % 2 == 1) alt = -alt;
                    d.paste(alt, t->offset, b.offset);
                }
            }
            if (b.p >= 1) {
                const auto* t = find2(n - 1, b.p - 1, b.q);
                if (t) {
                    Matrix alt(z->at(b.p - 1, b.q).dim(b.r), b.size);
                    for (size_t i = 0; i <= b.p; ++i) {
                        Matrix fi = z->dh(b.p, b.q, i).component(b.r);
                        alt = i % 2 == 0 ? alt + fi : alt - fi;
                    }
                    if ((b.q + b.r) % 2 == 1) alt = -alt;
                    d.paste(alt, t->offset, b.offset);
                }
            }
        }
        diffs2.push_back(std::move(d));
    }
    ChainComplex tot2(dims2, std::move(diffs2));

    // inclusion of the normalized total of the diagonal
    size_t degs = std::max({sdiag.top(), tot1.total.top(), tot2.top(), ss.top()}) + 1;
    std::vector<Matrix> incl(degs);
    for (size_t n = 0; n < degs; ++n) {
        incl[n] = Matrix(tot1.total.dim(n), sdiag.dim(n));
        if (n < sdiag_blocks.blocks.size())
            for (const auto& b : sdiag_blocks.blocks[n]) {
                const auto* t = tot1.blocks.find(n, b.p);
                if (t && b.size > 0) incl[n].paste(diag_norm.levels[b.p].basis[b.q], t->offset, b.offset);
            }
    }
    ChainMap incl1(sdiag, tot1.total, std::move(incl));

    // front/back face comparison on the unnormalized totals
    std::vector<Matrix> awc(degs);
    for (size_t n = 0; n < degs; ++n) {
        awc[n] = Matrix(tot2.dim(n), tot1.total.dim(n));
        if (n >= tot1.blocks.blocks.size()) continue;
        for (const auto& b : tot1.blocks.blocks[n]) {
            size_t m = b.p, r = b.q;  // diagonal level m, internal degree r
            for (size_t p = 0; p <= m; ++p) {
                size_t q = m - p;
                const auto* t = find2(n, p, q);
                if (!t || t->size == 0 || b.size == 0) continue;
                Matrix comp = Matrix::identity(z->at(m, m).dim(r));
                for (size_t step = 0; step < p; ++step)
                    comp = z->dv(m, m - step, 0).component(r) * comp;  // vertical front faces
                for (size_t l = m; l > p; --l)
                    comp = z->dh(l, q, l).component(r) * comp;  // horizontal back faces
                if ((p * q) % 2 == 1) comp = -comp;
                awc[n].paste(comp, t->offset, b.offset);
            }
        }
    }
    ChainMap aw_u(tot1.total, tot2, std::move(awc));

    // two-stage retraction onto the iterated normalized total
    const TotalBlocks& outer_blocks = iter.outer->simple_blocks();
    const Normalization& outer_norm = iter.outer->normalization();
    std::vector<Matrix> retr(degs);
    for (size_t n = 0; n < degs; ++n) {
        retr[n] = Matrix(ss.dim(n), tot2.dim(n));
        if (n > top2) continue;
        for (const auto& b : blocks2[n]) {
            // vertical retraction onto N^v at (q, r), inside T_p at degree q + r
            const Normalization& vnorm = iter.verticals[b.p]->normalization();
            if (b.q >= vnorm.levels.size()) continue;
            const LevelNormalization& vl = vnorm.levels[b.q];
            if (b.r >= vl.retraction.size()) continue;
            Matrix rv = vl.retraction[b.r];  // N^v coords <- Z_{p,q,r}
            const TotalBlocks& tp_blocks = iter.verticals[b.p]->simple_blocks();
            const auto* tp_block = tp_blocks.find(b.q + b.r, b.q);
            if (!tp_block || tp_block->size == 0) continue;
            size_t tp_dim = iter.verticals[b.p]->simple_complex().dim(b.q + b.r);
            Matrix into_tp(tp_dim, rv.rows());
            into_tp.paste(Matrix::identity(rv.rows()), tp_block->offset, 0);
            // horizontal retraction at outer level p, inner degree q + r
            const auto* out_block = outer_blocks.find(n, b.p);
            if (!out_block || out_block->size == 0) continue;
            Matrix rh = outer_norm.levels[b.p].retraction[b.q + b.r];
            Matrix piece = rh * into_tp * rv;
            retr[n].paste(piece, out_block->offset, b.offset);
        }
    }
    ChainMap retr2(tot2, ss, std::move(retr));

    return retr2.compose(aw_u).compose(incl1);
}

IteratedCylinder iterated_cylinder_iso(const CylGridInput& grid) {
    IteratedCylinder out;
    out.row_m = simplicial_cyl(grid.f_m, grid.g_m);
    out.row_p = simplicial_cyl(grid.f_p, grid.g_p);
    out.row_pp = simplicial_cyl(grid.f_pp, grid.g_pp);
    out.col_x = simplicial_cyl(grid.beta_p, grid.beta);
    out.col_y = simplicial_cyl(grid.gamma_p, grid.gamma);
    out.col_z = simplicial_cyl(grid.alpha_p, grid.alpha);

    SimpMap delta_p = cyl_map(out.row_m, out.row_pp, grid.beta_p, grid.gamma_p, grid.alpha_p);
    SimpMap delta = cyl_map(out.row_m, out.row_p, grid.beta, grid.gamma, grid.alpha);
    out.outer_rows = simplicial_cyl(delta_p, delta);

    SimpMap fhat = cyl_map(out.col_x, out.col_y, grid.f_m, grid.f_pp, grid.f_p);
    SimpMap ghat = cyl_map(out.col_x, out.col_z, grid.g_m, grid.g_pp, grid.g_p);
    out.outer_cols = simplicial_cyl(fhat, ghat);

    size_t trunc = out.outer_rows.obj->trunc();
    SimpMap theta{out.outer_rows.obj, out.outer_cols.obj, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        const ChainComplex& src = out.outer_rows.obj->level(n);
        const ChainComplex& tgt = out.outer_cols.obj->level(n);
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        auto inner_row = [&](size_t u) -> const CylData& {
            if (u == 0) return out.row_pp;
            if (u == n + 1) return out.row_p;
            return out.row_m;
        };
        auto inner_col = [&](size_t v) -> const CylData& {
            if (v == 0) return out.col_y;
            if (v == n + 1) return out.col_z;
            return out.col_x;
        };
        for (size_t t = 0; t < degs; ++t) {
            Matrix m(tgt.dim(t), src.dim(t));
            for (size_t u = 0; u <= n + 1; ++u) {
                const CylData& ic = inner_row(u);
                for (size_t v = 0; v <= n + 1; ++v) {
                    // object at (row class of u, column class of v)
                    const SimpObjPtr& piece = v == 0 ? ic.y : (v == n + 1 ? ic.z : ic.x);
                    size_t sz = piece->level(n).dim(t);
                    if (sz == 0) continue;
                    size_t src_off =
                        out.outer_rows.block_offset(n, u, t) + ic.block_offset(n, v, t);
                    const CylData& oc = inner_col(v);
                    size_t tgt_off = out.outer_cols.block_offset(n, v, t) + oc.block_offset(n, u, t);
                    m.paste(Matrix::identity(sz), tgt_off, src_off);
                }
            }
            comps[t] = std::move(m);
        }
        theta.comp.emplace_back(src, tgt, std::move(comps), false);
    }
    simp_map_validate(theta);
    out.theta = std::move(theta);

    out.psi = cyl_map(out.col_y, out.outer_rows, out.row_m.leg_y, out.row_pp.leg_y, out.row_p.leg_y);
    out.psi_p =
        cyl_map(out.row_pp, out.outer_cols, out.col_x.leg_y, out.col_y.leg_y, out.col_z.leg_y);

    if (!(simp_compose(out.theta, out.outer_rows.leg_y) == out.psi_p))
        throw ValidationError("iterated_cylinder_iso: theta I != psi'");
    if (!(simp_compose(out.theta, out.psi) == out.outer_cols.leg_y))
        throw ValidationError("iterated_cylinder_iso: theta psi != I");
    return out;
}

}  // namespace descenso

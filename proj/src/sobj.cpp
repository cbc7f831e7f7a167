#include "descenso/sobj.hpp"

#include <algorithm>

namespace descenso {


struct SimpObj::Cache {
    std::once_flag norm_flag;
    std::optional<Normalization> norm;
    std::once_flag simple_flag;
    std::optional<ChainComplex> simple;
    std::optional<TotalBlocks> blocks;
};

SimpObj::SimpObj(size_t trunc, size_t degen_level, std::vector<ChainComplex> levels,
                 std::vector<std::vector<ChainMap>> faces, std::vector<std::vector<ChainMap>> degens,
                 bool validate)
    : trunc_(trunc), degen_level_(std::max<size_t>(degen_level, 1)), levels_(std::move(levels)),
      faces_(std::move(faces)), degens_(std::move(degens)), cache_(std::make_shared<Cache>()) {
    if (levels_.size() != trunc_ + 1) throw ValidationError("SimpObj: level count mismatch");
    if (faces_.size() != trunc_ + 1 || degens_.size() != trunc_ + 1)
        throw ValidationError("SimpObj: operator table mismatch");
    for (size_t n = 0; n <= trunc_; ++n) {
        if (n >= 1 && faces_[n].size() != n + 1) throw ValidationError("SimpObj: face arity");
        if (n < trunc_ && degens_[n].size() != n + 1) throw ValidationError("SimpObj: degeneracy arity");
    }
    if (validate) validate_identities();
}

void SimpObj::validate_identities() const {
    auto eq = [](const ChainMap& a, const ChainMap& b, const char* what) {
        if (!(a == b)) throw ValidationError(std::string("SimpObj: ") + what);
    };
    for (size_t n = 0; n <= trunc_; ++n) {
        if (n >= 2)
            for (size_t j = 1; j <= n; ++j)
                for (size_t i = 0; i < j; ++i)
                    eq(face(n - 1, i).compose(face(n, j)), face(n - 1, j - 1).compose(face(n, i)),
                       "face identity fails");
        if (n + 2 <= trunc_)
            for (size_t j = 0; j <= n; ++j)
                for (size_t i = 0; i <= j; ++i)
                    eq(degen(n + 1, i).compose(degen(n, j)), degen(n + 1, j + 1).compose(degen(n, i)),
                       "degeneracy identity fails");
        if (n < trunc_)
            for (size_t j = 0; j <= n; ++j)
                for (size_t i = 0; i <= n + 1; ++i) {
                    ChainMap lhs = face(n + 1, i).compose(degen(n, j));
                    if (i == j || i == j + 1)
                        eq(lhs, ChainMap::identity(level(n)), "mixed identity fails");
                    else if (i < j)
                        eq(lhs, degen(n - 1, j - 1).compose(face(n, i)), "mixed identity fails");
                    else if (n >= 1)
                        eq(lhs, degen(n - 1, j).compose(face(n, i - 1)), "mixed identity fails");
                }
    }
}

const Normalization& SimpObj::normalization() const {
    std::call_once(cache_->norm_flag, [this] {
        Normalization norm;
        norm.levels.resize(trunc_ + 1);
        size_t honest = std::min(trunc_, degen_level_);  // verify vanishing at degen_level_
        for (size_t p = 0; p <= trunc_; ++p) {
            const ChainComplex& x = level(p);
            LevelNormalization ln;
            ln.basis.resize(x.top() + 1);
            ln.retraction.resize(x.top() + 1);
            std::vector<size_t> ndims(x.top() + 1);
            if (p == 0) {
                for (size_t q = 0; q <= x.top(); ++q) {
                    ln.basis[q] = Matrix::identity(x.dim(q));
                    ln.retraction[q] = Matrix::identity(x.dim(q));
                    ndims[q] = x.dim(q);
                }
                ln.complex = x;
            } else if (p > honest) {
                for (size_t q = 0; q <= x.top(); ++q) {
                    ln.basis[q] = Matrix(x.dim(q), 0);
                    ln.retraction[q] = Matrix(0, x.dim(q));
                    ndims[q] = 0;
                }
                ln.complex = ChainComplex(std::vector<size_t>(x.top() + 1, 0),
                                          std::vector<Matrix>(x.top(), Matrix(0, 0)), false);
            } else {
                for (size_t q = 0; q <= x.top(); ++q) {
                    // kernel of the stacked faces d_1..d_p
                    Matrix stacked(0, x.dim(q));
                    for (size_t i = 1; i <= p; ++i)
                        stacked = Matrix::vcat(stacked, face(p, i).component(q));
                    Matrix kernel = decompose(stacked).kernel.basis;
                    // degenerate part: spans of all degeneracy images
                    Matrix degen_cols(x.dim(q), 0);
                    for (size_t j = 0; j + 1 <= p; ++j)
                        degen_cols = Matrix::hcat(degen_cols, degen(p - 1, j).component(q));
                    Matrix dbasis = Subspace::span(degen_cols).basis;
                    if (kernel.cols() + dbasis.cols() != x.dim(q))
                        throw ValidationError("SimpObj: Moore kernel does not complement degenerates");
                    Matrix full = Matrix::hcat(kernel, dbasis);
                    Matrix retr = full.cols() == 0 ? Matrix(0, x.dim(q))
                                                   : invert(full).submatrix(0, kernel.cols(), 0, x.dim(q));
                    ln.basis[q] = std::move(kernel);
                    ln.retraction[q] = std::move(retr);
                    ndims[q] = ln.basis[q].cols();
                }
                if (p == degen_level_) {
                    for (size_t q = 0; q <= x.top(); ++q)
                        if (ndims[q] != 0)
                            throw ValidationError("SimpObj: certified degeneracy level is wrong");
                }
                // induced internal differential on the normalized part
                std::vector<Matrix> diffs;
                for (size_t q = 1; q <= x.top(); ++q) {
                    Matrix img = x.d(q) * ln.basis[q];
                    Matrix coords = ln.retraction[q - 1] * img;
                    if (ln.basis[q - 1] * coords != img)
                        throw ValidationError("SimpObj: Moore part not a subcomplex");
                    diffs.push_back(std::move(coords));
                }
                ln.complex = ChainComplex(ndims, std::move(diffs), false);
            }
            norm.levels[p] = std::move(ln);
        }
        norm.d0.resize(trunc_ + 1);
        for (size_t p = 1; p <= trunc_; ++p) {
            const LevelNormalization& hi = norm.levels[p];
            const LevelNormalization& lo = norm.levels[p - 1];
            std::vector<Matrix> comps(std::max(hi.complex.top(), lo.complex.top()) + 1);
            for (size_t q = 0; q < comps.size(); ++q) {
                Matrix img = face(p, 0).component(q) * (q < hi.basis.size() ? hi.basis[q]
                                                                            : Matrix(level(p).dim(q), 0));
                Matrix coords = (q < lo.retraction.size() ? lo.retraction[q]
                                                          : Matrix(0, level(p - 1).dim(q))) *
                                img;
                if ((q < lo.basis.size() ? lo.basis[q] : Matrix(level(p - 1).dim(q), 0)) * coords != img)
                    throw ValidationError("SimpObj: residual differential leaves the Moore part");
                comps[q] = std::move(coords);
            }
            norm.d0[p] = ChainMap(hi.complex, lo.complex, std::move(comps), false);
        }
        cache_->norm = std::move(norm);
    });
    return *cache_->norm;
}

const ChainComplex& SimpObj::simple_complex() const {
    std::call_once(cache_->simple_flag, [this] {
        if (trunc_ + 1 < degen_level_)
            throw TruncationError("simple: truncation below the certified degeneracy level");
        const Normalization& norm = normalization();
        size_t pmax = std::min(trunc_, degen_level_ - 1);
        size_t top = 0;
        for (size_t p = 0; p <= pmax; ++p) top = std::max(top, p + norm.levels[p].complex.top());
        TotalBlocks blocks;
        blocks.blocks.resize(top + 1);
        std::vector<size_t> dims(top + 1, 0);
        for (size_t n = 0; n <= top; ++n) {
            for (size_t p = 0; p <= std::min(n, pmax); ++p) {
                size_t q = n - p;
                size_t sz = norm.levels[p].complex.dim(q);
                blocks.blocks[n].push_back({p, q, dims[n], sz});
                dims[n] += sz;
            }
        }
        std::vector<Matrix> diffs;
        for (size_t n = 1; n <= top; ++n) {
            Matrix d(dims[n - 1], dims[n]);
            for (const auto& b : blocks.blocks[n]) {
                // internal differential stays at simplicial level p
                if (b.q >= 1) {
                    const auto* t = blocks.find(n - 1, b.p);
                    if (t) d.paste(norm.levels[b.p].complex.d(b.q), t->offset, b.offset);
                }
                // residual simplicial differential with the (-1)^q twist
                if (b.p >= 1) {
                    const auto* t = blocks.find(n - 1, b.p - 1);
                    if (t) {
                        Matrix m = norm.d0[b.p].component(b.q);
                        if (b.q % 2 == 1) m = -m;
                        d.paste(m, t->offset, b.offset);
                    }
                }
            }
            diffs.push_back(std::move(d));
        }
        cache_->simple = ChainComplex(dims, std::move(diffs));
        cache_->blocks = std::move(blocks);
    });
    return *cache_->simple;
}

const TotalBlocks& SimpObj::simple_blocks() const {
    simple_complex();
    return *cache_->blocks;
}

const TotalBlocks::Block* TotalBlocks::find(size_t n, size_t p) const {
    if (n >= blocks.size()) return nullptr;
    for (const auto& b : blocks[n])
        if (b.p == p) return &b;
    return nullptr;
}

bool SimpMap::operator==(const SimpMap& o) const {
    if (comp.size() != o.comp.size()) return false;
    for (size_t n = 0; n < comp.size(); ++n)
        if (!(comp[n] == o.comp[n])) return false;
    return true;
}

SimpMap simp_identity(const SimpObjPtr& x) {
    SimpMap m{x, x, {}};
    for (size_t n = 0; n <= x->trunc(); ++n) m.comp.push_back(ChainMap::identity(x->level(n)));
    return m;
}

SimpMap simp_compose(const SimpMap& outer, const SimpMap& inner) {
    SimpMap m{inner.src, outer.tgt, {}};
    size_t levels = std::min(outer.comp.size(), inner.comp.size());
    for (size_t n = 0; n < levels; ++n) m.comp.push_back(outer.comp[n].compose(inner.comp[n]));
    return m;
}

SimpMap simp_sum(const SimpMap& f, const SimpMap& g) {
    SimpMap m{f.src, f.tgt, {}};
    for (size_t n = 0; n < f.comp.size(); ++n) m.comp.push_back(f.comp[n] + g.comp[n]);
    return m;
}

void simp_map_validate(const SimpMap& m) {
    size_t levels = m.comp.size();
    if (levels == 0) throw ValidationError("SimpMap: empty");
    for (size_t n = 0; n < levels; ++n) {
        if (!(m.comp[n].source() == m.src->level(n)) || !(m.comp[n].target() == m.tgt->level(n)))
            throw ValidationError("SimpMap: level endpoints mismatch");
    }
    for (size_t n = 1; n < levels; ++n)
        for (size_t i = 0; i <= n; ++i)
            if (!(m.tgt->face(n, i).compose(m.comp[n]) == m.comp[n - 1].compose(m.src->face(n, i))))
                throw ValidationError("SimpMap: does not commute with faces");
    for (size_t n = 0; n + 1 < levels; ++n)
        for (size_t j = 0; j <= n; ++j)
            if (!(m.tgt->degen(n, j).compose(m.comp[n]) == m.comp[n + 1].compose(m.src->degen(n, j))))
                throw ValidationError("SimpMap: does not commute with degeneracies");
}

SimpObjPtr constant_obj(const ChainComplex& a, size_t trunc) {
    std::vector<ChainComplex> levels(trunc + 1, a);
    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    ChainMap id = ChainMap::identity(a);
    for (size_t n = 1; n <= trunc; ++n) faces[n].assign(n + 1, id);
    for (size_t n = 0; n < trunc; ++n) degens[n].assign(n + 1, id);
    return std::make_shared<SimpObj>(trunc, 1, std::move(levels), std::move(faces), std::move(degens),
                                     false);
}

SimpObjPtr zero_obj(size_t trunc) { return constant_obj(ChainComplex::zero(), trunc); }

SimpMap constant_map(const ChainMap& f, size_t trunc) {
    SimpMap m{constant_obj(f.source(), trunc), constant_obj(f.target(), trunc), {}};
    m.comp.assign(trunc + 1, f);
    return m;
}

SimpObjPtr upsilon(const SimpObjPtr& x) {
    std::vector<ChainComplex> levels;
    for (size_t n = 0; n <= x->trunc(); ++n) levels.push_back(x->level(n));
    std::vector<std::vector<ChainMap>> faces(x->trunc() + 1), degens(x->trunc() + 1);
    for (size_t n = 1; n <= x->trunc(); ++n)
        for (size_t i = 0; i <= n; ++i) faces[n].push_back(x->face(n, n - i));
    for (size_t n = 0; n + 1 <= x->trunc(); ++n)
        for (size_t j = 0; j <= n; ++j) degens[n].push_back(x->degen(n, n - j));
    return std::make_shared<SimpObj>(x->trunc(), x->degen_level(), std::move(levels), std::move(faces),
                                     std::move(degens), false);
}

SimpMap upsilon_map(const SimpMap& f) {
    SimpMap m{upsilon(f.src), upsilon(f.tgt), f.comp};
    return m;
}

SimpSumData simp_direct_sum(const SimpObjPtr& x, const SimpObjPtr& y) {
    size_t trunc = std::min(x->trunc(), y->trunc());
    std::vector<ChainComplex> levels;
    std::vector<SumData> sums;
    for (size_t n = 0; n <= trunc; ++n) {
        sums.push_back(direct_sum(x->level(n), y->level(n)));
        levels.push_back(sums.back().sum);
    }
    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 1; n <= trunc; ++n)
        for (size_t i = 0; i <= n; ++i)
            faces[n].push_back(direct_sum_map(x->face(n, i), y->face(n, i), sums[n], sums[n - 1]));
    for (size_t n = 0; n < trunc; ++n)
        for (size_t j = 0; j <= n; ++j)
            degens[n].push_back(direct_sum_map(x->degen(n, j), y->degen(n, j), sums[n], sums[n + 1]));
    auto obj = std::make_shared<SimpObj>(trunc, std::max(x->degen_level(), y->degen_level()),
                                         std::move(levels), std::move(faces), std::move(degens), false);
    SimpMap il{x, obj, {}}, ir{y, obj, {}}, pl{obj, x, {}}, pr{obj, y, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        il.comp.push_back(sums[n].in1);
        ir.comp.push_back(sums[n].in2);
        pl.comp.push_back(sums[n].pr1);
        pr.comp.push_back(sums[n].pr2);
    }
    return SimpSumData{obj, std::move(il), std::move(ir), std::move(pl), std::move(pr)};
}

size_t BoxData::offset(size_t n, int s, size_t q) const {
    return static_cast<size_t>(s) * factor->level(n).dim(q);
}

BoxData boxtimes(const SSetPtr& k, const SimpObjPtr& x) {
    size_t trunc = std::min(k->trunc(), x->trunc());
    std::vector<ChainComplex> levels;
    for (size_t n = 0; n <= trunc; ++n) {
        std::vector<const ChainComplex*> parts(k->size(n), &x->level(n));
        levels.push_back(multi_direct_sum(parts));
    }
    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    auto block_map = [&](size_t n_src, size_t n_tgt, const std::vector<int>& simplex_image,
                         const ChainMap& component) {
        const ChainComplex& src = levels[n_src];
        const ChainComplex& tgt = levels[n_tgt];
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t q = 0; q < degs; ++q) {
            Matrix m(tgt.dim(q), src.dim(q));
            size_t xs = x->level(n_src).dim(q), xt = x->level(n_tgt).dim(q);
            for (size_t s = 0; s < simplex_image.size(); ++s)
                m.paste(component.component(q), static_cast<size_t>(simplex_image[s]) * xt, s * xs);
            comps[q] = std::move(m);
        }
        return ChainMap(src, tgt, std::move(comps), false);
    };
    for (size_t n = 1; n <= trunc; ++n)
        for (size_t i = 0; i <= n; ++i) {
            std::vector<int> img(k->size(n));
            for (size_t s = 0; s < k->size(n); ++s) img[s] = k->face(n, i, static_cast<int>(s));
            faces[n].push_back(block_map(n, n - 1, img, x->face(n, i)));
        }
    for (size_t n = 0; n < trunc; ++n)
        for (size_t j = 0; j <= n; ++j) {
            std::vector<int> img(k->size(n));
            for (size_t s = 0; s < k->size(n); ++s) img[s] = k->degen(n, j, static_cast<int>(s));
            degens[n].push_back(block_map(n, n + 1, img, x->degen(n, j)));
        }
    size_t degen_level = k->nondeg_bound() + x->degen_level() - 1;
    auto obj = std::make_shared<SimpObj>(trunc, degen_level, std::move(levels), std::move(faces),
                                         std::move(degens));
    return BoxData{obj, k, x};
}

SimpMap boxtimes_map(const BoxData& src, const BoxData& tgt, const SSetMap& phi, const SimpMap& g) {
    size_t trunc = std::min(src.obj->trunc(), tgt.obj->trunc());
    SimpMap m{src.obj, tgt.obj, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        const ChainComplex& sc = src.obj->level(n);
        const ChainComplex& tc = tgt.obj->level(n);
        size_t degs = std::max(sc.top(), tc.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t q = 0; q < degs; ++q) {
            Matrix mat(tc.dim(q), sc.dim(q));
            for (size_t s = 0; s < src.shape->size(n); ++s)
                mat.paste(g.comp[n].component(q), tgt.offset(n, phi.apply(n, static_cast<int>(s)), q),
                          src.offset(n, static_cast<int>(s), q));
            comps[q] = std::move(mat);
        }
        m.comp.emplace_back(sc, tc, std::move(comps), false);
    }
    simp_map_validate(m);
    return m;
}

size_t TensorData::offset(size_t n, int s, size_t q) const {
    int idx = summand_of.at(n).at(s);
    if (idx < 0) throw std::logic_error("TensorData: basepoint summand has no offset");
    return static_cast<size_t>(idx) * coeff.dim(q);
}

TensorData tensor_pointed(const SSetPtr& k, const ChainComplex& a, size_t trunc) {
    if (!k->pointed()) throw std::invalid_argument("tensor_pointed: shape must be pointed");
    if (trunc > k->trunc()) throw TruncationError("tensor_pointed: shape truncation too small");
    TensorData td;
    td.shape = k;
    td.coeff = a;
    td.summand_of.resize(trunc + 1);
    td.simplex_of.resize(trunc + 1);
    for (size_t n = 0; n <= trunc; ++n) {
        int base = k->base_at(n);
        td.summand_of[n].assign(k->size(n), -1);
        for (size_t s = 0; s < k->size(n); ++s) {
            if (static_cast<int>(s) == base) continue;
            td.summand_of[n][s] = static_cast<int>(td.simplex_of[n].size());
            td.simplex_of[n].push_back(static_cast<int>(s));
        }
    }
    std::vector<ChainComplex> levels;
    for (size_t n = 0; n <= trunc; ++n) {
        std::vector<const ChainComplex*> parts(td.simplex_of[n].size(), &a);
        levels.push_back(multi_direct_sum(parts));
    }
    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    auto block_map = [&](size_t n_src, size_t n_tgt, size_t which, bool is_face, size_t idx) {
        const ChainComplex& src = levels[n_src];
        const ChainComplex& tgt = levels[n_tgt];
        size_t degs = std::max(src.top(), tgt.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t q = 0; q < degs; ++q) {
            Matrix m(tgt.dim(q), src.dim(q));
            for (size_t c = 0; c < td.simplex_of[n_src].size(); ++c) {
                int s = td.simplex_of[n_src][c];
                int t = is_face ? k->face(which, idx, s) : k->degen(which, idx, s);
                int tcol = td.summand_of[n_tgt][t];
                if (tcol < 0) continue;  // lands on the basepoint summand: dropped
                m.paste(Matrix::identity(a.dim(q)), static_cast<size_t>(tcol) * a.dim(q),
                        c * a.dim(q));
            }
            comps[q] = std::move(m);
        }
        return ChainMap(src, tgt, std::move(comps), false);
    };
    for (size_t n = 1; n <= trunc; ++n)
        for (size_t i = 0; i <= n; ++i) faces[n].push_back(block_map(n, n - 1, n, true, i));
    for (size_t n = 0; n < trunc; ++n)
        for (size_t j = 0; j <= n; ++j) degens[n].push_back(block_map(n, n + 1, n, false, j));
    td.obj = std::make_shared<SimpObj>(trunc, k->nondeg_bound(), std::move(levels), std::move(faces),
                                       std::move(degens));
    return td;
}

SimpMap tensor_map(const TensorData& src, const TensorData& tgt, const SSetMap& phi) {
    if (!(src.coeff == tgt.coeff)) throw std::invalid_argument("tensor_map: coefficient mismatch");
    size_t trunc = std::min(src.obj->trunc(), tgt.obj->trunc());
    SimpMap m{src.obj, tgt.obj, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        const ChainComplex& sc = src.obj->level(n);
        const ChainComplex& tc = tgt.obj->level(n);
        size_t degs = std::max(sc.top(), tc.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t q = 0; q < degs; ++q) {
            Matrix mat(tc.dim(q), sc.dim(q));
            for (size_t c = 0; c < src.simplex_of[n].size(); ++c) {
                int t = phi.apply(n, src.simplex_of[n][c]);
                int tcol = tgt.summand_of[n][t];
                if (tcol < 0) continue;
                mat.paste(Matrix::identity(src.coeff.dim(q)),
                          static_cast<size_t>(tcol) * src.coeff.dim(q), c * src.coeff.dim(q));
            }
            comps[q] = std::move(mat);
        }
        m.comp.emplace_back(sc, tc, std::move(comps), false);
    }
    simp_map_validate(m);
    return m;
}

size_t CylData::block_offset(size_t n, size_t block, size_t q) const {
    size_t off = 0;
    if (block == 0) return off;
    off += y->level(n).dim(q);
    if (block <= n) return off + (block - 1) * x->level(n).dim(q);
    return off + n * x->level(n).dim(q);
}

CylData simplicial_cyl(const SimpMap& f, const SimpMap& g) {
    if (f.src.get() != g.src.get()) throw std::invalid_argument("simplicial_cyl: sources differ");
    SimpObjPtr x = f.src, y = f.tgt, z = g.tgt;
    size_t trunc = std::min({x->trunc(), y->trunc(), z->trunc(), f.comp.size() - 1, g.comp.size() - 1});
    std::vector<ChainComplex> levels;
    for (size_t n = 0; n <= trunc; ++n) {
        std::vector<const ChainComplex*> parts;
        parts.push_back(&y->level(n));
        for (size_t k = 1; k <= n; ++k) parts.push_back(&x->level(n));
        parts.push_back(&z->level(n));
        levels.push_back(multi_direct_sum(parts));
    }
    CylData cd;
    cd.x = x;
    cd.y = y;
    cd.z = z;

    auto offset = [&](size_t n, size_t block, size_t q) {
        size_t off = 0;
        if (block == 0) return off;
        off += y->level(n).dim(q);
        if (block <= n) return off + (block - 1) * x->level(n).dim(q);
        return off + n * x->level(n).dim(q);
    };

    std::vector<std::vector<ChainMap>> faces(trunc + 1), degens(trunc + 1);
    for (size_t n = 1; n <= trunc; ++n) {
        for (size_t i = 0; i <= n; ++i) {
            const ChainComplex& src = levels[n];
            const ChainComplex& tgt = levels[n - 1];
            size_t degs = std::max(src.top(), tgt.top()) + 1;
            std::vector<Matrix> comps(degs);
            for (size_t q = 0; q < degs; ++q) {
                Matrix m(tgt.dim(q), src.dim(q));
                // Y and Z ends map within themselves
                m.paste(y->face(n, i).component(q), offset(n - 1, 0, q), offset(n, 0, q));
                m.paste(z->face(n, i).component(q), offset(n - 1, n, q), offset(n, n + 1, q));
                for (size_t k = 1; k <= n; ++k) {
                    size_t kp = i <= n - k ? k : k - 1;
                    Matrix comp = x->face(n, i).component(q);
                    if (kp == n) {  // crosses into the Y end through f
                        comp = f.comp[n - 1].component(q) * comp;
                        m.paste(comp, offset(n - 1, 0, q), offset(n, k, q));
                    } else if (kp == 0) {  // crosses into the Z end through g
                        comp = g.comp[n - 1].component(q) * comp;
                        m.paste(comp, offset(n - 1, n, q), offset(n, k, q));
                    } else {
                        m.paste(comp, offset(n - 1, kp, q), offset(n, k, q));
                    }
                }
                comps[q] = std::move(m);
            }
            faces[n].emplace_back(src, tgt, std::move(comps), false);
        }
    }
    for (size_t n = 0; n < trunc; ++n) {
        for (size_t j = 0; j <= n; ++j) {
            const ChainComplex& src = levels[n];
            const ChainComplex& tgt = levels[n + 1];
            size_t degs = std::max(src.top(), tgt.top()) + 1;
            std::vector<Matrix> comps(degs);
            for (size_t q = 0; q < degs; ++q) {
                Matrix m(tgt.dim(q), src.dim(q));
                m.paste(y->degen(n, j).component(q), offset(n + 1, 0, q), offset(n, 0, q));
                m.paste(z->degen(n, j).component(q), offset(n + 1, n + 2, q), offset(n, n + 1, q));
                for (size_t k = 1; k <= n; ++k) {
                    size_t kp = j <= n - k ? k : k + 1;
                    m.paste(x->degen(n, j).component(q), offset(n + 1, kp, q), offset(n, k, q));
                }
                comps[q] = std::move(m);
            }
            degens[n].emplace_back(src, tgt, std::move(comps), false);
        }
    }
    size_t degen_level =
        std::max({y->degen_level(), z->degen_level(), x->degen_level() + 1});
    cd.obj = std::make_shared<SimpObj>(trunc, degen_level, std::move(levels), std::move(faces),
                                       std::move(degens));

    SimpMap ly{y, cd.obj, {}}, lz{z, cd.obj, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        const ChainComplex& tgt = cd.obj->level(n);
        size_t degs = tgt.top() + 1;
        std::vector<Matrix> my(degs), mz(degs);
        for (size_t q = 0; q < degs; ++q) {
            my[q] = Matrix(tgt.dim(q), y->level(n).dim(q));
            my[q].paste(Matrix::identity(y->level(n).dim(q)), cd.block_offset(n, 0, q), 0);
            mz[q] = Matrix(tgt.dim(q), z->level(n).dim(q));
            mz[q].paste(Matrix::identity(z->level(n).dim(q)), cd.block_offset(n, n + 1, q), 0);
        }
        ly.comp.emplace_back(y->level(n), tgt, std::move(my), false);
        lz.comp.emplace_back(z->level(n), tgt, std::move(mz), false);
    }
    simp_map_validate(ly);
    simp_map_validate(lz);
    cd.leg_y = std::move(ly);
    cd.leg_z = std::move(lz);
    return cd;
}

SimpMap cyl_map(const CylData& src, const CylData& tgt, const SimpMap& phi_x, const SimpMap& phi_y,
                const SimpMap& phi_z) {
    size_t trunc = std::min(src.obj->trunc(), tgt.obj->trunc());
    SimpMap m{src.obj, tgt.obj, {}};
    for (size_t n = 0; n <= trunc; ++n) {
        const ChainComplex& sc = src.obj->level(n);
        const ChainComplex& tc = tgt.obj->level(n);
        size_t degs = std::max(sc.top(), tc.top()) + 1;
        std::vector<Matrix> comps(degs);
        for (size_t q = 0; q < degs; ++q) {
            Matrix mat(tc.dim(q), sc.dim(q));
            mat.paste(phi_y.comp[n].component(q), tgt.block_offset(n, 0, q), src.block_offset(n, 0, q));
            mat.paste(phi_z.comp[n].component(q), tgt.block_offset(n, n + 1, q),
                      src.block_offset(n, n + 1, q));
            for (size_t k = 1; k <= n; ++k)
                mat.paste(phi_x.comp[n].component(q), tgt.block_offset(n, k, q),
                          src.block_offset(n, k, q));
            comps[q] = std::move(mat);
        }
        m.comp.emplace_back(sc, tc, std::move(comps), false);
    }
    simp_map_validate(m);
    return m;
}

CylData simplicial_cone(const SimpMap& f) {
    SimpObjPtr z = zero_obj(f.src->trunc());
    SimpMap to_zero{f.src, z, {}};
    for (size_t n = 0; n <= std::min(f.src->trunc(), z->trunc()); ++n)
        to_zero.comp.push_back(ChainMap::zero(f.src->level(n), z->level(n)));
    return simplicial_cyl(f, to_zero);
}

ChainComplex simple(const SimpObjPtr& x) { return x->simple_complex(); }

ChainMap simple_map(const SimpMap& f) {
    const ChainComplex& sc = f.src->simple_complex();
    const ChainComplex& tc = f.tgt->simple_complex();
    const Normalization& ns = f.src->normalization();
    const Normalization& nt = f.tgt->normalization();
    const TotalBlocks& bs = f.src->simple_blocks();
    const TotalBlocks& bt = f.tgt->simple_blocks();
    size_t degs = std::max(sc.top(), tc.top()) + 1;
    std::vector<Matrix> comps(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix m(tc.dim(n), sc.dim(n));
        if (n < bs.blocks.size())
            for (const auto& b : bs.blocks[n]) {
                const auto* t = bt.find(n, b.p);
                if (!t || b.p >= f.comp.size() || b.size == 0) continue;
                const Matrix& basis = ns.levels[b.p].basis[b.q];
                Matrix img = f.comp[b.p].component(b.q) * basis;
                if (t->size == 0) {
                    if (!img.is_zero())
                        throw ValidationError("simple_map: image leaves the Moore part");
                    continue;
                }
                Matrix coords = nt.levels[b.p].retraction[b.q] * img;
                if (nt.levels[b.p].basis[b.q] * coords != img)
                    throw ValidationError("simple_map: image leaves the Moore part");
                m.paste(coords, t->offset, b.offset);
            }
        comps[n] = std::move(m);
    }
    return ChainMap(sc, tc, std::move(comps));
}

SimpleUnit unit(const ChainComplex& a, size_t trunc) {
    SimpObjPtr x = constant_obj(a, trunc);
    const ChainComplex& s = x->simple_complex();
    size_t degs = std::max(s.top(), a.top()) + 1;
    std::vector<Matrix> lam(degs), rho(degs);
    for (size_t n = 0; n < degs; ++n) {
        if (s.dim(n) != a.dim(n))
            throw ValidationError("unit: normalized simple of a constant is not the object");
        lam[n] = Matrix::identity(a.dim(n));
        rho[n] = Matrix::identity(a.dim(n));
    }
    return SimpleUnit{ChainMap(s, a, std::move(lam)), ChainMap(a, s, std::move(rho))};
}

}  // namespace descenso

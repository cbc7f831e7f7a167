#include "descenso/chain.hpp"

#include <algorithm>

namespace descenso {

struct ChainComplex::Cache {
    std::once_flag flag;
    std::optional<HomologyData> homology;
};

ChainComplex::ChainComplex() : dims_{0}, cache_(std::make_shared<Cache>()) {}

ChainComplex::ChainComplex(std::vector<size_t> dims, std::vector<Matrix> diffs, bool validate)
    : dims_(std::move(dims)), diffs_(std::move(diffs)), cache_(std::make_shared<Cache>()) {
    if (dims_.empty()) dims_.push_back(0);
    if (diffs_.size() + 1 != dims_.size())
        throw ValidationError("ChainComplex: need one differential per positive degree");
    for (size_t n = 1; n < dims_.size(); ++n) {
        const Matrix& m = diffs_[n - 1];
        if (m.rows() != dims_[n - 1] || m.cols() != dims_[n])
            throw ValidationError("ChainComplex: differential shape mismatch");
    }
    if (validate) {
        for (size_t n = 2; n < dims_.size(); ++n)
            if (!(diffs_[n - 2] * diffs_[n - 1]).is_zero())
                throw ValidationError("ChainComplex: d o d != 0");
    }
}

ChainComplex ChainComplex::point(size_t dim, size_t degree) {
    std::vector<size_t> dims(degree + 1, 0);
    dims[degree] = dim;
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= degree; ++n) diffs.emplace_back(dims[n - 1], dims[n]);
    return ChainComplex(std::move(dims), std::move(diffs), false);
}

size_t ChainComplex::total_dim() const {
    size_t t = 0;
    for (size_t d : dims_) t += d;
    return t;
}

Matrix ChainComplex::d(size_t n) const {
    if (n >= 1 && n < dims_.size()) return diffs_[n - 1];
    return Matrix(n == 0 ? 0 : dim(n - 1), dim(n));
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    return dims_ == o.dims_ && diffs_ == o.diffs_;
}

const HomologyData& ChainComplex::homology() const {
    std::call_once(cache_->flag, [this] {
        HomologyData h;
        size_t t = top();
        h.h_dims.resize(t + 1);
        h.cycles.resize(t + 1);
        h.boundaries.resize(t + 1);
        h.reps.resize(t + 1);
        for (size_t n = 0; n <= t; ++n) {
            Subspace z = n == 0 ? Subspace::full(dim(0)) : decompose(d(n)).kernel;
            Subspace b = n == t ? Subspace::zero(dim(n)) : decompose(d(n + 1)).image;
            h.cycles[n] = z.basis;
            h.boundaries[n] = b.basis;
            // greedy deterministic complement of boundaries inside cycles
            Matrix acc = b.basis;
            std::vector<size_t> chosen;
            for (size_t j = 0; j < z.basis.cols(); ++j) {
                Matrix cand = Matrix::hcat(acc, z.basis.column(j));
                if (rank(cand) > acc.cols()) {
                    acc = cand;
                    chosen.push_back(j);
                }
            }
            h.reps[n] = z.basis.columns(chosen);
            h.h_dims[n] = h.reps[n].cols();
        }
        cache_->homology = std::move(h);
    });
    return *cache_->homology;
}

bool ChainComplex::is_acyclic() const {
    const auto& h = homology();
    for (size_t d : h.h_dims)
        if (d != 0) return false;
    return true;
}

GradedMap GradedMap::identity(const std::vector<size_t>& dims) {
    std::vector<Matrix> comps;
    comps.reserve(dims.size());
    for (size_t d : dims) comps.push_back(Matrix::identity(d));
    return GradedMap(std::move(comps));
}

Matrix GradedMap::component(size_t n) const {
    if (n < comps_.size()) return comps_[n];
    return Matrix(0, 0);
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    size_t n = std::max(comps_.size(), inner.comps_.size());
    std::vector<Matrix> out(n);
    for (size_t i = 0; i < n; ++i) {
        Matrix a = i < comps_.size() ? comps_[i] : Matrix(0, 0);
        Matrix b = i < inner.comps_.size() ? inner.comps_[i] : Matrix(a.cols(), 0);
        if (a.cols() != b.rows()) {
            if (a.cols() == 0 && a.rows() == 0) a = Matrix(0, b.rows());
            if (b.rows() == 0 && b.cols() == 0) b = Matrix(a.cols(), 0);
        }
        out[i] = a * b;
    }
    return GradedMap(std::move(out));
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    size_t n = std::max(comps_.size(), o.comps_.size());
    std::vector<Matrix> out(n);
    for (size_t i = 0; i < n; ++i) {
        Matrix a = component(i), b = o.component(i);
        if (a.rows() == 0 && a.cols() == 0) a = Matrix(b.rows(), b.cols());
        if (b.rows() == 0 && b.cols() == 0) b = Matrix(a.rows(), a.cols());
        out[i] = a + b;
    }
    return GradedMap(std::move(out));
}

GradedMap GradedMap::operator-() const {
    std::vector<Matrix> out(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) out[i] = -comps_[i];
    return GradedMap(std::move(out));
}

bool GradedMap::operator==(const GradedMap& o) const {
    size_t n = std::max(comps_.size(), o.comps_.size());
    for (size_t i = 0; i < n; ++i) {
        Matrix a = component(i), b = o.component(i);
        if (a.rows() != b.rows() || a.cols() != b.cols()) {
            // trailing zero-dimensional components are interchangeable
            if (a.rows() * a.cols() == 0 && b.rows() * b.cols() == 0 && a.rows() == b.rows()) continue;
            if ((a.rows() | a.cols()) == 0 && (b.rows() == 0 || b.cols() == 0)) continue;
            if ((b.rows() | b.cols()) == 0 && (a.rows() == 0 || a.cols() == 0)) continue;
            return false;
        }
        if (a != b) return false;
    }
    return true;
}

bool GradedMap::is_iso() const {
    for (const auto& m : comps_) {
        if (m.rows() != m.cols()) return false;
        if (rank(m) != m.rows()) return false;
    }
    return true;
}

bool GradedMap::is_zero() const {
    for (const auto& m : comps_)
        if (!m.is_zero()) return false;
    return true;
}

GradedMap GradedMap::inverse() const {
    std::vector<Matrix> out(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].rows() != comps_[i].cols()) throw std::runtime_error("GradedMap: not invertible");
        out[i] = comps_[i].rows() == 0 ? comps_[i] : invert(comps_[i]);
    }
    return GradedMap(std::move(out));
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components,
                   bool validate)
    : src_(std::make_shared<ChainComplex>(std::move(source))),
      tgt_(std::make_shared<ChainComplex>(std::move(target))),
      comps_(std::move(components)) {
    size_t degs = std::max(src_->top(), tgt_->top()) + 1;
    comps_.resize(degs);
    for (size_t n = 0; n < degs; ++n) {
        Matrix& m = comps_[n];
        if (m.rows() == 0 && m.cols() == 0) m = Matrix(tgt_->dim(n), src_->dim(n));
        if (m.rows() != tgt_->dim(n) || m.cols() != src_->dim(n))
            throw ValidationError("ChainMap: component shape mismatch");
    }
    if (validate) {
        for (size_t n = 1; n < degs; ++n)
            if (tgt_->d(n) * comps_[n] != comps_[n - 1] * src_->d(n))
                throw ValidationError("ChainMap: does not commute with differentials");
    }
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    std::vector<Matrix> comps;
    for (size_t n = 0; n <= c.top(); ++n) comps.push_back(Matrix::identity(c.dim(n)));
    return ChainMap(c, c, std::move(comps), false);
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
    return ChainMap(source, target, {}, false);
}

Matrix ChainMap::component(size_t n) const {
    if (n < comps_.size()) return comps_[n];
    return Matrix(tgt_->dim(n), src_->dim(n));
}

ChainMap ChainMap::compose(const ChainMap& inner) const {
    if (!(inner.target() == source())) throw std::invalid_argument("ChainMap: compose mismatch");
    size_t degs = std::max(inner.src_->top(), tgt_->top()) + 1;
    std::vector<Matrix> out(degs);
    for (size_t n = 0; n < degs; ++n) out[n] = component(n) * inner.component(n);
    return ChainMap(inner.source(), target(), std::move(out), false);
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
    if (!(source() == o.source()) || !(target() == o.target()))
        throw std::invalid_argument("ChainMap: sum mismatch");
    std::vector<Matrix> out(comps_.size());
    for (size_t n = 0; n < comps_.size(); ++n) out[n] = component(n) + o.component(n);
    return ChainMap(source(), target(), std::move(out), false);
}

ChainMap ChainMap::operator-() const {
    std::vector<Matrix> out(comps_.size());
    for (size_t n = 0; n < comps_.size(); ++n) out[n] = -comps_[n];
    return ChainMap(source(), target(), std::move(out), false);
}

ChainMap ChainMap::scaled(const Rational& c) const {
    std::vector<Matrix> out(comps_.size());
    for (size_t n = 0; n < comps_.size(); ++n) out[n] = comps_[n].scaled(c);
    return ChainMap(source(), target(), std::move(out), false);
}

bool ChainMap::operator==(const ChainMap& o) const {
    if (!(source() == o.source()) || !(target() == o.target())) return false;
    size_t degs = std::max(comps_.size(), o.comps_.size());
    for (size_t n = 0; n < degs; ++n)
        if (component(n) != o.component(n)) return false;
    return true;
}

bool ChainMap::is_zero() const {
    for (const auto& m : comps_)
        if (!m.is_zero()) return false;
    return true;
}

GradedMap induced_homology_map(const ChainMap& f) {
    const HomologyData& hs = f.source().homology();
    const HomologyData& ht = f.target().homology();
    size_t degs = std::max(hs.h_dims.size(), ht.h_dims.size());
    std::vector<Matrix> out(degs);
    for (size_t n = 0; n < degs; ++n) {
        size_t sdim = n < hs.h_dims.size() ? hs.h_dims[n] : 0;
        size_t tdim = n < ht.h_dims.size() ? ht.h_dims[n] : 0;
        if (sdim == 0 || tdim + (n < ht.h_dims.size() ? ht.boundaries[n].cols() : 0) == 0) {
            out[n] = Matrix(tdim, sdim);
            continue;
        }
        Matrix images = f.component(n) * hs.reps[n];
        Matrix basis = Matrix::hcat(ht.reps[n], ht.boundaries[n]);
        Matrix coords = solve_exact(basis, images);  // cycles land in reps + boundaries
        out[n] = coords.submatrix(0, tdim, 0, sdim);
    }
    return GradedMap(std::move(out));
}

bool is_qis(const ChainMap& f) {
    const HomologyData& hs = f.source().homology();
    const HomologyData& ht = f.target().homology();
    size_t degs = std::max(hs.h_dims.size(), ht.h_dims.size());
    for (size_t n = 0; n < degs; ++n)
        if (hs.dim(n) != ht.dim(n)) return false;
    GradedMap g = induced_homology_map(f);
    for (size_t n = 0; n < degs; ++n) {
        Matrix m = g.component(n);
        if (m.rows() != m.cols()) return false;
        if (m.rows() > 0 && rank(m) != m.rows()) return false;
    }
    return true;
}

ConeData classical_cone(const ChainMap& f) {
    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    size_t t = std::max(b.top(), a.top() + 1);
    std::vector<size_t> dims(t + 1);
    for (size_t n = 0; n <= t; ++n) dims[n] = b.dim(n) + (n >= 1 ? a.dim(n - 1) : 0);
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= t; ++n) {
        Matrix m(dims[n - 1], dims[n]);
        m.paste(b.d(n), 0, 0);
        m.paste(f.component(n - 1), 0, b.dim(n));
        if (n >= 2) m.paste(-a.d(n - 1), b.dim(n - 1), b.dim(n));
        diffs.push_back(std::move(m));
    }
    ChainComplex cone(dims, std::move(diffs));

    std::vector<Matrix> inc(t + 1), prj(t + 1);
    ChainComplex a1 = shift(a, 1);
    for (size_t n = 0; n <= t; ++n) {
        inc[n] = Matrix(cone.dim(n), b.dim(n));
        inc[n].paste(Matrix::identity(b.dim(n)), 0, 0);
        prj[n] = Matrix(a1.dim(n), cone.dim(n));
        if (n >= 1) prj[n].paste(Matrix::identity(a.dim(n - 1)), 0, b.dim(n));
    }
    return ConeData{cone, ChainMap(b, cone, std::move(inc)), ChainMap(cone, a1, std::move(prj))};
}

ChainComplex shift(const ChainComplex& c, size_t k) {
    std::vector<size_t> dims(c.top() + 1 + k, 0);
    for (size_t n = 0; n <= c.top(); ++n) dims[n + k] = c.dim(n);
    std::vector<Matrix> diffs;
    Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    for (size_t n = 1; n < dims.size(); ++n) {
        if (n <= k)
            diffs.emplace_back(dims[n - 1], dims[n]);
        else
            diffs.push_back(c.d(n - k).scaled(sign));
    }
    return ChainComplex(std::move(dims), std::move(diffs), false);
}

SumData direct_sum(const ChainComplex& a, const ChainComplex& b) {
    size_t t = std::max(a.top(), b.top());
    std::vector<size_t> dims(t + 1);
    for (size_t n = 0; n <= t; ++n) dims[n] = a.dim(n) + b.dim(n);
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= t; ++n) {
        Matrix m(dims[n - 1], dims[n]);
        m.paste(a.d(n), 0, 0);
        m.paste(b.d(n), a.dim(n - 1), a.dim(n));
        diffs.push_back(std::move(m));
    }
    ChainComplex s(dims, std::move(diffs), false);
    std::vector<Matrix> i1(t + 1), i2(t + 1), p1(t + 1), p2(t + 1);
    for (size_t n = 0; n <= t; ++n) {
        i1[n] = Matrix(s.dim(n), a.dim(n));
        i1[n].paste(Matrix::identity(a.dim(n)), 0, 0);
        i2[n] = Matrix(s.dim(n), b.dim(n));
        i2[n].paste(Matrix::identity(b.dim(n)), a.dim(n), 0);
        p1[n] = Matrix(a.dim(n), s.dim(n));
        p1[n].paste(Matrix::identity(a.dim(n)), 0, 0);
        p2[n] = Matrix(b.dim(n), s.dim(n));
        p2[n].paste(Matrix::identity(b.dim(n)), 0, a.dim(n));
    }
    return SumData{s, ChainMap(a, s, std::move(i1)), ChainMap(b, s, std::move(i2)),
                   ChainMap(s, a, std::move(p1)), ChainMap(s, b, std::move(p2))};
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g, const SumData& src, const SumData& tgt) {
    ChainMap part1 = tgt.in1.compose(f).compose(src.pr1);
    ChainMap part2 = tgt.in2.compose(g).compose(src.pr2);
    return part1 + part2;
}

ChainComplex multi_direct_sum(const std::vector<const ChainComplex*>& parts) {
    size_t top = 0;
    for (auto* p : parts) top = std::max(top, p->top());
    std::vector<size_t> dims(top + 1, 0);
    for (auto* p : parts)
        for (size_t n = 0; n <= top; ++n) dims[n] += p->dim(n);
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= top; ++n) {
        Matrix d(dims[n - 1], dims[n]);
        size_t r = 0, c = 0;
        for (auto* p : parts) {
            d.paste(p->d(n), r, c);
            r += p->dim(n - 1);
            c += p->dim(n);
        }
        diffs.push_back(std::move(d));
    }
    return ChainComplex(std::move(dims), std::move(diffs), false);
}

ChainMap codiagonal(const ChainComplex& a, const SumData& sum) {
    ChainMap id = ChainMap::identity(a);
    std::vector<Matrix> comps(sum.sum.top() + 1);
    for (size_t n = 0; n <= sum.sum.top(); ++n)
        comps[n] = id.component(n) * sum.pr1.component(n) + id.component(n) * sum.pr2.component(n);
    return ChainMap(sum.sum, a, std::move(comps));
}

namespace {
bool exact_at(const Matrix& incoming, const Matrix& outgoing) {
    // exactness at the middle of  X --incoming--> Y --outgoing--> Z
    if (!(outgoing * incoming).is_zero()) return false;
    size_t dim_ker = outgoing.cols() - rank(outgoing);
    return rank(incoming) == dim_ker;
}
}  // namespace

bool long_exact_sequence_holds(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c,
                               const GradedMap& ha, const GradedMap& hb,
                               const std::vector<Matrix>& connecting) {
    const HomologyData& Ha = a.homology();
    const HomologyData& Hb = b.homology();
    const HomologyData& Hc = c.homology();
    size_t degs = std::max({Ha.h_dims.size(), Hb.h_dims.size(), Hc.h_dims.size()}) + 1;
    auto fit = [](Matrix m, size_t rows, size_t cols) {
        if (m.rows() == rows && m.cols() == cols) return m;
        if (m.rows() * m.cols() != 0 && (m.rows() != rows || m.cols() != cols))
            throw std::invalid_argument("long_exact_sequence_holds: component shape mismatch");
        return Matrix(rows, cols);
    };
    auto fa = [&](size_t n) { return fit(ha.component(n), Hb.dim(n), Ha.dim(n)); };
    auto fb = [&](size_t n) { return fit(hb.component(n), Hc.dim(n), Hb.dim(n)); };
    auto conn = [&](size_t n) {
        Matrix m = n < connecting.size() ? connecting[n] : Matrix(0, 0);
        return fit(m, n >= 1 ? Ha.dim(n - 1) : 0, Hc.dim(n));
    };
    for (size_t n = 0; n < degs; ++n) {
        if (!exact_at(fa(n), fb(n))) return false;                          // at H_n(B)
        if (!exact_at(fb(n), conn(n))) return false;                        // at H_n(C)
        if (n >= 1 && !exact_at(conn(n), fa(n - 1))) return false;          // at H_{n-1}(A)
    }
    return true;
}

}  // namespace descenso

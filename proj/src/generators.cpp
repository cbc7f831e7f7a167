#include "descenso/generators.hpp"

namespace descenso {

Matrix random_matrix(Rng& rng, size_t rows, size_t cols, long max_entry) {
    Matrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = Rational(rng.range(-max_entry, max_entry));
    return m;
}

Matrix random_invertible(Rng& rng, size_t n, long max_entry) {
    // product of random unimodular shears and a permutation with signs
    Matrix m = Matrix::identity(n);
    if (n == 0) return m;
    size_t shears = 2 * n + 2;
    for (size_t s = 0; s < shears; ++s) {
        size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        Rational c(rng.range(-max_entry, max_entry));
        for (size_t k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
    }
    for (size_t i = 0; i < n; ++i) {
        size_t j = i + rng.below(n - i);
        if (i != j)
            for (size_t k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
        if (rng.below(2) == 0)
            for (size_t k = 0; k < n; ++k) m.at(i, k) = -m.at(i, k);
    }
    return m;
}

ChainComplex random_complex(Rng& rng, const GeneratorOptions& opt) {
    size_t top = rng.below(opt.max_deg + 1);
    std::vector<size_t> dims(top + 1);
    for (auto& d : dims) d = rng.below(opt.max_dim + 1);
    std::vector<Matrix> diffs;
    Subspace ker = Subspace::full(dims[0]);
    for (size_t n = 1; n <= top; ++n) {
        // columns constrained to the kernel of the previous differential
        Matrix coeff = random_matrix(rng, ker.dim(), dims[n], opt.max_entry);
        Matrix d = ker.basis * coeff;
        ker = decompose(d).kernel;
        diffs.push_back(std::move(d));
    }
    return ChainComplex(std::move(dims), std::move(diffs));
}

ChainComplex random_acyclic(Rng& rng, const GeneratorOptions& opt) {
    // direct sum of two-term identity pieces [Q -> Q] at random degrees,
    // conjugated by a random basis change
    size_t top = 1 + rng.below(std::max<size_t>(opt.max_deg, 1));
    std::vector<size_t> count(top + 1, 0);  // count[n] = pieces spanning (n, n-1)
    size_t pieces = 1 + rng.below(std::max<size_t>(opt.max_dim / 2, 1));
    for (size_t p = 0; p < pieces; ++p) count[1 + rng.below(top)] += 1;

    // basis at degree k: piece tops (count[k]) first, then piece bottoms (count[k+1])
    auto cnt = [&](size_t n) { return n <= top ? count[n] : 0; };
    std::vector<size_t> dims(top + 1);
    for (size_t k = 0; k <= top; ++k) dims[k] = cnt(k) + cnt(k + 1);
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= top; ++n) {
        Matrix d(dims[n - 1], dims[n]);
        for (size_t j = 0; j < cnt(n); ++j) d.at(cnt(n - 1) + j, j) = Rational(1);
        diffs.push_back(std::move(d));
    }
    ChainComplex base(dims, std::move(diffs));
    return random_conjugate(rng, base, opt).target;
}

Splitting splitting(const ChainComplex& c) {
    const HomologyData& h = c.homology();
    Splitting s;
    s.proj_reps.resize(c.top() + 1);
    for (size_t n = 0; n <= c.top(); ++n) {
        // complete [reps | boundaries] to a basis with lifts (preimages of a
        // boundary basis one degree down) and standard vectors if needed
        Matrix basis = Matrix::hcat(h.reps[n], h.boundaries[n]);
        size_t dim = c.dim(n);
        Matrix ext = basis;
        for (size_t j = 0; j < dim && ext.cols() < dim; ++j) {
            QVector e(dim);
            e[j] = Rational(1);
            Matrix cand = Matrix::hcat(ext, Matrix::from_columns(dim, {e}));
            if (rank(cand) > ext.cols()) ext = cand;
        }
        Matrix inv = ext.cols() == 0 ? Matrix(0, 0) : invert(ext);
        Matrix proj(h.dim(n), dim);
        for (size_t i = 0; i < h.dim(n); ++i)
            for (size_t j = 0; j < dim; ++j) proj.at(i, j) = inv.at(i, j);
        s.proj_reps[n] = std::move(proj);
    }
    return s;
}

namespace {
ChainMap assemble_map(Rng& rng, const ChainComplex& a, const ChainComplex& b, const GradedMap& phi,
                      const GeneratorOptions& opt) {
    const HomologyData& ha = a.homology();
    const HomologyData& hb = b.homology();
    Splitting sa = splitting(a);
    size_t degs = std::max(a.top(), b.top()) + 1;
    std::vector<Matrix> comps(degs);
    // homology-realizing part
    for (size_t n = 0; n < degs; ++n) {
        Matrix m(b.dim(n), a.dim(n));
        if (n <= a.top() && n <= b.top()) {
            Matrix p = phi.component(n);
            if (p.rows() != hb.dim(n) || p.cols() != ha.dim(n)) {
                if (p.rows() * p.cols() != 0)
                    throw std::invalid_argument("chain_map_with_homology: graded map shape mismatch");
                p = Matrix(hb.dim(n), ha.dim(n));
            }
            m = hb.reps[n] * p * sa.proj_reps[n];
        }
        comps[n] = std::move(m);
    }
    // null-homotopic part d k + k d with arbitrary k
    std::vector<Matrix> k(degs);
    for (size_t n = 0; n < degs; ++n) k[n] = random_matrix(rng, b.dim(n + 1), a.dim(n), opt.max_entry);
    for (size_t n = 0; n < degs; ++n) {
        Matrix part = b.d(n + 1) * k[n];
        if (n >= 1) part = part + k[n - 1] * a.d(n);
        comps[n] = comps[n] + part;
    }
    return ChainMap(a, b, std::move(comps));
}
}  // namespace

ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b,
                          const GeneratorOptions& opt) {
    const HomologyData& ha = a.homology();
    const HomologyData& hb = b.homology();
    size_t degs = std::max(a.top(), b.top()) + 1;
    std::vector<Matrix> phi(degs);
    for (size_t n = 0; n < degs; ++n)
        phi[n] = random_matrix(rng, hb.dim(n), ha.dim(n), opt.max_entry);
    return assemble_map(rng, a, b, GradedMap(std::move(phi)), opt);
}

ChainMap chain_map_with_homology(Rng& rng, const ChainComplex& a, const ChainComplex& b,
                                 const GradedMap& phi, const GeneratorOptions& opt) {
    return assemble_map(rng, a, b, phi, opt);
}

IsoData random_conjugate(Rng& rng, const ChainComplex& a, const GeneratorOptions& opt) {
    std::vector<Matrix> u(a.top() + 1), uinv(a.top() + 1);
    for (size_t n = 0; n <= a.top(); ++n) {
        u[n] = random_invertible(rng, a.dim(n), opt.max_entry);
        uinv[n] = a.dim(n) == 0 ? Matrix(0, 0) : invert(u[n]);
    }
    std::vector<Matrix> diffs;
    for (size_t n = 1; n <= a.top(); ++n) diffs.push_back(u[n - 1] * a.d(n) * uinv[n]);
    ChainComplex target(a.dims(), std::move(diffs), false);
    return IsoData{target, ChainMap(a, target, std::move(u))};
}

QisData random_qis(Rng& rng, const ChainComplex& a, const GeneratorOptions& opt) {
    GeneratorOptions small = opt;
    small.max_deg = std::max<size_t>(a.top(), 1);
    ChainComplex e = random_acyclic(rng, small);
    SumData s = direct_sum(a, e);
    IsoData conj = random_conjugate(rng, s.sum, opt);
    return QisData{conj.target, conj.map.compose(s.in1)};
}

FormalityData formality(const ChainComplex& c) {
    const HomologyData& h = c.homology();
    std::vector<Matrix> diffs;
    for (size_t n = 1; n < h.h_dims.size(); ++n) diffs.emplace_back(h.h_dims[n - 1], h.h_dims[n]);
    ChainComplex hx(h.h_dims, std::move(diffs), false);
    Splitting s = splitting(c);
    std::vector<Matrix> comps(c.top() + 1);
    for (size_t n = 0; n <= c.top(); ++n) comps[n] = s.proj_reps[n];
    return FormalityData{hx, ChainMap(c, hx, std::move(comps))};
}

}  // namespace descenso

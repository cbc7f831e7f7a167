#include "descenso/linalg.hpp"

#include <stdexcept>

namespace descenso {

Matrix rref(const Matrix& m, std::vector<size_t>* pivots) {
    Matrix a = m;
    size_t r = 0;
    if (pivots) pivots->clear();
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        // first-nonzero pivoting: take the first row at or below r with a nonzero entry
        size_t p = r;
        while (p < a.rows() && a.at(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
        Rational inv = a.at(r, c).inverse();
        for (size_t j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Rational f = a.at(i, c);
            for (size_t j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

size_t rank(const Matrix& m) {
    std::vector<size_t> piv;
    rref(m, &piv);
    return piv.size();
}

Decomposition decompose(const Matrix& m) {
    std::vector<size_t> piv;
    Matrix r = rref(m, &piv);
    Decomposition d;
    d.rank = piv.size();
    d.image = Subspace{m.rows(), m.columns(piv)};

    // kernel basis from the free columns of the rref
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : piv) is_pivot[c] = true;
    Matrix k(m.cols(), m.cols() - piv.size());
    size_t kcol = 0;
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        k.at(c, kcol) = Rational(1);
        for (size_t i = 0; i < piv.size(); ++i) k.at(piv[i], kcol) = -r.at(i, c);
        ++kcol;
    }
    d.kernel = Subspace{m.cols(), std::move(k)};
    return d;
}

std::optional<QVector> solve(const Matrix& m, const QVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug = Matrix::hcat(m, Matrix::from_columns(m.rows(), {b}));
    std::vector<size_t> piv;
    Matrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;  // inconsistent row
    QVector x(m.cols());
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r.at(i, m.cols());
    return x;
}

Matrix solve_exact(const Matrix& m, const Matrix& b) {
    if (b.rows() != m.rows()) throw std::invalid_argument("solve_exact: shape mismatch");
    Matrix aug = Matrix::hcat(m, b);
    std::vector<size_t> piv;
    Matrix r = rref(aug, &piv);
    for (size_t c : piv)
        if (c >= m.cols()) throw std::runtime_error("solve_exact: unsolvable system");
    Matrix x(m.cols(), b.cols());
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) x.at(piv[i], j) = r.at(i, m.cols() + j);
    return x;
}

Subspace Subspace::span(const Matrix& vectors) {
    std::vector<size_t> piv;
    rref(vectors, &piv);
    return Subspace{vectors.rows(), vectors.columns(piv)};
}

bool subspace_contains(const Subspace& s, const QVector& v) {
    return solve(s.basis, v).has_value();
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_leq: ambient mismatch");
    for (size_t j = 0; j < a.dim(); ++j)
        if (!subspace_contains(b, a.basis.column_vec(j))) return false;
    return true;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("intersect: ambient mismatch");
    // null space of [A | -B]; the A-part of each kernel vector spans the intersection
    Matrix stacked = Matrix::hcat(a.basis, -b.basis);
    Decomposition d = decompose(stacked);
    Matrix coeffs = d.kernel.basis.submatrix(0, a.dim(), 0, d.kernel.dim());
    return Subspace::span(a.basis * coeffs);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("subspace_sum: ambient mismatch");
    return Subspace::span(Matrix::hcat(a.basis, b.basis));
}

Subspace preimage(const Matrix& m, const Subspace& b) {
    if (b.ambient_dim != m.rows()) throw std::invalid_argument("preimage: ambient mismatch");
    // kernel of [M | -B]: pairs (x, y) with M x = B y
    Matrix stacked = Matrix::hcat(m, -b.basis);
    Decomposition d = decompose(stacked);
    Matrix xs = d.kernel.basis.submatrix(0, m.cols(), 0, d.kernel.dim());
    return Subspace::span(xs);
}

Matrix quotient_projection(const Subspace& a) {
    size_t n = a.ambient_dim;
    // greedily extend the column space with standard vectors, then read the
    // complement coordinates off the inverse of the completed basis
    Matrix ext = a.basis;
    std::vector<size_t> added;
    for (size_t j = 0; j < n && ext.cols() < n; ++j) {
        QVector e(n);
        e[j] = Rational(1);
        Matrix cand = Matrix::hcat(ext, Matrix::from_columns(n, {e}));
        if (rank(cand) > ext.cols()) {
            ext = cand;
            added.push_back(j);
        }
    }
    if (ext.cols() != n) throw std::runtime_error("quotient_projection: basis columns dependent");
    Matrix inv = invert(ext);
    // rows of inv corresponding to the added complement vectors
    Matrix p(added.size(), n);
    for (size_t i = 0; i < added.size(); ++i)
        for (size_t j = 0; j < n; ++j) p.at(i, j) = inv.at(a.dim() + i, j);
    return p;
}

Matrix coordinates_in(const Matrix& basis, const Matrix& inside) {
    return solve_exact(basis, inside);
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: not square");
    Matrix aug = Matrix::hcat(m, Matrix::identity(m.rows()));
    std::vector<size_t> piv;
    Matrix r = rref(aug, &piv);
    if (piv.size() != m.rows()) throw std::runtime_error("invert: singular matrix");
    for (size_t i = 0; i < piv.size(); ++i)
        if (piv[i] != i) throw std::runtime_error("invert: singular matrix");
    return r.submatrix(0, m.rows(), m.cols(), m.cols());
}

}  // namespace descenso

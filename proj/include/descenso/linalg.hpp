#pragma once

#include <optional>
#include <vector>

#include "descenso/matrix.hpp"

namespace descenso {

/// A linear subspace of Q^ambient, stored as a matrix whose columns form a basis.
struct Subspace {
    size_t ambient_dim = 0;
    Matrix basis;  // ambient_dim x dim, columns linearly independent

    size_t dim() const { return basis.cols(); }

    static Subspace zero(size_t ambient) { return {ambient, Matrix(ambient, 0)}; }
    static Subspace full(size_t ambient) { return {ambient, Matrix::identity(ambient)}; }
    /// Span of the given columns (dependent columns are discarded deterministically).
    static Subspace span(const Matrix& vectors);
};

struct Decomposition {
    size_t rank = 0;
    Subspace kernel;  // subspace of the source
    Subspace image;   // subspace of the target, basis = pivot columns of M
};

/// Reduced row echelon form with first-nonzero pivoting; returns pivot columns.
Matrix rref(const Matrix& m, std::vector<size_t>* pivots = nullptr);

size_t rank(const Matrix& m);

/// Kernel + image of M in one sweep. rank + dim kernel = cols always holds.
Decomposition decompose(const Matrix& m);

/// Exact solution of M x = b, or nullopt when b is outside the image.
std::optional<QVector> solve(const Matrix& m, const QVector& b);

/// Columnwise solve of M X = B; throws when some column is unsolvable.
Matrix solve_exact(const Matrix& m, const Matrix& b);

bool subspace_contains(const Subspace& s, const QVector& v);
bool subspace_leq(const Subspace& a, const Subspace& b);  // a <= b

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// {x : M x in B}, for M mapping into B's ambient space.
Subspace preimage(const Matrix& m, const Subspace& b);

/// Full-row-rank projection onto a complement of A; kernel = A exactly.
Matrix quotient_projection(const Subspace& a);

/// Columns of `inside` rewritten in terms of `basis` (throws when not contained).
Matrix coordinates_in(const Matrix& basis, const Matrix& inside);

Matrix invert(const Matrix& m);  // throws when singular

}  // namespace descenso

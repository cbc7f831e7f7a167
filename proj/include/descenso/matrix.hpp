#pragma once

#include <cstddef>
#include <vector>

#include "descenso/rational.hpp"

namespace descenso {

using QVector = std::vector<Rational>;

/// Dense rational matrix, row-major. Zero-row and zero-column shapes are legal.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Matrix(size_t rows, size_t cols, std::vector<Rational> entries);

    static Matrix identity(size_t n);
    static Matrix zero(size_t rows, size_t cols) { return Matrix(rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return e_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Rational& c) const;
    QVector apply(const QVector& v) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;

    Matrix transpose() const;
    Matrix column(size_t j) const;
    QVector column_vec(size_t j) const;
    Matrix columns(const std::vector<size_t>& idx) const;

    /// Stack side by side / on top of each other.
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);
    static Matrix from_columns(size_t rows, const std::vector<QVector>& cols);

    /// Paste `b` so that its (0,0) entry lands at (i0,j0).
    void paste(const Matrix& b, size_t i0, size_t j0);
    Matrix submatrix(size_t i0, size_t rows, size_t j0, size_t cols) const;

private:
    size_t rows_, cols_;
    std::vector<Rational> e_;
};

/// Block-diagonal assembly.
Matrix block_diag(const std::vector<Matrix>& blocks);

}  // namespace descenso

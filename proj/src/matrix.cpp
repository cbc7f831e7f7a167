#include "descenso/matrix.hpp"

#include <stdexcept>

namespace descenso {

Matrix::Matrix(size_t rows, size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: entry count mismatch");
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Rational& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(i, j) += a * b;
            }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in sum");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch in difference");
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

Matrix Matrix::scaled(const Rational& c) const {
    Matrix r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
    return r;
}

QVector Matrix::apply(const QVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: vector length mismatch");
    QVector r(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            const Rational& a = at(i, j);
            if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
        }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::column(size_t j) const {
    Matrix r(rows_, 1);
    for (size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

QVector Matrix::column_vec(size_t j) const {
    QVector r(rows_);
    for (size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
    return r;
}

Matrix Matrix::columns(const std::vector<size_t>& idx) const {
    Matrix r(rows_, idx.size());
    for (size_t j = 0; j < idx.size(); ++j)
        for (size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("Matrix: hcat row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    r.paste(a, 0, 0);
    r.paste(b, 0, a.cols_);
    return r;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("Matrix: vcat column mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_);
    r.paste(a, 0, 0);
    r.paste(b, a.rows_, 0);
    return r;
}

Matrix Matrix::from_columns(size_t rows, const std::vector<QVector>& cols) {
    Matrix r(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("Matrix: column length mismatch");
        for (size_t i = 0; i < rows; ++i) r.at(i, j) = cols[j][i];
    }
    return r;
}

void Matrix::paste(const Matrix& b, size_t i0, size_t j0) {
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_) throw std::invalid_argument("Matrix: paste out of range");
    for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

Matrix Matrix::submatrix(size_t i0, size_t rows, size_t j0, size_t cols) const {
    if (i0 + rows > rows_ || j0 + cols > cols_) throw std::invalid_argument("Matrix: submatrix out of range");
    Matrix r(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) r.at(i, j) = at(i0 + i, j0 + j);
    return r;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
    size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix r(rows, cols);
    size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        r.paste(b, i0, j0);
        i0 += b.rows();
        j0 += b.cols();
    }
    return r;
}

}  // namespace descenso

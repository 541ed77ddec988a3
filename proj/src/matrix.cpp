#include "opnorm/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace opnorm {

Matrix::Matrix(std::size_t rows, std::size_t cols, CVec entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("Matrix: entry count does not match rows*cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const CVec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

CVec Matrix::apply(const CVec& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("Matrix::apply: dimension mismatch");
    CVec out(rows_, cplx(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx acc(0.0);
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CVec Matrix::column(std::size_t j) const {
    if (j >= cols_) throw std::invalid_argument("Matrix::column: index out of range");
    CVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix::operator+=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix::operator-=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("Matrix::operator*: shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(i, k);
            if (a == cplx(0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return std::sqrt(acc);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool Matrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double hermitian_defect(const Matrix& m) {
    if (!m.is_square())
        throw std::invalid_argument("hermitian_defect: matrix must be square");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

CVec vec_add(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

CVec vec_sub(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: size mismatch");
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

CVec vec_scale(cplx s, const CVec& a) {
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

cplx vec_inner(const CVec& u, const CVec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("vec_inner: size mismatch");
    cplx acc(0.0);
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * std::conj(v[i]);
    return acc;
}

double vec_norm2(const CVec& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

double vec_max_abs(const CVec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

bool vec_all_finite(const CVec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace opnorm

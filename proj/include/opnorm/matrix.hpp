#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace opnorm {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense complex matrix, row-major storage. Sized for moderate dimensions
// (up to a few hundred); no blocking, no sparsity.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
    Matrix(std::size_t rows, std::size_t cols, CVec entries);
    Matrix(std::initializer_list<std::initializer_list<cplx>> init);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const CVec& d);
    static Matrix diagonal(const std::vector<double>& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const CVec& data() const noexcept { return data_; }

    Matrix adjoint() const;
    CVec apply(const CVec& v) const;     // matrix-vector product
    CVec column(std::size_t j) const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(cplx s);

    friend Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
    friend Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
    friend Matrix operator*(cplx s, Matrix a) { a *= s; return a; }
    friend Matrix operator*(Matrix a, cplx s) { a *= s; return a; }
    Matrix operator*(const Matrix& rhs) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    CVec data_;
};

// max_{i,j} |A(i,j) - conj(A(j,i))|; zero for an empty matrix.
double hermitian_defect(const Matrix& m);

// Vector helpers. Inner product is linear in the first argument.
CVec vec_add(const CVec& a, const CVec& b);
CVec vec_sub(const CVec& a, const CVec& b);
CVec vec_scale(cplx s, const CVec& a);
cplx vec_inner(const CVec& u, const CVec& v);
double vec_norm2(const CVec& v);
double vec_max_abs(const CVec& v);
bool vec_all_finite(const CVec& v);

}  // namespace opnorm
